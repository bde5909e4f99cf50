#include "edsfrey/curve.hpp"

#include "edsfrey/errors.hpp"

#include <sstream>
#include <utility>

namespace edsfrey {

RationalPoint RationalPoint::affine(Rational x, Rational y) {
    RationalPoint p;
    p.infinity_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    p.x_.canonicalize();
    p.y_.canonicalize();
    return p;
}

std::ostream& operator<<(std::ostream& os, const RationalPoint& p) {
    if (p.is_infinity()) return os << "O";
    return os << '(' << p.x() << ", " << p.y() << ')';
}

Curve::Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
    auto inv = weierstrass_invariants<Integer>(a1_, a2_, a3_, a4_, a6_);
    if (inv.discriminant == 0) throw InvalidInput("curve: singular Weierstrass model (discriminant 0)");
    discriminant_ = inv.discriminant;
    c4_ = inv.c4;
}

bool Curve::is_xb_form() const {
    return a1_ == 0 && a2_ == 0 && a3_ == 0 && a6_ == 0 && a4_ > 0;
}

bool Curve::contains(const RationalPoint& p) const {
    if (p.is_infinity()) return true;
    const Rational& x = p.x();
    const Rational& y = p.y();
    Rational lhs = y * y + Rational(a1_) * x * y + Rational(a3_) * y;
    Rational rhs = x * x * x + Rational(a2_) * x * x + Rational(a4_) * x + Rational(a6_);
    return lhs == rhs;
}

RationalPoint Curve::negate(const RationalPoint& p) const {
    if (p.is_infinity()) return p;
    return RationalPoint::affine(p.x(), -p.y() - Rational(a1_) * p.x() - Rational(a3_));
}

Curve make_curve_xb(const Integer& b) {
    if (b <= 0) throw InvalidInput("make_curve_xb: b must be a positive integer, got " + b.get_str());
    return Curve(0, 0, 0, b, 0);
}

void require_on_curve(const Curve& c, const RationalPoint& p) {
    if (!c.contains(p)) {
        std::ostringstream os;
        os << "point " << p << " does not lie on the curve";
        throw InvalidInput(os.str());
    }
}

RationalPoint add(const Curve& c, const RationalPoint& p, const RationalPoint& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;

    const Rational a1(c.a1()), a2(c.a2()), a3(c.a3()), a4(c.a4()), a6(c.a6());
    const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();

    Rational slope, intercept;
    if (x1 == x2) {
        if (y1 + y2 + a1 * x2 + a3 == 0) return RationalPoint::infinity();
        const Rational denom = 2 * y1 + a1 * x1 + a3;
        slope = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom;
        intercept = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / denom;
    } else {
        const Rational dx = x2 - x1;
        slope = (y2 - y1) / dx;
        intercept = (y1 * x2 - y2 * x1) / dx;
    }
    Rational x3 = slope * slope + a1 * slope - a2 - x1 - x2;
    Rational y3 = -(slope + a1) * x3 - intercept - a3;
    return RationalPoint::affine(std::move(x3), std::move(y3));
}

RationalPoint mul(const Curve& c, std::int64_t n, const RationalPoint& p) {
    RationalPoint base = n < 0 ? c.negate(p) : p;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    RationalPoint acc = RationalPoint::infinity();
    while (k != 0) {
        if (k & 1U) acc = add(c, acc, base);
        k >>= 1U;
        if (k != 0) base = add(c, base, base);
    }
    return acc;
}

bool is_torsion(const Curve& c, const RationalPoint& p) {
    RationalPoint acc = p;
    for (int n = 1; n <= 12; ++n) {
        if (acc.is_infinity()) return true;
        acc = add(c, acc, p);
    }
    return false;
}

}  // namespace edsfrey
