#pragma once

#include "edsfrey/arith.hpp"

#include <cstdint>
#include <ostream>

namespace edsfrey {

/// Discriminant and c4 of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 via
/// the b2, b4, b6, b8 quantities. Generic over any commutative ring type
/// with +, -, *, unary minus and left multiplication by int, so it serves both
/// the rational curves here and the Frey curves over quadratic fields.
template <typename Ring>
struct WeierstrassInvariants {
    Ring discriminant;
    Ring c4;
};

template <typename Ring>
WeierstrassInvariants<Ring> weierstrass_invariants(const Ring& a1, const Ring& a2, const Ring& a3,
                                                   const Ring& a4, const Ring& a6) {
    const Ring b2 = a1 * a1 + 4 * a2;
    const Ring b4 = 2 * a4 + a1 * a3;
    const Ring b6 = a3 * a3 + 4 * a6;
    const Ring b8 = a1 * a1 * a6 + 4 * (a2 * a6) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    const Ring b2b2 = b2 * b2;
    const Ring disc = -(b2b2 * b8) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * (b2 * b4 * b6);
    const Ring c4 = b2b2 - 24 * b4;
    return {disc, c4};
}

/// A point of E(Q): the point at infinity or an affine point in lowest terms.
class RationalPoint {
public:
    static RationalPoint infinity() { return RationalPoint(); }
    static RationalPoint affine(Rational x, Rational y);

    bool is_infinity() const { return infinity_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }

    friend bool operator==(const RationalPoint& p, const RationalPoint& q) {
        if (p.infinity_ || q.infinity_) return p.infinity_ == q.infinity_;
        return p.x_ == q.x_ && p.y_ == q.y_;
    }
    friend std::ostream& operator<<(std::ostream& os, const RationalPoint& p);

private:
    RationalPoint() = default;
    bool infinity_ = true;
    Rational x_;
    Rational y_;
};

/// Integral Weierstrass model over Q with its discriminant and c4.
class Curve {
public:
    /// Throws InvalidInput if the model is singular.
    Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);

    const Integer& a1() const { return a1_; }
    const Integer& a2() const { return a2_; }
    const Integer& a3() const { return a3_; }
    const Integer& a4() const { return a4_; }
    const Integer& a6() const { return a6_; }
    const Integer& discriminant() const { return discriminant_; }
    const Integer& c4() const { return c4_; }

    /// True for models y^2 = x(x^2 + b), b > 0.
    bool is_xb_form() const;

    bool contains(const RationalPoint& p) const;
    RationalPoint negate(const RationalPoint& p) const;

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    Integer a1_, a2_, a3_, a4_, a6_;
    Integer discriminant_;
    Integer c4_;
};

/// y^2 = x(x^2 + b). Throws InvalidInput for b <= 0.
Curve make_curve_xb(const Integer& b);

/// Chord-tangent addition. Both points must lie on `c`.
RationalPoint add(const Curve& c, const RationalPoint& p, const RationalPoint& q);

/// n-fold multiple by double-and-add. Negative n multiplies the inverse.
RationalPoint mul(const Curve& c, std::int64_t n, const RationalPoint& p);

/// nP = O for some 1 <= n <= 12 (Mazur's bound on torsion orders over Q).
bool is_torsion(const Curve& c, const RationalPoint& p);

/// Throws InvalidInput if p is not on c.
void require_on_curve(const Curve& c, const RationalPoint& p);

}  // namespace edsfrey
