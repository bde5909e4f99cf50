#include "edsfrey/descent.hpp"

#include "edsfrey/errors.hpp"

#include <string>

namespace edsfrey {

namespace {

Integer pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

std::string index_label(std::uint64_t m) { return "m = " + std::to_string(m); }

}  // namespace

void validate(const DescentDatum& d) {
    const std::string where = "descent (" + index_label(d.m) + "): ";
    if (d.b < 1) throw HypothesisViolation(where + "b must be positive");
    if (d.a < 1 || d.u < 1 || d.v < 1 || d.w < 1) {
        throw HypothesisViolation(where + "a, u, v, w must be positive");
    }
    if (d.b % d.a != 0) throw HypothesisViolation(where + "a does not divide b");
    if (!is_squarefree(d.a)) throw HypothesisViolation(where + "a is not squarefree");
    const Integer w4l = pow(d.w, 4UL * d.ell);
    if (d.v * d.v - d.a * pow(d.u, 4) != (d.b / d.a) * w4l) {
        throw HypothesisViolation(where + "v^2 - a u^4 != (b/a) w^(4l)");
    }
    if (d.b % gcd(d.u, d.v) != 0) throw HypothesisViolation(where + "gcd(u, v) does not divide b");
}

DescentDatum decompose(const Curve& c, const EDSTerm& t, unsigned ell, const Integer& w,
                       const FactorEffort& effort) {
    if (!c.is_xb_form()) throw InvalidInput("decompose: curve is not of the form y^2 = x(x^2 + b), b > 0");
    if (ell == 0) throw InvalidInput("decompose: exponent must be positive");
    if (w < 1 || pow(w, ell) != t.B) {
        throw InvalidInput("decompose: " + w.get_str() + "^" + std::to_string(ell) + " != B_" +
                           std::to_string(t.m) + " = " + t.B.get_str());
    }
    const Integer& b = c.a4();
    if (t.A == 0 || t.B == 0) {
        throw HypothesisViolation("decompose: A_m B_m = 0 forces P = (0, 0), a torsion point");
    }
    if (t.A < 0) {
        throw HypothesisViolation("decompose: A_" + std::to_string(t.m) +
                                  " < 0; negative x-coordinates are excluded from the Frey construction");
    }

    const Integer w4l = pow(w, 4UL * ell);
    const Integer second = t.A * t.A + b * w4l;
    if (t.C * t.C != t.A * second) {
        throw InternalFault("decompose: C_m^2 != A_m (A_m^2 + b w^(4l)) at " + index_label(t.m));
    }

    SquarefreeSplit split = squarefree_split(t.A, effort);
    DescentDatum d;
    d.m = t.m;
    d.b = b;
    d.a = split.squarefree;
    d.u = split.root;
    d.w = w;
    d.ell = ell;
    d.c_sign = t.C < 0 ? -1 : 1;

    if (second % d.a != 0) throw InternalFault("decompose: a_m does not divide A_m^2 + b w^(4l)");
    auto v = exact_sqrt(second / d.a);
    if (!v) throw InternalFault("decompose: (A_m^2 + b w^(4l)) / a_m is not a square");
    d.v = *v;
    if (abs(t.C) != d.a * d.u * d.v) throw InternalFault("decompose: |C_m| != a u v");
    validate(d);
    return d;
}

DescentDatum decompose(const Curve& c, const EDSTerm& t, const FactorEffort& effort) {
    return decompose(c, t, 1, t.B, effort);
}

FreySolution to_frey(const DescentDatum& d) {
    validate(d);
    return FreySolution{d.a, d.b / d.a, d.u, d.v, d.w, d.ell};
}

}  // namespace edsfrey
