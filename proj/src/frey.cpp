#include "edsfrey/frey.hpp"

#include "edsfrey/curve.hpp"
#include "edsfrey/errors.hpp"

#include <sstream>

namespace edsfrey {

namespace {

Integer pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

void require_outside_bad_set(const FreyCurve& F, const QuadPrime& P) {
    if (P.field != F.field()) {
        throw InvalidInput("frey: prime lives in Q(sqrt(" + P.field.get_str() + ")), curve in Q(sqrt(" +
                           F.field().get_str() + "))");
    }
    if (F.bad_primes().count(P.p) != 0) {
        throw HypothesisViolation("frey: " + P.p.get_str() + " divides 2ad; reduction there is not analysed");
    }
}

}  // namespace

void validate(const FreySolution& s) {
    if (s.a < 1) throw HypothesisViolation("frey: a must be positive");
    if (!is_squarefree(s.a)) throw HypothesisViolation("frey: a = " + s.a.get_str() + " is not squarefree");
    if (s.d == 0 || s.w == 0) throw HypothesisViolation("frey: d and w must be non-zero (d w^(4l) = 0)");
    if (s.d < 0) throw HypothesisViolation("frey: d must be positive");
    if (s.u == 0 || s.v == 0) throw HypothesisViolation("frey: u and v must be non-zero");
    if (s.ell == 0) throw HypothesisViolation("frey: exponent l must be positive");

    const Integer lhs = s.v * s.v - s.a * pow(s.u, 4);
    const Integer rhs = s.d * pow(s.w, 4UL * s.ell);
    if (lhs != rhs) {
        throw HypothesisViolation("frey: v^2 - a u^4 = " + lhs.get_str() + " but d w^(4l) = " + rhs.get_str());
    }
    const Integer g = gcd(s.u, s.v);
    if ((s.a * s.d) % g != 0) {
        throw HypothesisViolation("frey: gcd(u, v) = " + g.get_str() + " does not divide a d");
    }
}

std::set<Integer> bad_set(const Integer& a, const Integer& d) {
    if (a < 1 || d < 1) throw InvalidInput("bad_set: a and d must be positive");
    Factorization f = factorize(2 * a * d);
    if (!f.complete()) throw BudgetExhausted("bad_set: could not factor 2ad");
    auto primes = f.primes();
    return {primes.begin(), primes.end()};
}

FreyCurve::FreyCurve(FreySolution s)
    : solution_(std::move(s)),
      a2_(solution_.a, 0),
      a4_(solution_.a, 0),
      plus_(solution_.a, 0),
      minus_(solution_.a, 0),
      delta_(solution_.a, 0),
      c4_(solution_.a, 0) {
    const Integer& a = solution_.a;
    const QuadElement root = QuadElement::sqrt_a(a);
    const QuadElement u(a, solution_.u);
    const QuadElement v(a, solution_.v);
    const QuadElement u2_root = u * u * root;

    a2_ = 4 * (u * root);
    plus_ = v + u2_root;
    minus_ = v - u2_root;
    a4_ = 2 * (root * plus_);
    delta_ = -512 * (QuadElement(a, a) * root * plus_ * plus_ * minus_);
    c4_ = -32 * (root * (3 * v - 5 * u2_root));
    bad_ = bad_set(a, solution_.d);
}

FreyCurve construct(const FreySolution& s) {
    validate(s);
    FreyCurve F(s);
    if (F.delta_.is_zero()) throw HypothesisViolation("frey: discriminant vanishes");
    return F;
}

FreyInvariants invariants_oracle(const FreyCurve& F) {
    const QuadElement zero(F.field(), 0);
    auto inv = weierstrass_invariants<QuadElement>(zero, F.a2(), zero, F.a4(), zero);
    return {inv.discriminant, inv.c4};
}

ReductionInfo classify_reduction(const FreyCurve& F, const QuadPrime& P) {
    require_outside_bad_set(F, P);
    ReductionInfo info{Reduction::Good, prime_valuation(F.discriminant(), P), std::nullopt, true};
    if (!F.c4().is_zero()) info.c4_valuation = prime_valuation(F.c4(), P);
    info.minimal = info.disc_valuation < 12 || (info.c4_valuation && *info.c4_valuation < 4);

    if (info.disc_valuation == 0) return info;
    if (info.c4_valuation && *info.c4_valuation == 0) {
        info.type = Reduction::Multiplicative;
        return info;
    }
    std::ostringstream os;
    os << "frey: additive reduction at a prime over " << P.p << " outside the bad set (v(Delta) = "
       << info.disc_valuation << ")";
    throw InternalFault(os.str());
}

ExponentCheck exponent_divisibility(const FreyCurve& F, const QuadPrime& P) {
    require_outside_bad_set(F, P);
    const unsigned v = 2 * prime_valuation(F.plus_factor(), P) + prime_valuation(F.minus_factor(), P);
    return {v, v % F.solution().ell == 0};
}

}  // namespace edsfrey
