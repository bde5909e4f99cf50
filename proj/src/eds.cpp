#include "edsfrey/eds.hpp"

#include "edsfrey/errors.hpp"

#include <numeric>
#include <sstream>
#include <string>

namespace edsfrey {

namespace {

void require_generator(const Curve& c, const RationalPoint& p) {
    require_on_curve(c, p);
    if (is_torsion(c, p)) {
        std::ostringstream os;
        os << "generator " << p << " is a torsion point";
        throw HypothesisViolation(os.str());
    }
}

// Strips from r every prime it shares with d.
Integer strip_common(Integer r, const Integer& d) {
    Integer g = gcd(r, d);
    while (g > 1) {
        r /= g;
        g = gcd(r, d);
    }
    return r;
}

}  // namespace

EDSTerm term_from_point(std::uint64_t m, const RationalPoint& point) {
    if (point.is_infinity()) throw InternalFault("term_from_point: point at infinity has no term");
    auto B = exact_sqrt(point.x().get_den());
    if (!B) {
        throw InternalFault("term_from_point: x-denominator " + point.x().get_den().get_str() +
                            " of multiple " + std::to_string(m) + " is not a square");
    }
    Integer cube = *B * *B * *B;
    if (point.y().get_den() != cube) {
        throw InternalFault("term_from_point: y-denominator of multiple " + std::to_string(m) +
                            " is not B^3");
    }
    return EDSTerm{m, point.x().get_num(), *B, point.y().get_num()};
}

Sequence::Sequence(Curve curve, RationalPoint generator)
    : curve_(std::move(curve)), generator_(std::move(generator)), last_(RationalPoint::infinity()) {
    require_generator(curve_, generator_);
}

const EDSTerm& Sequence::at(std::uint64_t m) const {
    if (m == 0 || m > terms_.size()) {
        throw InvalidInput("sequence index " + std::to_string(m) + " outside 1.." + std::to_string(terms_.size()));
    }
    return terms_[m - 1];
}

void Sequence::extend_to(std::uint64_t max_m) {
    while (terms_.size() < max_m) {
        last_ = add(curve_, last_, generator_);
        terms_.push_back(term_from_point(terms_.size() + 1, last_));
    }
}

EDSTerm term(const Curve& c, const RationalPoint& p, std::uint64_t m) {
    if (m == 0) throw InvalidInput("term: index must be positive");
    require_generator(c, p);
    return term_from_point(m, mul(c, static_cast<std::int64_t>(m), p));
}

Sequence generate(const Curve& c, const RationalPoint& p, std::uint64_t max_m) {
    if (max_m == 0) throw InvalidInput("generate: need at least one term");
    Sequence s(c, p);
    s.extend_to(max_m);
    return s;
}

bool check_strong_divisibility(const Sequence& s, std::uint64_t m, std::uint64_t n) {
    return gcd(s.B(m), s.B(n)) == s.B(std::gcd(m, n));
}

bool check_valuation_growth(const Sequence& s, const Integer& p, std::uint64_t n, std::uint64_t k) {
    if (k == 0) throw InvalidInput("check_valuation_growth: multiplier must be positive");
    if (p == 2 && mpz_odd_p(s.curve().a1().get_mpz_t())) {
        throw InvalidInput("check_valuation_growth: p = 2 needs an even a1");
    }
    const unsigned base = valuation(s.B(n), p);
    if (base == 0) {
        throw InvalidInput("check_valuation_growth: v_" + p.get_str() + "(B_" + std::to_string(n) + ") = 0");
    }
    return valuation(s.B(n * k), p) == base + valuation(Integer(std::to_string(k)), p);
}

PrimitiveDivisors primitive_divisors(const Sequence& s, std::uint64_t m, const FactorEffort& effort) {
    const Integer& Bm = s.B(m);
    PrimitiveDivisors out;
    if (Bm == 1) return out;
    Factorization f = factorize(Bm, effort);
    for (const auto& [p, e] : f.factors) {
        bool seen = false;
        for (std::uint64_t j = 1; j < m && !seen; ++j) seen = mpz_divisible_p(s.B(j).get_mpz_t(), p.get_mpz_t()) != 0;
        if (!seen) out.primes.insert(p);
    }
    out.complete = f.complete();
    if (!out.complete) {
        Integer rest = f.unfactored_cofactor;
        for (std::uint64_t j = 1; j < m && rest > 1; ++j) rest = strip_common(rest, s.B(j));
        out.unresolved = rest;
    }
    return out;
}

std::vector<PowerHit> scan_powers(const std::vector<EDSTerm>& terms) {
    std::vector<PowerHit> hits;
    for (const auto& t : terms) {
        if (t.B <= 1) continue;
        if (auto pp = perfect_power(t.B)) hits.push_back(PowerHit{t.m, pp->exponent, pp->base});
    }
    return hits;
}

std::vector<PowerHit> scan_powers(const Sequence& s) { return scan_powers(s.terms()); }

}  // namespace edsfrey
