#pragma once

// Elliptic divisibility sequences: mP = (A_m / B_m^2, C_m / B_m^3) in lowest
// terms, B_m > 0. Generation, the divisibility laws, primitive divisors and
// perfect-power scanning.

#include "edsfrey/arith.hpp"
#include "edsfrey/curve.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace edsfrey {

struct EDSTerm {
    std::uint64_t m = 0;
    Integer A;
    Integer B;  // always positive
    Integer C;

    friend bool operator==(const EDSTerm&, const EDSTerm&) = default;
};

class Sequence {
public:
    Sequence(Curve curve, RationalPoint generator);

    const Curve& curve() const { return curve_; }
    const RationalPoint& generator() const { return generator_; }
    const std::vector<EDSTerm>& terms() const { return terms_; }
    std::uint64_t size() const { return terms_.size(); }

    /// Term with index m (1-based). Throws InvalidInput when out of range.
    const EDSTerm& at(std::uint64_t m) const;
    const Integer& B(std::uint64_t m) const { return at(m).B; }

    /// Appends terms until size() >= max_m, one addition per term.
    void extend_to(std::uint64_t max_m);

private:
    Curve curve_;
    RationalPoint generator_;
    RationalPoint last_;
    std::vector<EDSTerm> terms_;
};

/// Normalized (A, B, C) of an affine point. Throws InternalFault if the
/// denominators are not a square and the matching cube.
EDSTerm term_from_point(std::uint64_t m, const RationalPoint& point);

/// The m-th term computed independently via mul. Throws HypothesisViolation
/// for a torsion generator.
EDSTerm term(const Curve& c, const RationalPoint& p, std::uint64_t m);

/// Terms 1..max_m, incrementally.
Sequence generate(const Curve& c, const RationalPoint& p, std::uint64_t max_m);

/// gcd(B_m, B_n) == B_gcd(m, n).
bool check_strong_divisibility(const Sequence& s, std::uint64_t m, std::uint64_t n);

/// v_p(B_{nk}) == v_p(B_n) + v_p(k). Requires v_p(B_n) > 0 (InvalidInput
/// otherwise) and, for p = 2, an even a1 (InvalidInput otherwise: the law is
/// not established for odd a1 and the check refuses to guess).
bool check_valuation_growth(const Sequence& s, const Integer& p, std::uint64_t n, std::uint64_t k);

struct PrimitiveDivisors {
    std::set<Integer> primes;
    // False when the factorization of B_m was incomplete within budget.
    bool complete = true;
    // Product of unfactored composites of B_m that share nothing with any
    // earlier term. Greater than 1 certifies a primitive prime not listed.
    Integer unresolved = 1;
};

/// Primes dividing B_m and no B_j, j < m.
PrimitiveDivisors primitive_divisors(const Sequence& s, std::uint64_t m, const FactorEffort& effort = {});

struct PowerHit {
    std::uint64_t m;
    unsigned exponent;
    Integer base;

    friend bool operator==(const PowerHit&, const PowerHit&) = default;
};

/// Indices with B_m > 1 a perfect power, with maximal exponent.
std::vector<PowerHit> scan_powers(const Sequence& s);
std::vector<PowerHit> scan_powers(const std::vector<EDSTerm>& terms);

}  // namespace edsfrey
