#pragma once

// Arbitrary-precision integer utilities on top of GMP: primality,
// factorization with an explicit effort budget, valuations, perfect powers
// and squarefree decomposition.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace edsfrey {

using Integer = mpz_class;
using Rational = mpq_class;

/// Effort budget for factorization. Trial division runs over all primes
/// below `trial_bound`; each composite left over gets up to `rho_attempts`
/// Pollard-Brent runs of at most `rho_iterations` steps each.
struct FactorEffort {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 4'000'000;
    unsigned rho_attempts = 4;
};

struct Factorization {
    std::map<Integer, unsigned> factors;
    // Product of the composites the budget could not split; 1 when complete.
    Integer unfactored_cofactor = 1;

    bool complete() const { return unfactored_cofactor == 1; }
    Integer reassemble() const;
    std::vector<Integer> primes() const;
};

/// Miller-Rabin. Deterministic (first 13 prime bases) for n < 3.3e24,
/// otherwise those bases plus 24 more from a fixed-seed generator.
bool is_probable_prime(const Integer& n);

/// Factorization of |n|. Throws InvalidInput for n = 0.
Factorization factorize(const Integer& n, const FactorEffort& effort = {});

/// Largest e with p^e | n. Throws InvalidInput for n = 0 or p < 2.
unsigned valuation(const Integer& n, const Integer& p);

/// w with w^exponent == n, if one exists. n >= 1, exponent >= 2.
std::optional<Integer> exact_root(const Integer& n, unsigned exponent);

struct PerfectPower {
    Integer base;
    unsigned exponent;

    friend bool operator==(const PerfectPower&, const PerfectPower&) = default;
};

/// (w, l) with n = w^l and l >= 2 maximal, or nullopt. Throws for n <= 1.
std::optional<PerfectPower> perfect_power(const Integer& n);

struct SquarefreeSplit {
    Integer squarefree;  // a
    Integer root;        // u, with n = a * u^2
};

/// n = a * u^2 with a squarefree. Throws BudgetExhausted when n cannot be
/// fully factored within `effort`.
SquarefreeSplit squarefree_split(const Integer& n, const FactorEffort& effort = {});

bool is_squarefree(const Integer& n, const FactorEffort& effort = {});

/// Primes below `bound`, ascending.
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

/// Integer square root of a perfect square; nullopt otherwise (n >= 0).
std::optional<Integer> exact_sqrt(const Integer& n);

}  // namespace edsfrey
