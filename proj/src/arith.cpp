#include "edsfrey/arith.hpp"

#include "edsfrey/errors.hpp"

#include <algorithm>
#include <random>

namespace edsfrey {

namespace {

constexpr std::uint64_t kDefaultSieveBound = 1'000'000;

const std::vector<std::uint64_t>& default_primes() {
    static const std::vector<std::uint64_t> primes = primes_below(kDefaultSieveBound);
    return primes;
}

bool miller_rabin_round(const Integer& n, const Integer& n_minus_1, const Integer& d,
                        unsigned s, const Integer& base) {
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

// One Pollard rho run with Brent's cycle detection and batched gcds.
std::optional<Integer> brent_rho(const Integer& n, unsigned long c, std::uint64_t max_steps) {
    constexpr std::uint64_t batch = 128;
    Integer y = 2, x, ys, q = 1, g = 1, diff;
    std::uint64_t r = 1, steps = 0;
    auto step = [&](Integer& v) {
        v = v * v + c;
        v %= n;
        ++steps;
    };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t run = std::min(batch, r - k);
            for (std::uint64_t i = 0; i < run; ++i) {
                step(y);
                diff = x - y;
                q = q * abs(diff) % n;
            }
            g = gcd(q, n);
            k += run;
        }
        r *= 2;
        if (g == 1 && steps > max_steps) return std::nullopt;
    }
    if (g == n) {
        // The batch overshot; replay it one step at a time.
        do {
            step(ys);
            diff = x - ys;
            g = gcd(abs(diff), n);
        } while (g == 1);
    }
    if (g == n || g == 0) return std::nullopt;
    return g;
}

void add_prime(Factorization& f, const Integer& p, unsigned e) { f.factors[p] += e; }

// Splits a composite (no prime factor below the trial bound) into primes,
// leaving unsplittable composites in the cofactor.
void split_composite(Factorization& f, const Integer& n, unsigned multiplicity,
                     const FactorEffort& effort) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        add_prime(f, n, multiplicity);
        return;
    }
    if (auto pp = perfect_power(n)) {
        split_composite(f, pp->base, multiplicity * pp->exponent, effort);
        return;
    }
    for (unsigned attempt = 0; attempt < effort.rho_attempts; ++attempt) {
        auto d = brent_rho(n, 1 + attempt, effort.rho_iterations);
        if (!d) continue;
        split_composite(f, *d, multiplicity, effort);
        split_composite(f, n / *d, multiplicity, effort);
        return;
    }
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), n.get_mpz_t(), multiplicity);
    f.unfactored_cofactor *= power;
}

}  // namespace

Integer Factorization::reassemble() const {
    Integer out = unfactored_cofactor;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        out *= pe;
    }
    return out;
}

std::vector<Integer> Factorization::primes() const {
    std::vector<Integer> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound <= 2) return out;
    std::vector<bool> composite(bound, false);
    for (std::uint64_t i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

bool is_probable_prime(const Integer& n) {
    static constexpr unsigned long kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    static const Integer kDeterministicLimit("3317044064679887385961981");

    if (n < 2) return false;
    for (unsigned long p : kBases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer n_minus_1 = n - 1;
    Integer d = n_minus_1;
    unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
    d >>= s;

    for (unsigned long b : kBases) {
        if (!miller_rabin_round(n, n_minus_1, d, s, Integer(b))) return false;
    }
    if (n < kDeterministicLimit) return true;

    std::mt19937_64 rng(0x5eed5eedULL);
    for (int i = 0; i < 24; ++i) {
        Integer base = Integer(std::to_string(rng())) % (n - 3) + 2;
        if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
    }
    return true;
}

Factorization factorize(const Integer& n, const FactorEffort& effort) {
    if (n == 0) throw InvalidInput("factorize: zero has no factorization");
    Factorization f;
    Integer m = abs(n);

    const auto& cached = default_primes();
    std::vector<std::uint64_t> larger;
    const std::vector<std::uint64_t>* primes = &cached;
    if (effort.trial_bound > kDefaultSieveBound) {
        larger = primes_below(effort.trial_bound);
        primes = &larger;
    }
    for (std::uint64_t p : *primes) {
        if (p >= effort.trial_bound) break;
        if (Integer(p) * p > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Integer pz(static_cast<unsigned long>(p));
            unsigned e = static_cast<unsigned>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
            add_prime(f, pz, e);
        }
    }
    if (m == 1) return f;
    Integer bound = Integer(static_cast<unsigned long>(effort.trial_bound));
    if (m < bound * bound) {
        // No prime below the bound divides m, so m itself is prime.
        add_prime(f, m, 1);
        return f;
    }
    split_composite(f, m, 1, effort);
    return f;
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw InvalidInput("valuation: v_p(0) is infinite");
    if (p < 2) throw InvalidInput("valuation: modulus must be a prime");
    Integer m = n;
    return static_cast<unsigned>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

std::optional<Integer> exact_root(const Integer& n, unsigned exponent) {
    if (n < 1) throw InvalidInput("exact_root: n must be positive");
    if (exponent < 2) throw InvalidInput("exact_root: exponent must be at least 2");
    Integer w;
    if (mpz_root(w.get_mpz_t(), n.get_mpz_t(), exponent) != 0) return w;
    return std::nullopt;
}

std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<PerfectPower> perfect_power(const Integer& n) {
    if (n <= 1) throw InvalidInput("perfect_power: n must exceed 1");
    if (!mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
    // Largest candidate exponent is floor(log2 n); scan downward.
    auto max_exponent = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2) - 1);
    for (unsigned e = max_exponent; e >= 2; --e) {
        if (auto w = exact_root(n, e)) return PerfectPower{*w, e};
    }
    throw InternalFault("perfect_power: GMP reported a perfect power but no root was found");
}

SquarefreeSplit squarefree_split(const Integer& n, const FactorEffort& effort) {
    if (n < 1) throw InvalidInput("squarefree_split: n must be positive");
    Factorization f = factorize(n, effort);
    if (!f.complete()) {
        throw BudgetExhausted("squarefree_split: could not factor " + n.get_str() +
                              " within budget (cofactor " + f.unfactored_cofactor.get_str() + ")");
    }
    SquarefreeSplit out{1, 1};
    for (const auto& [p, e] : f.factors) {
        if (e % 2 == 1) out.squarefree *= p;
        Integer half;
        mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
        out.root *= half;
    }
    return out;
}

bool is_squarefree(const Integer& n, const FactorEffort& effort) {
    if (n == 0) return false;
    Factorization f = factorize(n, effort);
    if (!f.complete()) {
        // A composite cofactor with no small factor could still hide a square.
        if (mpz_perfect_square_p(f.unfactored_cofactor.get_mpz_t()))
            return false;
        throw BudgetExhausted("is_squarefree: could not factor " + n.get_str() + " within budget");
    }
    return std::all_of(f.factors.begin(), f.factors.end(), [](const auto& kv) { return kv.second == 1; });
}

}  // namespace edsfrey
