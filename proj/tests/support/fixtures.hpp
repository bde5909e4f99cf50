#pragma once

// Shared test fixtures and independent oracles. Nothing here calls the code
// paths it is used to check.

#include "edsfrey/arith.hpp"
#include "edsfrey/curve.hpp"
#include "edsfrey/frey.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace edsfrey::testing {

// y^2 = x(x^2 + 5) with generator (20, 90).
inline Curve worked_curve() { return make_curve_xb(5); }
inline RationalPoint worked_generator() { return RationalPoint::affine(20, 90); }
inline RationalPoint worked_double() {
    return RationalPoint::affine(Rational(6241, 1296), Rational(543599, 46656));
}

// Trial division on machine words.
inline std::map<std::uint64_t, unsigned> trial_factor(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

inline bool slow_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Integer l-th root by bisection (independent of GMP's mpz_root).
inline std::optional<Integer> bisect_root(const Integer& n, unsigned l) {
    auto power = [](const Integer& b, unsigned e) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    };
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Integer lo = 0, hi;
    mpz_ui_pow_ui(hi.get_mpz_t(), 2, bits / l + 1);
    while (lo < hi) {
        Integer mid = (lo + hi) / 2;
        if (power(mid, l) < n) lo = mid + 1;
        else hi = mid;
    }
    if (power(lo, l) == n) return lo;
    return std::nullopt;
}

// Largest exponent l >= 2 with n an exact l-th power, by trying every l.
inline std::optional<std::pair<Integer, unsigned>> brute_perfect_power(const Integer& n) {
    std::optional<std::pair<Integer, unsigned>> best;
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned l = 2; l <= bits; ++l) {
        if (auto w = bisect_root(n, l)) best = std::make_pair(*w, l);
    }
    return best;
}

// Affine points with x = n / d^2, 0 < n <= max_num, 1 <= d <= max_den, on
// y^2 = x(x^2 + b), found by testing x(x^2 + b) for a rational square.
inline std::vector<RationalPoint> small_points(long b, long max_num, long max_den) {
    std::vector<RationalPoint> out;
    for (long d = 1; d <= max_den; ++d) {
        for (long n = 1; n <= max_num; ++n) {
            Rational x(n, d * d);
            x.canonicalize();
            if (x.get_den() != d * d) continue;
            Rational rhs = x * (x * x + b);
            auto yn = exact_sqrt(rhs.get_num());
            auto yd = exact_sqrt(rhs.get_den());
            if (yn && yd) out.push_back(RationalPoint::affine(x, Rational(*yn, *yd)));
        }
    }
    return out;
}

inline Integer ipow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// Random valid solutions of v^2 - a u^4 = d w^(4l). Three shapes:
//  - w = 1: pick a, u, v with v^2 > a u^4 and let d absorb the difference;
//  - a = 1 with w planted: v = u^2 + k w^(4l), d = k (2u^2 + k w^(4l));
//  - general a with w = q prime, a a square mod q: v = r u^2 (mod q^(4l)).
class FreySolutionGenerator {
public:
    explicit FreySolutionGenerator(std::uint64_t seed) : rng_(seed) {}

    FreySolution next() {
        switch (pick(0, 2)) {
            case 0: return unit_w();
            case 1: return planted_rational();
            default: return planted_quadratic();
        }
    }

    FreySolution unit_w() {
        const long a = squarefree(1, 30);
        const long u = pick(1, 40) * sign();
        Integer au4 = a * ipow(u, 4);
        Integer floor_root;
        mpz_sqrt(floor_root.get_mpz_t(), au4.get_mpz_t());
        Integer v = floor_root + pick(1, 500);
        if (sign() < 0) v = -v;
        FreySolution s{a, v * v - au4, u, v, 1, static_cast<unsigned>(pick(1, 5))};
        return s;
    }

    FreySolution planted_rational() {
        const unsigned l = static_cast<unsigned>(pick(1, 3));
        const long w = odd_prime_below(30);
        long u;
        do {
            u = pick(1, 50);
        } while (u % w == 0);
        long k;
        do {
            k = pick(1, 20);
        } while (k % w == 0);
        const Integer W = ipow(w, 4UL * l);
        const Integer v = Integer(u) * u + k * W;
        const Integer d = k * (2 * Integer(u) * u + k * W);
        return FreySolution{1, d, u, v, w, l};
    }

    FreySolution planted_quadratic() {
        const unsigned l = static_cast<unsigned>(pick(1, 2));
        for (;;) {
            const long a = squarefree(2, 40);
            const long q = odd_prime_below(40);
            if (a % q == 0 || mpz_legendre(Integer(a).get_mpz_t(), Integer(q).get_mpz_t()) != 1) continue;
            const Integer W = ipow(q, 4UL * l);
            long r0 = 1;
            while ((r0 * r0 - a) % q != 0) ++r0;
            // Lift r0 to a root of a mod W by brute Newton steps.
            Integer r = r0;
            for (int i = 0; i < 8; ++i) {
                Integer inv;
                Integer two_r = 2 * r;
                mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), W.get_mpz_t());
                r = (r - (r * r - a) * inv) % W;
                if (r < 0) r += W;
            }
            long u;
            do {
                u = pick(1, 30);
            } while (u % q == 0);
            const Integer au4 = a * ipow(u, 4);
            Integer v = (r * u * u) % W;
            while (v * v <= au4) v += W;
            v += W * pick(0, 3);
            const Integer diff = v * v - au4;
            if (diff % W != 0) continue;
            FreySolution s{a, diff / W, u, v, q, l};
            if ((s.a * s.d) % gcd(s.u, s.v) != 0) continue;
            return s;
        }
    }

    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

private:
    int sign() { return pick(0, 1) == 0 ? 1 : -1; }

    long squarefree(long lo, long hi) {
        for (;;) {
            long a = pick(lo, hi);
            bool ok = true;
            for (long p = 2; p * p <= a; ++p) {
                if (a % (p * p) == 0) ok = false;
            }
            if (ok) return a;
        }
    }

    long odd_prime_below(long bound) {
        for (;;) {
            long p = pick(3, bound);
            if (slow_is_prime(static_cast<std::uint64_t>(p))) return p;
        }
    }

    std::mt19937_64 rng_;
};

}  // namespace edsfrey::testing
