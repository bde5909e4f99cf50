// One line per acceptance criterion. Exit status is the number of failures.

#include "edsfrey/descent.hpp"
#include "edsfrey/eds.hpp"
#include "edsfrey/errors.hpp"
#include "edsfrey/frey.hpp"
#include "edsfrey/ledger.hpp"
#include "support/fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace edsfrey;
using namespace edsfrey::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

unsigned count_valuation(Integer n, const Integer& p) {
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::set<Integer> prime_set(std::initializer_list<long> ps) {
    std::set<Integer> out;
    for (long p : ps) out.insert(p);
    return out;
}

// 1: coordinates of 2P, 3P, 4P and B_1..B_4.
void worked_example(Outcome& o) {
    const Curve c = worked_curve();
    Sequence s = generate(c, worked_generator(), 4);
    const Integer B[] = {1, 36, 19679, Integer("39139128")};
    for (int m = 1; m <= 4; ++m) o.expect(s.B(m) == B[m - 1], "B_" + std::to_string(m));

    auto point = [](const char* xn, const Integer& Bm, const char* yn) {
        return RationalPoint::affine(Rational(Integer(xn), Bm * Bm), Rational(Integer(yn), Bm * Bm * Bm));
    };
    o.expect(mul(c, 2, worked_generator()) == point("6241", 36, "543599"), "2P");
    o.expect(mul(c, 3, worked_generator()) == point("700217780", 19679, "29468421431730"), "3P");
    o.expect(mul(c, 4, worked_generator()) ==
                 point("933424765104001", Integer("39139128"), "108467911710220197291841"),
             "4P");
    o.expect(s.at(3).A == Integer("700217780") && s.at(4).C == Integer("108467911710220197291841"),
             "terms carry the numerators");
}

// 2: primitive divisors of B_2, B_3, B_4.
void primitive(Outcome& o) {
    Sequence s = generate(worked_curve(), worked_generator(), 4);
    const std::set<Integer> expected[] = {prime_set({2, 3}), prime_set({11, 1789}), prime_set({7, 79, 983})};
    for (std::uint64_t m = 2; m <= 4; ++m) {
        PrimitiveDivisors pd = primitive_divisors(s, m);
        o.expect(pd.complete && pd.unresolved == 1, "factorization of B_" + std::to_string(m) + " complete");
        o.expect(pd.primes == expected[m - 2], "primitive set of B_" + std::to_string(m));
        // Oracle: trial division of B_m, minus primes of earlier terms.
        std::set<Integer> oracle;
        for (const auto& [p, e] : trial_factor(s.B(m).get_ui())) {
            bool earlier = false;
            for (std::uint64_t j = 1; j < m; ++j) earlier = earlier || s.B(j) % p == 0;
            if (!earlier) oracle.insert(Integer(static_cast<unsigned long>(p)));
        }
        o.expect(pd.primes == oracle, "trial division oracle at m = " + std::to_string(m));
    }
}

// 3: strong divisibility up to 24 on three curves.
void strong_divisibility(Outcome& o) {
    std::vector<std::pair<Curve, RationalPoint>> cases{{worked_curve(), worked_generator()}};
    for (long b : {3L, 13L}) {
        // Smallest-height point found by brute force that generates a non-torsion sequence.
        for (const auto& p : small_points(b, 40, 6)) {
            if (is_torsion(make_curve_xb(b), p)) continue;
            cases.emplace_back(make_curve_xb(b), p);
            o.note << "b=" << b << " generator " << p << "; ";
            break;
        }
    }
    o.expect(cases.size() == 3, "found generators for b = 3 and b = 13");
    for (const auto& [c, p] : cases) {
        Sequence s = generate(c, p, 24);
        for (std::uint64_t m = 1; m <= 24; ++m) {
            for (std::uint64_t n = 1; n <= 24; ++n) {
                o.expect(gcd(s.B(m), s.B(n)) == s.B(std::gcd(m, n)), "gcd law");
                o.expect(check_strong_divisibility(s, m, n), "check_strong_divisibility");
            }
        }
    }
}

// 4: v_p(B_nk) = v_p(B_n) + v_p(k).
void valuation_growth(Outcome& o) {
    Sequence s = generate(worked_curve(), worked_generator(), 24);
    unsigned checked = 0;
    for (long p : {2L, 3L, 11L, 1789L}) {
        for (std::uint64_t n = 1; n <= 24; ++n) {
            if (count_valuation(s.B(n), p) == 0) continue;
            for (std::uint64_t k = 1; n * k <= 24; ++k) {
                const bool direct = count_valuation(s.B(n * k), p) ==
                                    count_valuation(s.B(n), p) + count_valuation(Integer(k), p);
                o.expect(direct, "direct valuation at p=" + std::to_string(p));
                o.expect(check_valuation_growth(s, p, n, k), "check_valuation_growth");
                ++checked;
            }
        }
    }
    o.note << checked << " triples; ";
    o.expect(checked > 0, "some triple checked");
}

// 5: closed-form Delta, c4 against the generic invariants.
void frey_oracle(Outcome& o) {
    FreySolutionGenerator gen(0xACCE55);
    const int n = 150;
    for (int i = 0; i < n; ++i) {
        FreyCurve F = construct(gen.next());
        FreyInvariants inv = invariants_oracle(F);
        o.expect(inv.discriminant == F.discriminant(), "Delta");
        o.expect(inv.c4 == F.c4(), "c4");
    }
    o.note << n << " solutions; ";
}

// 6: v_P(Delta) = 2 v_P(v + u^2 sqrt(a)) + v_P(v - u^2 sqrt(a)) for P over p < 200 outside 2ad.
void factor_valuation(Outcome& o) {
    FreySolutionGenerator gen(0xFAC7);
    unsigned primes_checked = 0, nonzero = 0;
    const int n = 60;
    for (int i = 0; i < n; ++i) {
        const FreySolution s = gen.next();
        FreyCurve F = construct(s);
        for (long p = 3; p < 200; p += 2) {
            if (!slow_is_prime(static_cast<std::uint64_t>(p)) || F.bad_primes().count(p) != 0) continue;
            // Norm oracle: sum over P | p of f_P v_P(Delta) = v_p(N(Delta)); for a = 1
            // the norm is x^2, so the single prime counts twice.
            unsigned weighted = 0;
            for (const auto& P : primes_above(s.a, p)) {
                try {
                    ReductionInfo info = classify_reduction(F, P);
                    ExponentCheck ex = exponent_divisibility(F, P);
                    o.expect(info.disc_valuation == ex.valuation, "factor-valuation identity");
                    weighted += info.disc_valuation * (P.kind == Splitting::Inert || s.a == 1 ? 2 : 1);
                    nonzero += info.disc_valuation > 0;
                } catch (const InternalFault& e) {
                    o.expect(false, std::string("additive reduction reported: ") + e.what());
                }
                ++primes_checked;
            }
            o.expect(weighted == count_valuation(norm(F.discriminant()).get_num(), p), "norm oracle");
        }
    }
    o.note << n << " solutions, " << primes_checked << " prime ideals (" << nonzero << " of bad reduction); ";
}

// 7: descent for m = 1..5.
void descent(Outcome& o) {
    const Curve c = worked_curve();
    Sequence s = generate(c, worked_generator(), 5);
    for (std::uint64_t m = 1; m <= 5; ++m) {
        const EDSTerm& t = s.at(m);
        DescentDatum d = decompose(c, t);
        const std::string at = " at m = " + std::to_string(m);
        o.expect(t.A == d.a * d.u * d.u, "A = a u^2" + at);
        o.expect(abs(t.C) == d.a * d.u * d.v, "C = a u v" + at);
        o.expect(d.v * d.v - d.a * ipow(d.u, 4) == (c.a4() / d.a) * ipow(d.w, 4), "v^2 - a u^4" + at);
        o.expect(is_squarefree(d.a) && c.a4() % d.a == 0, "a squarefree, a | b" + at);
        if (m == 2) {
            o.expect(d.a == 1 && d.u == 79 && d.v == 6881, "(a, u, v) = (1, 79, 6881)");
            o.expect(Integer(6881) * 6881 - ipow(79, 4) == 8398080 && 5 * ipow(36, 4) == 8398080, "8398080");
        }
    }
}

// 8: ledger numbers.
void ledger(Outcome& o) {
    Sequence s = generate(worked_curve(), worked_double(), 2);
    KP0 kp = find_k_p0(s, 2, prime_set({2, 5}));
    o.expect(kp.k == 3 && kp.p0 == 7, "(k, p0) = (3, 7)");
    o.expect(threshold(kp.k, 5, 100, kp.p0) == 100, "threshold 100");
    Envelope e = envelope_bound(7, 5);
    o.expect(e.kind == Splitting::Inert && e.exact() && e.ceiling == 64, "envelope 64");
    o.expect(level_support(5, 1).count == 27, "level support 27");

    LedgerOptions opt;
    opt.q = 2;
    opt.c_config = 100;
    LedgerReport r = build_report(worked_curve(), worked_double(), opt);
    o.expect(r.T == prime_set({2, 5}) && r.kp0.p0 == 7 && r.threshold == 100, "build_report");
}

// 9: perfect-power scan.
void scan(Outcome& o) {
    Sequence s = generate(worked_curve(), worked_generator(), 20);
    std::vector<PowerHit> oracle;
    for (const auto& t : s.terms()) {
        if (t.m < 2 || t.B <= 1) continue;
        if (auto bp = brute_perfect_power(t.B)) oracle.push_back(PowerHit{t.m, bp->second, bp->first});
    }
    std::vector<PowerHit> hits;
    for (const auto& h : scan_powers(s)) {
        if (h.m >= 2) hits.push_back(h);
    }
    o.expect(hits == oracle, "scan agrees with the exhaustive root oracle for 2 <= m <= 20");
    // B_2 = 36 (criterion 1) is 6^2; nothing else in range is a power.
    o.expect(oracle.size() == 1 && oracle[0] == PowerHit{2, 2, 6}, "oracle finds exactly B_2 = 6^2");
    o.note << "only hit B_2 = 36 = 6^2; ";

    unsigned planted = 0;
    for (unsigned l : {2u, 3u, 5u, 7u}) {
        for (long w : {2L, 6L, 10L, 12L, 4L, 8L, 30L, 2310L, 12345L}) {
            const Integer n = ipow(w, l);
            std::vector<EDSTerm> terms{{1, 1, 1, 1}, {2, 1, n, 1}};
            auto h = scan_powers(terms);
            auto expected = brute_perfect_power(n);
            o.expect(h.size() == 1 && expected && h[0].exponent == expected->second &&
                         h[0].base == expected->first && h[0].exponent % l == 0,
                     "planted " + std::to_string(w) + "^" + std::to_string(l));
            ++planted;
        }
    }
    o.note << planted << " planted fixtures; ";
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 = no limit
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked example coordinates and B_1..B_4", 1.0, worked_example},
        {2, "primitive divisors of B_2, B_3, B_4", 5.0, primitive},
        {3, "strong divisibility, m, n <= 24, three curves", 60.0, strong_divisibility},
        {4, "valuation growth, p in {2, 3, 11, 1789}, nk <= 24", 0.0, valuation_growth},
        {5, "Frey closed forms vs generic invariants", 0.0, frey_oracle},
        {6, "factor-valuation identity, semistability", 0.0, factor_valuation},
        {7, "descent round trip, m = 1..5", 0.0, descent},
        {8, "ledger (k, p0), threshold, envelope, level support", 10.0, ledger},
        {9, "perfect-power scan and planted fixtures", 0.0, scan},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            o.expect(false, "runtime over " + std::to_string(c.limit_seconds) + " s");
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3f s", secs);
        std::cout << "criterion " << c.id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing
                  << "]  " << o.note.str() << "\n";
        failures += o.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
    return failures;
}
