#pragma once

// Assembly of the effective exponent bound for perfect powers B_m = w^l on
// y^2 = x(x^2 + b) with a non-integral generator.
//
//  * T     : rational primes under the bad ideals, i.e. the primes of 2b.
//  * (k,p0): k > v_q(B_1) minimal such that B at index q^(k - v_q(B_1)) has
//            a primitive prime divisor outside T; p0 the least one. Any
//            l-th power term with l > k is then divisible by p0.
//  * threshold = max{k, 2b, C, p0, 5}; above it the level-lowered form
//            forces l | N(p) + 1 -+ a_p at a prime p over p0, so l is at
//            most (sqrt(N(p)) + 1)^2 by Ramanujan-Petersson.
//
// C (irreducibility constant of the candidate fields) is not computable here
// and is supplied by the caller.

#include "edsfrey/arith.hpp"
#include "edsfrey/curve.hpp"
#include "edsfrey/eds.hpp"
#include "edsfrey/quadfield.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace edsfrey {

struct KP0 {
    unsigned k = 0;
    Integer p0;
    std::uint64_t index = 0;     // q^(k - v_q(B_1)), in the sequence's own indexing
    unsigned base_valuation = 0;  // v_q(B_1)
};

/// Throws HypothesisViolation if q does not divide B_1 and BudgetExhausted
/// (with the progress made) when k would exceed search_cap or a term cannot
/// be factored far enough to certify the least primitive prime.
KP0 find_k_p0(const Sequence& s, const Integer& q, const std::set<Integer>& T, unsigned search_cap = 12,
              const FactorEffort& effort = {});

/// max{k, 2b, C, p0, 5}.
Integer threshold(const Integer& k, const Integer& b, const Integer& c_config, const Integer& p0);

/// (sqrt(N) + 1)^2 = N + 1 + 2 sqrt(N) for the residue norm N of a prime over p0.
struct Envelope {
    Integer field;
    Splitting kind = Splitting::Split;
    Integer residue_norm;
    Integer rational_part;    // N + 1, or (sqrt(N) + 1)^2 when N is a square
    Integer sqrt_coefficient;  // 2 (times sqrt(N)), or 0 when N is a square
    Integer ceiling;          // smallest integer >= the envelope

    bool exact() const { return sqrt_coefficient == 0; }
};

/// Requires p0 prime not dividing 2a (InvalidInput otherwise).
Envelope envelope_bound(const Integer& p0, const Integer& a);

struct LevelPrime {
    Integer p;
    Splitting kind = Splitting::Split;
    unsigned ramification = 1;
    unsigned ideals = 1;  // prime ideals of Q(sqrt(a)) above p
    unsigned cap = 2;     // conductor exponent cap per ideal
};

struct LevelSupport {
    Integer field;
    Integer d;
    std::vector<LevelPrime> primes;
    Integer count;  // product over ideals of (cap + 1)
};

/// Conductor exponent caps at the ideals over 2ad: 2 away from 6,
/// 2 + 6e over 2 and 2 + 3e over 3 (e the ramification index).
LevelSupport level_support(const Integer& a, const Integer& d);

/// Eigenvalue table record: level_tag TAB form_index TAB p TAB a_p.
/// A level_tag of the form "a=<A>" or "a=<A>:<rest>" binds the record to
/// Q(sqrt(A)); any other tag applies to every candidate field.
struct EigenRecord {
    std::string level_tag;
    long form_index = 0;
    Integer p;
    Integer a_p;
    std::optional<Integer> field;
};

/// Blank lines and lines starting with '#' are skipped. Throws InvalidInput
/// naming the offending line.
std::vector<EigenRecord> parse_eigen_table(std::istream& in);

struct LedgerReport {
    Integer b;
    std::string generator;
    Integer q;
    Integer B1;
    std::set<Integer> T;
    KP0 kp0;
    Integer c_config;
    Integer threshold;
    std::vector<Integer> candidate_fields;  // squarefree divisors of b
    std::vector<Envelope> envelopes;         // one per candidate field
    std::vector<LevelSupport> level_supports;  // one per candidate field
    std::optional<Integer> eigen_bound;
    Integer exponent_bound;  // max(threshold, eigen_bound or largest envelope ceiling)
    std::vector<std::string> caveats;
};

/// max over applicable records and signs of |N + 1 +- a_p| at p0, or nullopt
/// when some candidate field has no record at p0. Throws InvalidInput for a
/// record violating |a_p| <= 2 sqrt(N).
std::optional<Integer> exact_bound_with_eigenvalues(const LedgerReport& report,
                                                    const std::vector<EigenRecord>& table);

/// Folds an eigenvalue table into the report: sets eigen_bound and
/// exponent_bound, or records the envelope fallback as a caveat.
void apply_eigen_table(LedgerReport& report, const std::vector<EigenRecord>& table);

/// Squarefree positive divisors of b, ascending.
std::vector<Integer> squarefree_divisors(const Integer& b, const FactorEffort& effort = {});

struct LedgerOptions {
    Integer q;
    Integer c_config;
    unsigned search_cap = 12;
    FactorEffort effort;
};

/// Throws InvalidInput for a curve not of the form y^2 = x(x^2 + b) or a
/// non-positive C; HypothesisViolation for a torsion or integral generator
/// or q not dividing B_1; propagates find_k_p0 failures.
LedgerReport build_report(const Curve& c, const RationalPoint& generator, const LedgerOptions& options);

}  // namespace edsfrey
