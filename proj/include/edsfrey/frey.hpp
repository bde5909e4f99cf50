#pragma once

// Frey curve attached to a solution of v^2 - a u^4 = d w^(4l):
//
//   F : Y^2 = X (X^2 + 4u sqrt(a) X + 2 sqrt(a)(v + u^2 sqrt(a)))
//
// over K = Q(sqrt(a)), with closed forms
//
//   Delta_F = -2^9 a sqrt(a) (v + u^2 sqrt(a))^2 (v - u^2 sqrt(a))
//   c4      = -32 sqrt(a) (3v - 5u^2 sqrt(a))
//
// Away from the primes dividing 2ad the model is minimal and semistable, and
// l divides v_P(Delta_F).

#include "edsfrey/arith.hpp"
#include "edsfrey/quadfield.hpp"

#include <optional>
#include <set>

namespace edsfrey {

struct FreySolution {
    Integer a;  // squarefree, positive
    Integer d;  // positive
    Integer u, v, w;
    unsigned ell = 1;
};

/// Checks every hypothesis on a FreySolution; throws HypothesisViolation
/// naming the first that fails.
void validate(const FreySolution& s);

class FreyCurve {
public:
    const FreySolution& solution() const { return solution_; }
    const Integer& field() const { return solution_.a; }

    // Weierstrass coefficients; a1 = a3 = a6 = 0.
    const QuadElement& a2() const { return a2_; }
    const QuadElement& a4() const { return a4_; }

    /// v + u^2 sqrt(a) and its conjugate.
    const QuadElement& plus_factor() const { return plus_; }
    const QuadElement& minus_factor() const { return minus_; }

    const QuadElement& discriminant() const { return delta_; }
    const QuadElement& c4() const { return c4_; }
    const std::set<Integer>& bad_primes() const { return bad_; }

    friend FreyCurve construct(const FreySolution& s);

private:
    explicit FreyCurve(FreySolution s);

    FreySolution solution_;
    QuadElement a2_, a4_, plus_, minus_, delta_, c4_;
    std::set<Integer> bad_;
};

/// Builds the Frey curve; throws HypothesisViolation on a bad solution.
FreyCurve construct(const FreySolution& s);

struct FreyInvariants {
    QuadElement discriminant;
    QuadElement c4;
};

/// Delta and c4 recomputed from the Weierstrass coefficients by the generic
/// formulas, independent of the closed forms.
FreyInvariants invariants_oracle(const FreyCurve& F);

/// Rational primes dividing 2ad.
std::set<Integer> bad_set(const Integer& a, const Integer& d);

enum class Reduction { Good, Multiplicative };

struct ReductionInfo {
    Reduction type;
    unsigned disc_valuation;
    std::optional<unsigned> c4_valuation;  // nullopt when c4 = 0
    bool minimal;  // v(Delta) < 12 or v(c4) < 4
};

/// Reduction type at a prime over p not dividing 2ad. Throws
/// HypothesisViolation for primes in the bad set and InternalFault if
/// additive reduction ever shows up.
ReductionInfo classify_reduction(const FreyCurve& F, const QuadPrime& P);

struct ExponentCheck {
    unsigned valuation;
    bool divisible;  // ell | valuation
};

/// v_P(Delta_F) as 2 v_P(v + u^2 sqrt(a)) + v_P(v - u^2 sqrt(a)).
ExponentCheck exponent_divisibility(const FreyCurve& F, const QuadPrime& P);

}  // namespace edsfrey
