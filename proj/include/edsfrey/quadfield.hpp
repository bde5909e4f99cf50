#pragma once

// Arithmetic in K = Q(sqrt(a)), a >= 1 squarefree. Elements are x + y sqrt(a)
// with rational x, y (Z[sqrt(a)] coordinates even when a = 1 mod 4); a = 1
// is the rational field and folds y into x. Prime-ideal valuations are only
// offered at primes not dividing 2a, where Z[sqrt(a)] and the maximal order
// agree locally.

#include "edsfrey/arith.hpp"

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace edsfrey {

class QuadElement {
public:
    /// x + y sqrt(a). Throws InvalidInput unless a >= 1 (squarefreeness is
    /// the caller's contract; see make_field_label).
    QuadElement(Integer a, Rational x, Rational y = 0);

    static QuadElement sqrt_a(const Integer& a) { return QuadElement(a, 0, 1); }

    const Integer& field() const { return a_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_integral() const { return x_.get_den() == 1 && y_.get_den() == 1; }

    QuadElement conjugate() const { return QuadElement(a_, x_, -y_); }

    friend QuadElement operator+(const QuadElement& l, const QuadElement& r);
    friend QuadElement operator-(const QuadElement& l, const QuadElement& r);
    friend QuadElement operator*(const QuadElement& l, const QuadElement& r);
    friend QuadElement operator*(long k, const QuadElement& z);
    friend QuadElement operator-(const QuadElement& z);
    friend bool operator==(const QuadElement& l, const QuadElement& r) {
        return l.a_ == r.a_ && l.x_ == r.x_ && l.y_ == r.y_;
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadElement& z);

private:
    Integer a_;
    Rational x_;
    Rational y_;
};

/// Validates a >= 1 and squarefree; returns it. Throws InvalidInput.
Integer make_field_label(const Integer& a);

/// x^2 - a y^2.
Rational norm(const QuadElement& z);

enum class Splitting { Split, Inert, Ramified };

std::string_view to_string(Splitting s);

struct QuadPrime {
    Integer field;  // a
    Integer p;
    Splitting kind = Splitting::Split;
    // sqrt(a) mod p^precision; present only for split odd p (and a = 1).
    std::optional<Integer> root;
    unsigned precision = 0;
    Integer residue_norm;

    unsigned ramification_index() const { return kind == Splitting::Ramified ? 2 : 1; }
};

/// Decomposition type of p in Q(sqrt(a)). a = 1 reports Split by convention.
Splitting splitting_type(const Integer& a, const Integer& p);

/// The prime ideals over p: one entry (inert, ramified, a = 1) or two
/// conjugates (split) carrying roots r and p^precision - r, the smaller
/// residue first. precision >= 1.
std::vector<QuadPrime> primes_above(const Integer& a, const Integer& p, unsigned precision = 1);

/// v_P(z) for integral nonzero z at a prime over odd p with p not dividing a.
/// Throws InvalidInput for z = 0, non-integral z, ramified or dyadic P, or a
/// field mismatch; BudgetExhausted if the root lift exceeds max_precision.
unsigned prime_valuation(const QuadElement& z, const QuadPrime& P, unsigned max_precision = 1u << 16);

/// A square root of a modulo odd prime p (a a nonzero residue).
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

/// Newton-lifts r (r^2 = a mod p) to a root modulo p^precision.
Integer hensel_lift(const Integer& a, const Integer& p, const Integer& r, unsigned precision);

}  // namespace edsfrey
