#include "edsfrey/quadfield.hpp"

#include "edsfrey/errors.hpp"

#include <sstream>
#include <utility>

namespace edsfrey {

namespace {

void require_same_field(const QuadElement& l, const QuadElement& r) {
    if (l.field() != r.field()) {
        throw InvalidInput("quadfield: mixing Q(sqrt(" + l.field().get_str() + ")) and Q(sqrt(" +
                           r.field().get_str() + "))");
    }
}

Integer pow(const Integer& base, unsigned e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Integer mod(const Integer& x, const Integer& m) {
    Integer r = x % m;
    if (r < 0) r += m;
    return r;
}

void require_prime(const Integer& p) {
    if (!is_probable_prime(p)) throw InvalidInput("quadfield: " + p.get_str() + " is not prime");
}

}  // namespace

QuadElement::QuadElement(Integer a, Rational x, Rational y) : a_(std::move(a)), x_(std::move(x)), y_(std::move(y)) {
    if (a_ < 1) throw InvalidInput("quadfield: field label must be a positive squarefree integer");
    x_.canonicalize();
    y_.canonicalize();
    if (a_ == 1) {
        x_ += y_;
        y_ = 0;
    }
}

QuadElement operator+(const QuadElement& l, const QuadElement& r) {
    require_same_field(l, r);
    return QuadElement(l.a_, l.x_ + r.x_, l.y_ + r.y_);
}

QuadElement operator-(const QuadElement& l, const QuadElement& r) {
    require_same_field(l, r);
    return QuadElement(l.a_, l.x_ - r.x_, l.y_ - r.y_);
}

QuadElement operator*(const QuadElement& l, const QuadElement& r) {
    require_same_field(l, r);
    const Rational a(l.a_);
    return QuadElement(l.a_, l.x_ * r.x_ + a * l.y_ * r.y_, l.x_ * r.y_ + l.y_ * r.x_);
}

QuadElement operator*(long k, const QuadElement& z) { return QuadElement(z.a_, k * z.x_, k * z.y_); }

QuadElement operator-(const QuadElement& z) { return QuadElement(z.a_, -z.x_, -z.y_); }

std::ostream& operator<<(std::ostream& os, const QuadElement& z) {
    if (z.a_ == 1 || z.y_ == 0) return os << z.x_;
    return os << z.x_ << (z.y_ < 0 ? " - " : " + ") << abs(z.y_) << "*sqrt(" << z.a_ << ')';
}

Integer make_field_label(const Integer& a) {
    if (a < 1 || !is_squarefree(a)) {
        throw InvalidInput("quadfield: field label " + a.get_str() + " is not a positive squarefree integer");
    }
    return a;
}

Rational norm(const QuadElement& z) { return z.x() * z.x() - Rational(z.field()) * z.y() * z.y(); }

std::string_view to_string(Splitting s) {
    switch (s) {
        case Splitting::Split: return "split";
        case Splitting::Inert: return "inert";
        case Splitting::Ramified: return "ramified";
    }
    return "?";
}

Splitting splitting_type(const Integer& a, const Integer& p) {
    make_field_label(a);
    require_prime(p);
    if (a == 1) return Splitting::Split;
    if (p == 2) {
        const unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
        if (r == 1) return Splitting::Split;
        if (r == 5) return Splitting::Inert;
        return Splitting::Ramified;
    }
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) return Splitting::Ramified;
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) == 1 ? Splitting::Split : Splitting::Inert;
}

Integer sqrt_mod_prime(const Integer& a, const Integer& p) {
    const Integer n = mod(a, p);
    if (n == 0) return 0;
    if (p == 2) return n;
    if (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != 1) {
        throw InvalidInput("sqrt_mod_prime: " + a.get_str() + " is not a square mod " + p.get_str());
    }
    auto powm = [&](const Integer& b, const Integer& e) {
        Integer out;
        mpz_powm(out.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return out;
    };
    // Tonelli-Shanks: p - 1 = q 2^s with q odd.
    Integer q = p - 1;
    unsigned s = static_cast<unsigned>(mpz_scan1(q.get_mpz_t(), 0));
    q >>= s;
    if (s == 1) return powm(n, (p + 1) / 4);

    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Integer c = powm(z, q);
    Integer r = powm(n, (q + 1) / 2);
    Integer t = powm(n, q);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

Integer hensel_lift(const Integer& a, const Integer& p, const Integer& r, unsigned precision) {
    if (precision == 0) throw InvalidInput("hensel_lift: precision must be positive");
    const Integer modulus = pow(p, precision);
    Integer root = mod(r, modulus);
    // Newton's iteration doubles the number of correct p-adic digits.
    for (unsigned digits = 1; digits < precision; digits *= 2) {
        Integer inv;
        Integer two_r = mod(2 * root, modulus);
        if (mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), modulus.get_mpz_t()) == 0) {
            throw InvalidInput("hensel_lift: derivative vanishes mod " + p.get_str());
        }
        root = mod(root - (root * root - a) * inv, modulus);
    }
    if (mod(root * root - a, modulus) != 0) throw InternalFault("hensel_lift: lift is not a root");
    return root;
}

std::vector<QuadPrime> primes_above(const Integer& a, const Integer& p, unsigned precision) {
    if (precision == 0) throw InvalidInput("primes_above: precision must be positive");
    const Splitting kind = splitting_type(a, p);
    QuadPrime base{a, p, kind, std::nullopt, 0, p};

    if (a == 1) {
        base.root = Integer(1);
        base.precision = precision;
        return {base};
    }
    switch (kind) {
        case Splitting::Inert:
            base.residue_norm = p * p;
            return {base};
        case Splitting::Ramified:
            return {base};
        case Splitting::Split:
            break;
    }
    if (p == 2) return {base, base};

    Integer r = sqrt_mod_prime(a, p);
    if (r > p - r) r = p - r;
    const Integer lifted = hensel_lift(a, p, r, precision);
    QuadPrime first = base, second = base;
    first.root = lifted;
    second.root = pow(p, precision) - lifted;
    first.precision = second.precision = precision;
    return {first, second};
}

unsigned prime_valuation(const QuadElement& z, const QuadPrime& P, unsigned max_precision) {
    if (z.field() != P.field) throw InvalidInput("prime_valuation: element and prime live in different fields");
    if (z.is_zero()) throw InvalidInput("prime_valuation: valuation of zero is infinite");
    if (!z.is_integral()) throw InvalidInput("prime_valuation: element must have integer coordinates");
    if (P.p == 2) throw InvalidInput("prime_valuation: primes over 2 are not supported");
    if (P.kind == Splitting::Ramified) {
        throw InvalidInput("prime_valuation: " + P.p.get_str() + " ramifies in Q(sqrt(" + P.field.get_str() + "))");
    }

    const Integer x = z.x().get_num();
    const Integer y = z.y().get_num();
    if (P.field == 1) return valuation(x, P.p);

    const Integer n = norm(z).get_num();
    const unsigned norm_val = valuation(n, P.p);
    if (P.kind == Splitting::Inert) {
        if (norm_val % 2 != 0) throw InternalFault("prime_valuation: odd norm valuation at an inert prime");
        return norm_val / 2;
    }

    if (!P.root) throw InvalidInput("prime_valuation: split prime carries no root");
    // Image of z under Z[sqrt(a)] -> Z/p^t, sqrt(a) -> root; its p-adic
    // valuation is v_P(z) once it is below t.
    Integer root = *P.root;
    unsigned t = std::max(P.precision, 1u);
    for (;;) {
        const Integer modulus = pow(P.p, t);
        const Integer image = mod(x + y * root, modulus);
        if (image != 0) {
            const unsigned v = valuation(image, P.p);
            const Integer conj_image = mod(x - y * root, modulus);
            const unsigned conj_v = conj_image == 0 ? t : valuation(conj_image, P.p);
            if (conj_image != 0 && v + conj_v != norm_val) {
                throw InternalFault("prime_valuation: conjugate valuations do not sum to v_p(norm)");
            }
            if (conj_image == 0 && v + t > norm_val) {
                throw InternalFault("prime_valuation: conjugate valuations exceed v_p(norm)");
            }
            return v;
        }
        if (t >= max_precision) {
            throw BudgetExhausted("prime_valuation: root lift precision " + std::to_string(t) + " exhausted");
        }
        t = std::min(2 * t, max_precision);
        root = hensel_lift(P.field, P.p, root, t);
    }
}

}  // namespace edsfrey
