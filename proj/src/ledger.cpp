#include "edsfrey/ledger.hpp"

#include "edsfrey/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace edsfrey {

namespace {

using TermCache = std::map<std::uint64_t, Integer>;

const Integer& term_B(const Sequence& s, std::uint64_t index, TermCache& cache) {
    auto it = cache.find(index);
    if (it != cache.end()) return it->second;
    Integer B = index <= s.size() ? s.B(index) : term(s.curve(), s.generator(), index).B;
    return cache.emplace(index, std::move(B)).first->second;
}

Integer strip(Integer r, const Integer& d) {
    Integer g = gcd(r, d);
    while (g > 1) {
        r /= g;
        g = gcd(r, d);
    }
    return r;
}

std::optional<Integer> parse_integer(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) return std::nullopt;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return std::nullopt;
    }
    return Integer(text[0] == '+' ? text.substr(1) : text);
}

std::optional<Integer> field_of_tag(const std::string& tag) {
    if (tag.rfind("a=", 0) != 0) return std::nullopt;
    auto end = tag.find(':');
    auto value = parse_integer(tag.substr(2, end == std::string::npos ? std::string::npos : end - 2));
    if (!value || *value < 1) return std::nullopt;
    return value;
}

}  // namespace

KP0 find_k_p0(const Sequence& s, const Integer& q, const std::set<Integer>& T, unsigned search_cap,
              const FactorEffort& effort) {
    if (!is_probable_prime(q)) throw InvalidInput("find_k_p0: q = " + q.get_str() + " is not prime");
    const Integer& B1 = s.B(1);
    if (!mpz_divisible_p(B1.get_mpz_t(), q.get_mpz_t())) {
        throw HypothesisViolation("find_k_p0: q = " + q.get_str() + " does not divide B_1 = " + B1.get_str());
    }
    const unsigned v = valuation(B1, q);
    const Integer trial_bound(static_cast<unsigned long>(effort.trial_bound));
    if (!q.fits_ulong_p()) throw InvalidInput("find_k_p0: q is too large");
    const std::uint64_t q_small = q.get_ui();
    TermCache cache;
    std::vector<std::uint64_t> earlier{1};  // q^i for i < j
    std::uint64_t index = 1;

    for (unsigned k = v + 1; k <= search_cap; ++k) {
        if (index > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) / q_small) {
            throw BudgetExhausted("find_k_p0: index q^" + std::to_string(k - v) + " overflows");
        }
        index *= q_small;
        const Integer& B = term_B(s, index, cache);
        Factorization f = factorize(B, effort);

        // By strong divisibility a prime dividing some B_j, j < index, also
        // divides B at the proper divisor gcd(j, index) = q^i.
        auto is_new = [&](const Integer& p) {
            if (T.count(p) != 0) return false;
            return std::none_of(earlier.begin(), earlier.end(), [&](std::uint64_t e) {
                return mpz_divisible_p(term_B(s, e, cache).get_mpz_t(), p.get_mpz_t()) != 0;
            });
        };
        std::optional<Integer> best;
        for (const auto& [p, e] : f.factors) {
            if (is_new(p)) {
                best = p;
                break;  // map is ordered
            }
        }
        Integer hidden = f.unfactored_cofactor;
        for (std::uint64_t e : earlier) hidden = strip(hidden, term_B(s, e, cache));
        for (const auto& t : T) hidden = strip(hidden, t);

        const bool certain = hidden == 1 || (best && *best < trial_bound);
        if (!certain) {
            std::ostringstream os;
            os << "find_k_p0: B at index " << index << " (k = " << k << ") has an unfactored part "
               << hidden << " that may hold a smaller primitive prime";
            if (best) os << "; least primitive prime found so far is " << *best;
            throw BudgetExhausted(os.str());
        }
        if (best) return KP0{k, *best, index, v};
        earlier.push_back(index);
    }
    throw BudgetExhausted("find_k_p0: no primitive prime outside T up to k = " + std::to_string(search_cap));
}

Integer threshold(const Integer& k, const Integer& b, const Integer& c_config, const Integer& p0) {
    if (k < 1 || b < 1 || c_config < 1 || p0 < 1) throw InvalidInput("threshold: arguments must be positive");
    Integer out = 5;
    for (const Integer* x : {&k, &c_config, &p0}) out = std::max<Integer>(out, *x);
    return std::max<Integer>(out, Integer(2 * b));
}

Envelope envelope_bound(const Integer& p0, const Integer& a) {
    if (!is_probable_prime(p0)) throw InvalidInput("envelope_bound: " + p0.get_str() + " is not prime");
    if (mpz_divisible_p(Integer(2 * a).get_mpz_t(), p0.get_mpz_t())) {
        throw InvalidInput("envelope_bound: p0 = " + p0.get_str() + " divides 2a");
    }
    Envelope env;
    env.field = a;
    env.kind = splitting_type(a, p0);
    env.residue_norm = env.kind == Splitting::Inert ? Integer(p0 * p0) : p0;
    if (auto s = exact_sqrt(env.residue_norm)) {
        env.rational_part = (*s + 1) * (*s + 1);
        env.sqrt_coefficient = 0;
        env.ceiling = env.rational_part;
    } else {
        // 2 sqrt(N) = sqrt(4N) is irrational, so its ceiling is isqrt(4N) + 1.
        Integer root;
        Integer four_n = 4 * env.residue_norm;
        mpz_sqrt(root.get_mpz_t(), four_n.get_mpz_t());
        env.rational_part = env.residue_norm + 1;
        env.sqrt_coefficient = 2;
        env.ceiling = env.rational_part + root + 1;
    }
    return env;
}

LevelSupport level_support(const Integer& a, const Integer& d) {
    make_field_label(a);
    if (d < 1) throw InvalidInput("level_support: d must be positive");
    Factorization f = factorize(2 * a * d);
    if (!f.complete()) throw BudgetExhausted("level_support: could not factor 2ad");
    LevelSupport out{a, d, {}, 1};
    for (const auto& [p, e] : f.factors) {
        LevelPrime lp;
        lp.p = p;
        lp.kind = splitting_type(a, p);
        lp.ramification = (a != 1 && lp.kind == Splitting::Ramified) ? 2 : 1;
        lp.ideals = (a != 1 && lp.kind == Splitting::Split) ? 2 : 1;
        if (p == 2) {
            lp.cap = 2 + 6 * lp.ramification;
        } else if (p == 3) {
            lp.cap = 2 + 3 * lp.ramification;
        } else {
            lp.cap = 2;
        }
        for (unsigned i = 0; i < lp.ideals; ++i) out.count *= lp.cap + 1;
        out.primes.push_back(lp);
    }
    return out;
}

std::vector<EigenRecord> parse_eigen_table(std::istream& in) {
    std::vector<EigenRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        auto fail = [&](const std::string& why) {
            return InvalidInput("eigen table line " + std::to_string(line_no) + ": " + why);
        };
        if (cols.size() != 4) throw fail("expected 4 tab-separated fields, got " + std::to_string(cols.size()));
        if (cols[0].empty()) throw fail("empty level tag");
        auto form = parse_integer(cols[1]);
        auto p = parse_integer(cols[2]);
        auto ap = parse_integer(cols[3]);
        if (!form || !form->fits_slong_p()) throw fail("form index is not an integer");
        if (!p || !is_probable_prime(*p)) throw fail("p is not a prime");
        if (!ap) throw fail("a_p is not an integer");
        out.push_back(EigenRecord{cols[0], form->get_si(), *p, *ap, field_of_tag(cols[0])});
    }
    return out;
}

std::optional<Integer> exact_bound_with_eigenvalues(const LedgerReport& report,
                                                    const std::vector<EigenRecord>& table) {
    std::optional<Integer> bound;
    for (const auto& env : report.envelopes) {
        bool covered = false;
        for (const auto& rec : table) {
            if (rec.p != report.kp0.p0) continue;
            if (rec.field && *rec.field != env.field) continue;
            // Ramanujan-Petersson: a_p^2 <= 4N.
            if (rec.a_p * rec.a_p > 4 * env.residue_norm) {
                throw InvalidInput("eigen table: |a_p| = " + Integer(abs(rec.a_p)).get_str() + " exceeds 2 sqrt(" +
                                   env.residue_norm.get_str() + ") for form " + std::to_string(rec.form_index) +
                                   " at level " + rec.level_tag);
            }
            covered = true;
            const Integer n1 = env.residue_norm + 1;
            const Integer candidate = std::max<Integer>(Integer(abs(n1 + rec.a_p)), Integer(abs(n1 - rec.a_p)));
            if (!bound || candidate > *bound) bound = candidate;
        }
        if (!covered) return std::nullopt;
    }
    return bound;
}

void apply_eigen_table(LedgerReport& report, const std::vector<EigenRecord>& table) {
    report.eigen_bound = exact_bound_with_eigenvalues(report, table);
    if (report.eigen_bound) {
        report.exponent_bound = std::max<Integer>(report.threshold, *report.eigen_bound);
        report.caveats.push_back("eigen_bound uses the supplied eigenvalue table (rational eigenvalues only)");
    } else {
        report.caveats.push_back("eigenvalue table does not cover every candidate field at p0; envelope bound kept");
    }
}

std::vector<Integer> squarefree_divisors(const Integer& b, const FactorEffort& effort) {
    if (b < 1) throw InvalidInput("squarefree_divisors: b must be positive");
    Factorization f = factorize(b, effort);
    if (!f.complete()) throw BudgetExhausted("squarefree_divisors: could not factor b = " + b.get_str());
    std::vector<Integer> out{1};
    for (const auto& p : f.primes()) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

LedgerReport build_report(const Curve& c, const RationalPoint& generator, const LedgerOptions& options) {
    if (!c.is_xb_form()) throw InvalidInput("build_report: curve is not of the form y^2 = x(x^2 + b), b > 0");
    if (options.c_config < 1) throw InvalidInput("build_report: C must be a positive integer");

    Sequence s = generate(c, generator, 1);
    LedgerReport r;
    r.b = c.a4();
    std::ostringstream gen;
    gen << generator;
    r.generator = gen.str();
    r.q = options.q;
    r.B1 = s.B(1);
    if (r.B1 == 1) {
        throw HypothesisViolation("build_report: generator " + r.generator + " is integral (B_1 = 1)");
    }
    auto Tprimes = factorize(2 * r.b, options.effort);
    if (!Tprimes.complete()) throw BudgetExhausted("build_report: could not factor 2b");
    for (const auto& p : Tprimes.primes()) r.T.insert(p);

    r.kp0 = find_k_p0(s, options.q, r.T, options.search_cap, options.effort);
    r.c_config = options.c_config;
    r.threshold = threshold(Integer(r.kp0.k), r.b, r.c_config, r.kp0.p0);

    // Re-derive the (k, p0) contract independently of the search.
    const Integer B_index = term(c, generator, r.kp0.index).B;
    if (!mpz_divisible_p(B_index.get_mpz_t(), r.kp0.p0.get_mpz_t()) || r.T.count(r.kp0.p0) != 0) {
        throw InternalFault("build_report: p0 fails its defining property");
    }

    r.candidate_fields = squarefree_divisors(r.b, options.effort);
    Integer envelope_max = 0;
    for (const auto& a : r.candidate_fields) {
        r.envelopes.push_back(envelope_bound(r.kp0.p0, a));
        envelope_max = std::max<Integer>(envelope_max, r.envelopes.back().ceiling);
        r.level_supports.push_back(level_support(a, r.b / a));
        for (const auto& lp : r.level_supports.back().primes) {
            if (r.T.count(lp.p) == 0) throw InternalFault("build_report: level support leaves T");
        }
    }
    r.exponent_bound = std::max<Integer>(r.threshold, envelope_max);

    r.caveats.push_back("C = " + r.c_config.get_str() +
                        " is user-supplied; the irreducibility constant of the candidate fields is not computed");
    r.caveats.push_back("envelopes are Ramanujan-Petersson upper proxies (sqrt(N) + 1)^2, valid when the "
                        "eigenvalue field is Q; not exact bounds");
    r.caveats.push_back("conductor exponent caps over 2 and 3 (2 + 6e, 2 + 3e) are a fixed design constant");
    r.caveats.push_back("terms with B_m = 1 are not counted as perfect powers");
    return r;
}

}  // namespace edsfrey
