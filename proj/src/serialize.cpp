#include "edsfrey/serialize.hpp"

#include "edsfrey/errors.hpp"

#include <cctype>

namespace edsfrey {

namespace {

bool is_decimal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Integer parse_integer(const std::string& text) {
    if (!is_decimal(text)) throw InvalidInput("not an integer: '" + text + "'");
    return Integer(text[0] == '+' ? text.substr(1) : text);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(text));
    const Integer num = parse_integer(text.substr(0, slash));
    const Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Json to_json(const Integer& n) { return n.get_str(); }

Json to_json(const Rational& q) { return q.get_str(); }

Json to_json(const RationalPoint& p) {
    if (p.is_infinity()) return "infinity";
    return Json{{"x", to_json(p.x())}, {"y", to_json(p.y())}};
}

Json to_json(const EDSTerm& t) {
    return Json{{"m", t.m}, {"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", to_json(t.C)}};
}

Json to_json(const PowerHit& h) {
    return Json{{"m", h.m}, {"exponent", h.exponent}, {"base", to_json(h.base)}};
}

Json to_json(const QuadElement& z) {
    return Json{{"field", to_json(z.field())}, {"x", to_json(z.x())}, {"y", to_json(z.y())}};
}

Json to_json(const QuadPrime& P) {
    Json j{{"field", to_json(P.field)},
           {"p", to_json(P.p)},
           {"kind", std::string(to_string(P.kind))},
           {"residue_norm", to_json(P.residue_norm)}};
    if (P.root) {
        j["root"] = to_json(*P.root);
        j["precision"] = P.precision;
    }
    return j;
}

Json to_json(const FreySolution& s) {
    return Json{{"a", to_json(s.a)}, {"d", to_json(s.d)}, {"u", to_json(s.u)},
                {"v", to_json(s.v)}, {"w", to_json(s.w)}, {"ell", s.ell}};
}

Json to_json(const DescentDatum& d) {
    return Json{{"m", d.m},         {"b", to_json(d.b)}, {"a", to_json(d.a)},  {"u", to_json(d.u)},
                {"v", to_json(d.v)}, {"w", to_json(d.w)}, {"ell", d.ell}, {"c_sign", d.c_sign}};
}

Json to_json(const Envelope& e) {
    Json j{{"field", to_json(e.field)},
           {"p0_splitting", std::string(to_string(e.kind))},
           {"residue_norm", to_json(e.residue_norm)},
           {"exact", e.exact()},
           {"rational_part", to_json(e.rational_part)},
           {"sqrt_norm_coefficient", to_json(e.sqrt_coefficient)},
           {"ceiling", to_json(e.ceiling)}};
    return j;
}

Json to_json(const LevelSupport& l) {
    Json primes = Json::array();
    for (const auto& p : l.primes) {
        primes.push_back(Json{{"p", to_json(p.p)},
                              {"kind", std::string(to_string(p.kind))},
                              {"ramification_index", p.ramification},
                              {"ideals", p.ideals},
                              {"exponent_cap", p.cap}});
    }
    return Json{{"field", to_json(l.field)}, {"d", to_json(l.d)}, {"primes", primes}, {"count", to_json(l.count)}};
}

Json to_json(const LedgerReport& r) {
    Json T = Json::array();
    for (const auto& p : r.T) T.push_back(to_json(p));
    Json fields = Json::array();
    for (std::size_t i = 0; i < r.candidate_fields.size(); ++i) {
        fields.push_back(Json{{"a", to_json(r.candidate_fields[i])},
                              {"envelope", to_json(r.envelopes.at(i))},
                              {"level_support", to_json(r.level_supports.at(i))}});
    }
    Json j{{"b", to_json(r.b)},
           {"generator", r.generator},
           {"q", to_json(r.q)},
           {"B1", to_json(r.B1)},
           {"T", T},
           {"k", r.kp0.k},
           {"p0", to_json(r.kp0.p0)},
           {"p0_index", r.kp0.index},
           {"v_q_B1", r.kp0.base_valuation},
           {"C_config", to_json(r.c_config)},
           {"threshold", to_json(r.threshold)},
           {"candidate_fields", fields},
           {"eigen_bound", r.eigen_bound ? to_json(*r.eigen_bound) : Json(nullptr)},
           {"exponent_bound", to_json(r.exponent_bound)},
           {"caveats", r.caveats}};
    return j;
}

}  // namespace edsfrey
