#include "edsfrey/cli.hpp"

#include "edsfrey/descent.hpp"
#include "edsfrey/eds.hpp"
#include "edsfrey/errors.hpp"
#include "edsfrey/frey.hpp"
#include "edsfrey/ledger.hpp"
#include "edsfrey/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>

namespace edsfrey::cli {

namespace {

struct CommonOptions {
    std::string b;
    std::string point;
    bool table = false;
    std::uint64_t trial_bound = FactorEffort{}.trial_bound;
    std::uint64_t rho_iterations = FactorEffort{}.rho_iterations;

    FactorEffort effort() const {
        FactorEffort e;
        e.trial_bound = trial_bound;
        e.rho_iterations = rho_iterations;
        return e;
    }
};

RationalPoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw InvalidInput("point must be X,Y; got '" + text + "'");
    return RationalPoint::affine(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::pair<Curve, RationalPoint> curve_and_point(const CommonOptions& o) {
    Curve c = make_curve_xb(parse_integer(o.b));
    RationalPoint p = parse_point(o.point);
    require_on_curve(c, p);
    return {c, p};
}

void add_effort_flags(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--trial-bound", o.trial_bound, "Trial division bound");
    sub->add_option("--rho-iterations", o.rho_iterations, "Pollard rho step cap per attempt");
}

void add_curve_flags(CLI::App* sub, CommonOptions& o) {
    sub->add_option("--b", o.b, "Curve parameter b of y^2 = x(x^2 + b)")->required();
    sub->add_option("--point", o.point, "Generator X,Y (rationals as num/den)")->required();
}

void print_rows(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << std::setw(static_cast<int>(width[i])) << r[i] << (i + 1 < r.size() ? "  " : "\n");
        }
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void print_table(std::ostream& out, const Json& doc) {
    const std::string cmd = doc.at("command");
    if (cmd == "gen") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& t : doc.at("terms")) {
            rows.push_back({std::to_string(t.at("m").get<std::uint64_t>()), t.at("A"), t.at("B"), t.at("C")});
        }
        print_rows(out, {"m", "A", "B", "C"}, rows);
        return;
    }
    if (cmd == "scan") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& h : doc.at("powers")) {
            rows.push_back({std::to_string(h.at("m").get<std::uint64_t>()),
                            std::to_string(h.at("exponent").get<unsigned>()), h.at("base")});
        }
        if (rows.empty()) out << "no perfect powers for m <= " << doc.at("max_m") << "\n";
        else print_rows(out, {"m", "exponent", "base"}, rows);
        return;
    }
    // Other reports are nested; indent them as key/value text.
    std::function<void(const Json&, int)> walk = [&](const Json& j, int depth) {
        const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
        for (auto it = j.begin(); it != j.end(); ++it) {
            out << pad;
            if (j.is_object()) out << it.key() << ":";
            else out << "-";
            if (it->is_structured()) {
                out << "\n";
                walk(*it, depth + 1);
            } else {
                out << " " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
            }
        }
    };
    walk(doc, 0);
}

Json cmd_gen(const CommonOptions& o, std::uint64_t max_m) {
    auto [c, p] = curve_and_point(o);
    Sequence s = generate(c, p, max_m);
    Json terms = Json::array();
    for (const auto& t : s.terms()) terms.push_back(to_json(t));
    return Json{{"command", "gen"}, {"b", o.b}, {"point", to_json(p)}, {"max_m", max_m}, {"terms", terms}};
}

Json cmd_scan(const CommonOptions& o, std::uint64_t max_m) {
    auto [c, p] = curve_and_point(o);
    Sequence s = generate(c, p, max_m);
    Json hits = Json::array();
    for (const auto& h : scan_powers(s)) hits.push_back(to_json(h));
    return Json{{"command", "scan"}, {"b", o.b}, {"point", to_json(p)}, {"max_m", max_m}, {"powers", hits}};
}

Json cmd_descend(const CommonOptions& o, std::uint64_t m, unsigned ell) {
    auto [c, p] = curve_and_point(o);
    EDSTerm t = term(c, p, m);
    Integer w = t.B;
    if (ell > 1) {
        auto root = t.B > 1 ? exact_root(t.B, ell) : std::optional<Integer>(1);
        if (!root) {
            throw HypothesisViolation("B_" + std::to_string(m) + " = " + t.B.get_str() + " is not a " +
                                      std::to_string(ell) + "-th power");
        }
        w = *root;
    }
    DescentDatum d = decompose(c, t, ell, w, o.effort());
    return Json{{"command", "descend"},
                {"b", o.b},
                {"point", to_json(p)},
                {"term", to_json(t)},
                {"datum", to_json(d)},
                {"frey_solution", to_json(to_frey(d))}};
}

Json cmd_frey(const FreySolution& s, const std::string& prime) {
    FreyCurve F = construct(s);
    FreyInvariants oracle = invariants_oracle(F);
    Json bad = Json::array();
    for (const auto& p : F.bad_primes()) bad.push_back(to_json(p));
    Json doc{{"command", "frey"},
             {"solution", to_json(s)},
             {"curve",
              {{"a2", to_json(F.a2())},
               {"a4", to_json(F.a4())},
               {"discriminant", to_json(F.discriminant())},
               {"c4", to_json(F.c4())}}},
             {"oracle_agrees", oracle.discriminant == F.discriminant() && oracle.c4 == F.c4()},
             {"bad_set", bad}};
    if (!prime.empty()) {
        const Integer p = parse_integer(prime);
        if (!is_probable_prime(p)) throw InvalidInput("--prime " + prime + " is not prime");
        if (F.bad_primes().count(p) != 0) {
            throw HypothesisViolation(prime + " divides 2ad; reduction there is not analysed");
        }
        Json ideals = Json::array();
        for (const auto& P : primes_above(s.a, p)) {
            ReductionInfo info = classify_reduction(F, P);
            ExponentCheck ex = exponent_divisibility(F, P);
            Json j = to_json(P);
            j["reduction"] = info.type == Reduction::Good ? "good" : "multiplicative";
            j["disc_valuation"] = info.disc_valuation;
            j["c4_valuation"] = info.c4_valuation ? Json(*info.c4_valuation) : Json("infinite");
            j["minimal"] = info.minimal;
            j["factor_valuation"] = ex.valuation;
            j["ell_divides_valuation"] = ex.divisible;
            ideals.push_back(j);
        }
        doc["prime"] = prime;
        doc["ideals"] = ideals;
    }
    return doc;
}

Json cmd_ledger(const CommonOptions& o, const std::string& q, const std::string& c_config,
                const std::string& eigen_path, unsigned search_cap) {
    auto [c, p] = curve_and_point(o);
    LedgerOptions options;
    options.q = parse_integer(q);
    options.c_config = parse_integer(c_config);
    options.search_cap = search_cap;
    options.effort = o.effort();
    LedgerReport report = build_report(c, p, options);
    if (!eigen_path.empty()) {
        std::ifstream in(eigen_path);
        if (!in) throw InvalidInput("cannot open eigenvalue table '" + eigen_path + "'");
        apply_eigen_table(report, parse_eigen_table(in));
    }
    Json doc{{"command", "ledger"}};
    doc.update(to_json(report));
    return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Elliptic divisibility sequences on y^2 = x(x^2 + b): perfect powers and Frey curves", "edsfrey"};
    app.require_subcommand(1);

    CommonOptions common;
    std::uint64_t max_m = 0, m = 0;
    unsigned ell = 1, search_cap = 12;
    std::string q, c_config, eigen_path, prime;
    FreySolution sol;
    std::string fa, fd, fu, fv, fw;

    auto* gen = app.add_subcommand("gen", "Table of (m, A_m, B_m, C_m)");
    add_curve_flags(gen, common);
    gen->add_option("--max-m", max_m, "Last index")->required()->check(CLI::PositiveNumber);

    auto* scan = app.add_subcommand("scan", "Perfect powers among B_2..B_M");
    add_curve_flags(scan, common);
    scan->add_option("--max-m", max_m, "Last index")->required()->check(CLI::PositiveNumber);

    auto* descend = app.add_subcommand("descend", "Descent datum and Frey solution for one term");
    add_curve_flags(descend, common);
    add_effort_flags(descend, common);
    descend->add_option("--m", m, "Index")->required()->check(CLI::PositiveNumber);
    descend->add_option("--ell", ell, "Exponent l with B_m = w^l")->check(CLI::PositiveNumber);

    auto* frey = app.add_subcommand("frey", "Frey curve invariants and reduction");
    frey->add_option("--a", fa)->required();
    frey->add_option("--d", fd)->required();
    frey->add_option("--u", fu)->required();
    frey->add_option("--v", fv)->required();
    frey->add_option("--w", fw)->required();
    frey->add_option("--ell", sol.ell)->required()->check(CLI::PositiveNumber);
    frey->add_option("--prime", prime, "Classify reduction at the ideals above this prime");

    auto* ledger = app.add_subcommand("ledger", "Assemble the exponent bound report");
    add_curve_flags(ledger, common);
    add_effort_flags(ledger, common);
    ledger->add_option("--q", q, "Prime dividing B_1")->required();
    ledger->add_option("--c-config", c_config, "Irreducibility constant C (user-supplied)")->required();
    ledger->add_option("--eigen-table", eigen_path, "Eigenvalue table (level_tag, form, p, a_p)");
    ledger->add_option("--search-cap", search_cap, "Largest k tried");

    for (auto* sub : {gen, scan, descend, frey, ledger}) {
        sub->add_flag("--table", common.table, "Human-readable text instead of JSON");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        Json doc;
        if (gen->parsed()) doc = cmd_gen(common, max_m);
        else if (scan->parsed()) doc = cmd_scan(common, max_m);
        else if (descend->parsed()) doc = cmd_descend(common, m, ell);
        else if (frey->parsed()) {
            sol.a = parse_integer(fa);
            sol.d = parse_integer(fd);
            sol.u = parse_integer(fu);
            sol.v = parse_integer(fv);
            sol.w = parse_integer(fw);
            doc = cmd_frey(sol, prime);
        } else {
            doc = cmd_ledger(common, q, c_config, eigen_path, search_cap);
        }
        if (common.table) print_table(out, doc);
        else out << doc.dump(2) << "\n";
        return kSuccess;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const HypothesisViolation& e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return kHypothesis;
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace edsfrey::cli
