#include "edsfrey/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = edsfrey::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen") {
    auto r = call({"gen", "--b", "5", "--point", "20,90", "--max-m", "4"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["command"] == "gen");
    REQUIRE(doc["terms"].size() == 4);
    CHECK(doc["terms"][1]["B"] == "36");
    CHECK(doc["terms"][2]["B"] == "19679");
    CHECK(doc["terms"][3]["B"] == "39139128");
    CHECK(doc["terms"][1]["A"] == "6241");
}

TEST_CASE("gen --table") {
    auto r = call({"gen", "--b", "5", "--point", "20,90", "--max-m", "3", "--table"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("19679") != std::string::npos);
    CHECK(r.out.find('{') == std::string::npos);
}

TEST_CASE("scan") {
    auto r = call({"scan", "--b", "5", "--point", "20,90", "--max-m", "12"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["powers"].size() == 1);  // B_2 = 36 = 6^2
    CHECK(json::parse(r.out)["powers"][0]["base"] == "6");
}

TEST_CASE("descend") {
    auto r = call({"descend", "--b", "5", "--point", "20,90", "--m", "2"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["datum"]["a"] == "1");
    CHECK(doc["datum"]["u"] == "79");
    CHECK(doc["datum"]["v"] == "6881");
    CHECK(doc["frey_solution"]["d"] == "5");

    auto sq = call({"descend", "--b", "5", "--point", "20,90", "--m", "2", "--ell", "2"});
    REQUIRE(sq.code == 0);
    CHECK(json::parse(sq.out)["datum"]["w"] == "6");
    CHECK(call({"descend", "--b", "5", "--point", "20,90", "--m", "3", "--ell", "2"}).code == 3);
}

TEST_CASE("frey") {
    auto r = call({"frey", "--a", "1", "--d", "5", "--u", "79", "--v", "6881", "--w", "36", "--ell", "1",
                   "--prime", "3"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["oracle_agrees"] == true);
    CHECK(doc["curve"]["a2"]["x"] == "316");
    CHECK(doc["ideals"][0]["reduction"] == "multiplicative");
    CHECK(doc["ideals"][0]["disc_valuation"] == 16);

    CHECK(call({"frey", "--a", "1", "--d", "5", "--u", "79", "--v", "6881", "--w", "36", "--ell", "1",
                "--prime", "5"})
              .code == 3);
    CHECK(call({"frey", "--a", "1", "--d", "6", "--u", "79", "--v", "6881", "--w", "36", "--ell", "1"}).code ==
          3);
}

TEST_CASE("ledger") {
    auto r = call({"ledger", "--b", "5", "--point", "6241/1296,543599/46656", "--q", "2", "--c-config", "100"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["k"] == 3);
    CHECK(doc["p0"] == "7");
    CHECK(doc["threshold"] == "100");
    CHECK(doc["candidate_fields"][1]["envelope"]["ceiling"] == "64");
    CHECK(doc["candidate_fields"][1]["level_support"]["count"] == "27");
    CHECK(doc["eigen_bound"].is_null());

    const std::string path = "cli_test_eigen.tsv";
    {
        std::ofstream f(path);
        f << "# level\tform\tp\ta_p\na=5\t1\t7\t0\na=1\t1\t7\t0\n";
    }
    auto e = call({"ledger", "--b", "5", "--point", "6241/1296,543599/46656", "--q", "2", "--c-config", "3",
                   "--eigen-table", path});
    std::remove(path.c_str());
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["eigen_bound"] == "50");
    CHECK(json::parse(e.out)["exponent_bound"] == "50");
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"gen", "--b", "5", "--point", "20", "--max-m", "3"}).code == 2);
    CHECK(call({"gen", "--b", "5", "--point", "21,90", "--max-m", "3"}).code == 2);
    CHECK(call({"gen", "--b", "x", "--point", "20,90", "--max-m", "3"}).code == 2);
    CHECK(call({"gen", "--b", "4", "--point", "2,4", "--max-m", "3"}).code == 3);  // torsion
    CHECK(call({"ledger", "--b", "5", "--point", "20,90", "--q", "2", "--c-config", "100"}).code == 3);
    CHECK(call({"ledger", "--b", "5", "--point", "6241/1296,543599/46656", "--q", "2", "--c-config", "100",
                "--search-cap", "2"})
              .code == 4);
    CHECK(call({"ledger", "--b", "5", "--point", "6241/1296,543599/46656", "--q", "2", "--c-config", "100",
                "--eigen-table", "/nonexistent/table.tsv"})
              .code == 2);
    CHECK(call({"gen", "--help"}).code == 0);
}

}  // TEST_SUITE
