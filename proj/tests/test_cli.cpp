#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rsrep/cli.hpp"
#include "test_support.hpp"

using namespace rsrep;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

size_t line_count(const std::string& text) {
    size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("expand matches the documented wire format") {
    auto res = run({"expand", "--s", "2", "--r", "3", "--x", "1", "--policy", "lazy", "--depth", "3"});
    CHECK(res.code == 0);
    CHECK(res.out == "{\"digits\":[0,1,3],\"remainder\":\"3/1\"}\n");
}

TEST_CASE("pairs text output is one line per pair") {
    auto res = run({"pairs", "--s", "3", "--r", "4", "--format", "text"});
    CHECK(res.code == 0);
    CHECK(line_count(res.out) == 8);

    auto js = run({"pairs", "--s", "3", "--r", "4"});
    auto doc = json::parse(js.out);
    CHECK(doc["count"] == 8);
    CHECK(doc["pairs"].size() == 8);
}

TEST_CASE("dims reports the regime error inline") {
    auto res = run({"dims", "--s", "2", "--r", "3"});
    CHECK(res.code == 0);
    auto doc = json::parse(res.out);
    CHECK(doc["unique_set"] == "regime_error");
    CHECK(doc["self_affine"]["exact"] == "4/3");
    CHECK(doc["self_affine"]["value"] == doctest::Approx(4.0 / 3.0));
    CHECK(doc["cantor_levelset"]["exact"] == "1/2");

    auto res33 = run({"dims", "--s", "3", "--r", "3"});
    auto doc33 = json::parse(res33.out);
    CHECK(doc33["unique_set"]["formula"]["num_args"][0] == 2);
    CHECK(doc33["unique_set"]["formula"]["den_args"][0] == 3);
}

TEST_CASE("identical invocations produce identical bytes") {
    std::vector<std::vector<std::string>> cases = {
        {"expand", "--x", "5/8", "--s", "3", "--r", "3", "--policy", "random", "--seed", "42",
         "--depth", "12"},
        {"census", "--x", "1", "--s", "2", "--r", "3", "--enumerate", "8"},
        {"graph", "--n", "3", "--s", "2", "--r", "3", "--format", "csv"},
        {"automaton", "--x", "1/2", "--s", "3", "--r", "3", "--format", "dot"},
        {"dims", "--s", "4", "--r", "6"},
    };
    for (const auto& argv : cases) {
        auto first = run(argv);
        auto second = run(argv);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
    }
    // a different seed may change the random expansion
    auto a = run({"expand", "--x", "5/8", "--s", "3", "--r", "4", "--policy", "random", "--seed",
                  "1", "--depth", "12"});
    auto b = run({"expand", "--x", "5/8", "--s", "3", "--r", "4", "--policy", "random", "--seed",
                  "2", "--depth", "12"});
    CHECK(a.out != b.out);
}

TEST_CASE("expand output feeds back through value") {
    testsupport::Rng rng(20240801);
    for (auto [s, r] : {std::pair{2, 3}, {3, 3}, {3, 5}}) {
        Params p(s, r);
        for (int i = 0; i < 17; ++i) {  // ~50 scripted cases over three systems
            Rational x = testsupport::random_rational(rng, p, 200, false);
            for (const char* policy : {"greedy", "lazy"}) {
                auto expanded = run({"expand", "--s", std::to_string(s), "--r", std::to_string(r),
                                     "--x", x.to_string(), "--policy", policy, "--periodic"});
                REQUIRE(expanded.code == 0);
                auto doc = json::parse(expanded.out);
                auto evaluated = run({"value", "--s", std::to_string(s), "--r", std::to_string(r),
                                      "--rep", doc["rep"].get<std::string>()});
                REQUIRE(evaluated.code == 0);
                CHECK(json::parse(evaluated.out)["value"] == x.to_string());
            }
        }
    }
}

TEST_CASE("error paths and exit codes") {
    auto unknown = run({"frobnicate"});
    CHECK(unknown.code == 2);
    CHECK(json::parse(unknown.err)["error"]["type"] == "usage");

    auto malformed = run({"expand", "--x", "1/2/3", "--s", "2", "--r", "3"});
    CHECK(malformed.code == 2);
    CHECK(json::parse(malformed.err)["error"]["type"] == "usage");

    auto decimal = run({"expand", "--x", "0.5", "--s", "2", "--r", "3"});
    CHECK(decimal.code == 2);

    auto domain = run({"feval", "--x", "9/2", "--s", "2", "--r", "3"});
    CHECK(domain.code == 2);
    CHECK(json::parse(domain.err)["error"]["type"] == "domain");

    auto budget = run({"graph", "--n", "25", "--s", "2", "--r", "3"});
    CHECK(budget.code == 3);
    CHECK(json::parse(budget.err)["error"]["type"] == "budget");

    auto bad_params = run({"pairs", "--s", "3", "--r", "2"});
    CHECK(bad_params.code == 2);

    auto bad_format = run({"pairs", "--s", "2", "--r", "3", "--format", "dot"});
    CHECK(bad_format.code == 2);
}

TEST_CASE("config file defaults with flag override") {
    std::string path = "test_cli_config.tmp";
    {
        std::ofstream cfg(path);
        cfg << "# defaults for the test\n";
        cfg << "s = 3\n";
        cfg << "r = 4\n";
        cfg << "format = text\n";
    }
    auto res = run({"--config", path, "pairs"});
    CHECK(res.code == 0);
    CHECK(line_count(res.out) == 8);  // (3,4) in text format

    // flags win over the config file
    auto overridden = run({"--config", path, "pairs", "--s", "2", "--r", "2", "--format", "json"});
    CHECK(overridden.code == 0);
    CHECK(json::parse(overridden.out)["count"] == 2);

    // the environment variable names the same file
    setenv("REDUNDANT_RADIX_CONFIG", path.c_str(), 1);
    auto via_env = run({"pairs"});
    unsetenv("REDUNDANT_RADIX_CONFIG");
    CHECK(via_env.code == 0);
    CHECK(line_count(via_env.out) == 8);

    {
        std::ofstream cfg(path);
        cfg << "bogus = 1\n";
    }
    auto bogus = run({"--config", path, "pairs"});
    CHECK(bogus.code == 2);
    std::remove(path.c_str());
}

TEST_CASE("automaton formats") {
    auto dot = run({"automaton", "--x", "1/2", "--s", "3", "--r", "3", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    CHECK(dot.out.find("\"1/2\" -> \"3/2\" [label=\"0\"]") != std::string::npos);

    auto js = run({"automaton", "--x", "1/2", "--s", "3", "--r", "3"});
    auto doc = json::parse(js.out);
    CHECK(doc["start"] == "1/2");
    CHECK(doc["states"].size() == 2);
    CHECK(doc["edges"].size() == 3);
}

TEST_CASE("graph csv header and shape") {
    auto res = run({"graph", "--n", "2", "--s", "2", "--r", "3", "--format", "csv"});
    CHECK(res.code == 0);
    std::istringstream in(res.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x_num,x_den,y_num,y_den");
    CHECK(line_count(res.out) == 17);  // header + 16 points
}

TEST_CASE("census subcommand modes") {
    auto count = run({"census", "--x", "1", "--s", "2", "--r", "3", "--count-n", "1"});
    CHECK(json::parse(count.out)["count"] == "3");

    auto term = run({"census", "--x", "1/2", "--s", "2", "--r", "3", "--terminating"});
    auto tdoc = json::parse(term.out);
    CHECK(tdoc["terminating"] == true);
    CHECK(tdoc["witness"] == "1 (0)");

    auto none = run({"census", "--x", "5/8", "--s", "3", "--r", "3", "--terminating"});
    CHECK(json::parse(none.out)["terminating"] == false);

    auto both = run({"census", "--x", "1", "--s", "2", "--r", "3", "--count-n", "1", "--terminating"});
    CHECK(both.code == 2);
}

TEST_CASE("classify level flag") {
    auto level = run({"classify", "--x", "1", "--s", "2", "--r", "3", "--level"});
    auto doc = json::parse(level.out);
    CHECK(doc["class"] == "continuum");
    CHECK(doc["constant_r_tail"] == true);

    auto plain = run({"classify", "--x", "0", "--s", "2", "--r", "3"});
    auto pdoc = json::parse(plain.out);
    CHECK(pdoc["class"] == "finite");
    CHECK(pdoc["count"] == "1");
}

TEST_CASE("feval edge annotations") {
    auto res = run({"feval", "--x", "1", "--s", "2", "--r", "3", "--with-rep"});
    auto doc = json::parse(res.out);
    CHECK(doc["f"] == "3/1");
    CHECK(doc["rep"] == "(3)");
    CHECK(doc.contains("note"));

    auto feq = run({"feval", "--x", "1/3", "--s", "2", "--r", "3", "--feq-digit", "2"});
    CHECK(json::parse(feq.out)["functional_equation_holds"] == true);
}

TEST_CASE("expand admissible mode") {
    auto res = run({"expand", "--x", "1", "--s", "2", "--r", "3", "--admissible"});
    auto doc = json::parse(res.out);
    CHECK(doc["admissible"] == json::array({0, 1, 2}));
}

TEST_CASE("cylinder modes") {
    auto iv = run({"cylinder", "--base", "2", "--s", "2", "--r", "3"});
    auto doc = json::parse(iv.out);
    CHECK(doc["interval"]["lo"] == "1/1");
    CHECK(doc["interval"]["hi"] == "5/2");
    CHECK(doc["length"] == "3/2");

    auto kids = run({"cylinder", "--base", "", "--children", "--s", "2", "--r", "3"});
    CHECK(json::parse(kids.out)["children"].size() == 4);

    auto same = run({"cylinder", "--base", "0 2", "--same", "1 0", "--s", "2", "--r", "3"});
    CHECK(json::parse(same.out)["coincide"] == true);

    auto containing = run({"cylinder", "--containing", "1", "--rank", "1", "--policy", "lazy",
                           "--s", "2", "--r", "3"});
    CHECK(json::parse(containing.out)["base"] == "0");

    auto missing_rank = run({"cylinder", "--containing", "1", "--s", "2", "--r", "3"});
    CHECK(missing_rank.code == 2);
}

TEST_CASE("overlap modes") {
    auto ov = run({"overlap", "--base", "", "--digit", "0", "--s", "2", "--r", "3"});
    auto doc = json::parse(ov.out);
    CHECK(doc["overlap"]["lo"] == "1/2");
    CHECK(doc["overlap"]["hi"] == "3/2");
    CHECK(doc["parent_ratio"] == "1/3");

    auto none = run({"overlap", "--check-rank", "--s", "2", "--r", "3"});
    CHECK(json::parse(none.out)["offset_p"].is_null());

    auto one = run({"overlap", "--check-rank", "--s", "2", "--r", "2"});
    CHECK(json::parse(one.out)["offset_p"] == 1);

    auto bad = run({"overlap", "--base", "", "--digit", "3", "--s", "2", "--r", "3"});
    CHECK(bad.code == 2);
}

TEST_CASE("witness and ifs output shapes") {
    auto w = run({"witness", "--base", "", "--s", "2", "--r", "3"});
    auto wdoc = json::parse(w.out);
    CHECK(wdoc["f"] == json::array({"0/1", "5/4", "1/2"}));
    CHECK(wdoc["rise"] == "5/4");
    CHECK(wdoc["fall"] == "-3/4");

    auto maps = run({"ifs", "--s", "2", "--r", "3"});
    auto mdoc = json::parse(maps.out);
    REQUIRE(mdoc["maps"].size() == 4);
    CHECK(mdoc["maps"][2]["matrix"][0][0] == "1/4");
    CHECK(mdoc["maps"][2]["matrix"][1][1] == "1/2");
    CHECK(mdoc["maps"][2]["offset"] == json::array({"1/2", "1/1"}));
}

TEST_CASE("value rejects bad bases and reflects") {
    auto bad = run({"value", "--rep", "(1)", "--base", "1", "--s", "2", "--r", "3"});
    CHECK(bad.code == 2);

    auto refl = run({"value", "--rep", "2 (0)", "--reflect", "--s", "2", "--r", "3"});
    auto doc = json::parse(refl.out);
    CHECK(doc["rep"] == "1 (3)");
    CHECK(doc["value"] == "2/1");
}

TEST_CASE("variation and integral shapes") {
    auto var = run({"variation", "--n", "2", "--s", "2", "--r", "3"});
    auto vdoc = json::parse(var.out);
    CHECK(vdoc["partial_sums"] == json::array({"3/1", "15/2"}));
    CHECK(vdoc["increment_ratio"] == "3/2");

    auto integral = run({"integral", "--estimate-n", "4", "--s", "2", "--r", "3"});
    auto idoc = json::parse(integral.out);
    CHECK(idoc["exact"] == "3/2");
    CHECK(idoc["error"] == "3/32");
}

TEST_CASE("graph box counts through the cli") {
    auto res = run({"graph", "--n", "6", "--box", "2,3", "--s", "2", "--r", "3"});
    auto doc = json::parse(res.out);
    REQUIRE(doc["box_counts"].size() == 2);
    CHECK(doc["box_counts"][0]["exponent"] == 2);
    CHECK(doc["box_counts"][0]["count"].get<long long>() > 0);
}

TEST_CASE("every operation is exposed by exactly one subcommand") {
    std::set<std::string> seen;
    for (const auto& cmd : cli::command_table()) {
        for (const char* op : cmd.operations) {
            CHECK(seen.insert(op).second);  // no operation reachable twice
        }
    }
    std::set<std::string> expected(cli::all_operations().begin(), cli::all_operations().end());
    CHECK(seen == expected);
}

TEST_CASE("command table matches the registered subcommands") {
    auto help = run({"--help"});
    CHECK(help.code == 0);
    for (const auto& cmd : cli::command_table())
        CHECK(help.out.find(cmd.name) != std::string::npos);
}
