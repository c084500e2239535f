#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "brouwer/cli.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace brouwer;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json j() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    TempFile(std::string p, const std::string &body) : path(std::move(p)) { std::ofstream(path) << body; }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("pi commands") {
    auto r = cli({"pi", "digits", "5", "--json"});
    REQUIRE(r.code == ExitOk);
    auto j = r.j();
    CHECK(j["command"] == "pi digits");
    CHECK(j["digits"] == "14159");
    CHECK(j["seed"] == 1);
    CHECK(cli({"--seed", "7", "pi", "digits", "3", "--json"}).j()["seed"] == 7);

    auto find = cli({"pi", "find", "--run", "9x6", "--json"});
    CHECK(find.code == ExitOk);
    CHECK(find.j()["position"] == 762);
    CHECK(cli({"pi", "selftest", "--digits", "500"}).code == ExitOk);

    auto text = cli({"pi", "digits", "5"});
    CHECK(text.code == ExitOk);
    CHECK(text.out.find("14159") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    for (std::vector<std::string> args : {std::vector<std::string>{"real", "continuity", "--map", "delay", "--at", "zero",
                                                                   "--m0", "2", "--samples", "20", "--json"},
                                          std::vector<std::string>{"logic", "sweep", "--schema", "cs4", "--json"}}) {
        auto a = cli(args), b = cli(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("reals and fleeing") {
    auto cmp = cli({"real", "cmp", "--lhs", "zero", "--rhs", "one", "--horizon", "4", "--json"}).j();
    CHECK(cmp["lhs_less"]["value"] == "Holds");
    CHECK(cmp["rhs_less"]["value"] == "UnknownAtHorizon");

    auto cont = cli({"real", "continuity", "--map", "delay", "--at", "zero", "--m0", "2", "--samples", "10", "--json"});
    CHECK(cont.code == ExitOk);
    auto c = cont.j();
    CHECK(c["n0"] == 8);
    CHECK(c["q"] == "1/2^10");
    CHECK(c["passed"] == c["samples"]);

    auto fl = cli({"fleeing", "search", "--property", "threshold:5", "--horizon", "10", "--json"}).j();
    CHECK(fl["critical"] == 5);
    auto none = cli({"fleeing", "search", "--property", "empty", "--horizon", "10", "--json"});
    CHECK(none.code == ExitOk);
    CHECK(none.j()["result"] == "none-below:10");
}

TEST_CASE("drift and logic") {
    auto d = cli({"drift", "run", "--kind", "direct", "--drift", "rational-right", "--terms", "5", "--trace-line",
                  "true:3", "--json"});
    REQUIRE(d.code == ExitOk);
    CHECK(d.j()["terms"] == json::array({"c", "c", "c_3", "c_3", "c_3"}));
    CHECK(cli({"drift", "validate", "--drift", "berlin"}).code == ExitOk);

    auto cs5 = cli({"logic", "sweep", "--schema", "cs5", "--nodes", "2", "--atoms", "1", "--json"});
    CHECK(cs5.code == ExitOk);
    CHECK(cs5.j()["valid"] == false);
    CHECK(cs5.j()["countermodel"]["id"] == "cs5/2n/-,0/p:1/phi=p");
    auto ic1 = cli({"logic", "sweep", "--schema", "ic1", "--nodes", "3", "--atoms", "1", "--json"}).j();
    CHECK(ic1["valid"] == true);
    CHECK(cli({"logic", "suite", "--nodes", "3", "--atoms", "1"}).code == ExitOk);

    TempFile model("cli_model_tmp.json",
                   R"({"nodes":[{"id":"r","parent":null,"atoms":[]},{"id":"a","parent":"r","atoms":["p"]},)"
                   R"({"id":"b","parent":"r","atoms":[]}]})");
    auto ev = cli({"logic", "eval", "--model", model.path, "--at", "r", "--formula", "[1]p | ~[1]p", "--json"});
    CHECK(ev.code == ExitOk);
    CHECK(ev.j()["forces"] == false);
    auto ev2 = cli({"logic", "eval", "--model", model.path, "--at", "a", "--formula", "p", "--json"});
    CHECK(ev2.j()["forces"] == true);
}

TEST_CASE("derivation commands") {
    auto b = cli({"derive", "check", "--bundled", "cambridge_reduced", "--json"});
    CHECK(b.code == ExitOk);
    CHECK(b.j()["verified"] == true);
    CHECK(b.j()["uses_cs5r"] == true);
    CHECK(cli({"derive", "check", "--bundled", "conditional_ks", "--mutate", "--semantic", "3"}).code == ExitOk);
    CHECK(cli({"derive", "check", "--bundled", "conditional_ks_literal"}).code == ExitMismatch);
    CHECK(cli({"derive", "ks"}).code == ExitOk);
    CHECK(cli({"derive", "list"}).code == ExitOk);

    TempFile good("cli_good_tmp.proof", "assert alpha\npremise alpha\nconclude <*>alpha\n"
                                        "1: alpha ; Premise\n2: <*>alpha ; IC3-inst(1)\n");
    CHECK(cli({"derive", "check", good.path}).code == ExitOk);
    TempFile bad("cli_bad_tmp.proof", "assert alpha\nconclude <*>alpha -> alpha\n1: <*>alpha -> alpha ; CS5\n");
    auto r = cli({"derive", "check", bad.path, "--json"});
    CHECK(r.code == ExitMismatch);
    CHECK(r.j()["verified"] == false);
    TempFile garbled("cli_garbled_tmp.proof", "not a script\n");
    CHECK(cli({"derive", "check", garbled.path}).code == ExitUsage);
}

TEST_CASE("replays succeed") {
    for (const char *s : {"vienna", "drift", "ks", "cambridge"}) {
        CAPTURE(s);
        auto r = cli({"replay", s, "--json"});
        CHECK(r.code == ExitOk);
        CHECK(r.j()["pipeline"] == s);
    }
    CHECK(cli({"replay", "nowhere"}).code == ExitUsage);
}

TEST_CASE("usage errors and refusals") {
    CHECK(cli({}).code == ExitUsage);
    CHECK(cli({"pi", "digits"}).code == ExitUsage);
    CHECK(cli({"pi", "digits", "-3"}).code == ExitUsage);
    CHECK(cli({"derive", "check", "no/such/file.proof"}).code == ExitUsage);
    CHECK(cli({"real", "cmp", "--lhs", "nonsense", "--rhs", "zero"}).code == ExitUsage);

    auto huge = cli({"logic", "sweep", "--schema", "ic1", "--nodes", "40"});
    CHECK(huge.code == ExitRefused);
    CHECK(huge.err.find("refused") != std::string::npos);

    TempFile cfg("cli_cfg_tmp.toml", "digits = 100 # small oracle\n");
    CHECK(cli({"--config", cfg.path, "pi", "digits", "200"}).code == ExitRefused);
    CHECK(cli({"--config", cfg.path, "pi", "digits", "100"}).code == ExitOk);
}

TEST_CASE("config precedence") {
    TempFile cfg("cli_prec_tmp.toml", "horizon=7\nseed=3\n");
    auto from_file = cli({"--config", cfg.path, "real", "cmp", "--lhs", "zero", "--rhs", "one", "--json"}).j();
    CHECK(from_file["horizon"] == 7);
    CHECK(from_file["seed"] == 3);
    auto flag = cli({"--config", cfg.path, "--seed", "4", "real", "cmp", "--lhs", "zero", "--rhs", "one", "--horizon",
                     "9", "--json"})
                    .j();
    CHECK(flag["horizon"] == 9);
    CHECK(flag["seed"] == 4);

    TempFile broken("cli_broken_tmp.toml", "horizon=abc\n");
    CHECK(cli({"--config", broken.path, "pi", "digits", "3"}).code == ExitUsage);
}

TEST_CASE("config parsing") {
    auto c = Config::parse("# settings\nhorizon = 12\nnodes=4 # trees\n\natoms=1\ndigits=\"500\"\nseed=0\n");
    CHECK(c.horizon == 12);
    CHECK(c.nodes == 4);
    CHECK(c.atoms == 1);
    CHECK(c.digits == 500);
    CHECK(c.seed == 0);
    auto d = Config::parse("");
    CHECK(d.horizon == 64);
    CHECK(d.nodes == 5);
    CHECK(d.atoms == 2);
    CHECK(d.digits == 0);
    for (const char *bad : {"horizon", "horizon=-1", "horizon=0", "nodes=3x", "colour=3"})
        CHECK_THROWS_AS(Config::parse(bad), std::invalid_argument);
    CHECK_THROWS(Config::load("no/such/config.toml"));
}
