#include <doctest.h>

#include <sstream>

#include "qmod/cli.hpp"
#include "qmod/io.hpp"

using namespace qmod;

namespace {

std::string fixture(const std::string& name) {
    return std::string(QMOD_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("parse a minimal quiver file") {
    QuiverFile qf = parse_quiver_file(R"({
        "vertices": ["x", "y"],
        "arrows": [{"name": "a", "tail": "x", "head": "y"}]
    })");
    CHECK(qf.quiver.vertex_count() == 2);
    CHECK(qf.quiver.arrow_count() == 1);
    CHECK_FALSE(qf.symmetric.has_value());
}

TEST_CASE("arrow referencing an unknown vertex names the arrow") {
    try {
        parse_quiver_file(R"({
            "vertices": ["x"],
            "arrows": [{"name": "bad", "tail": "x", "head": "nope"}]
        })");
        FAIL("expected FileParseError");
    } catch (const FileParseError& e) {
        CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
}

TEST_CASE("the supermixed fixture loads and validates") {
    QuiverFile qf = load_quiver_file(fixture("example63.quiver"));
    CHECK(qf.quiver.vertex_count() == 5);
    CHECK(qf.symmetric.has_value());
}

TEST_CASE("corrupt symmetric block is rejected at parse time") {
    CHECK_THROWS_AS(parse_quiver_file(R"({
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "tail": "1", "head": "2"}],
        "symmetric": {
            "vertex_involution": {"1": "1", "2": "2"},
            "arrow_involution": {"a": "a"}
        }
    })"),
                    FileParseError);
}

TEST_CASE("rational strings") {
    CHECK(rational_to_string(Rational(5)) == "5");
    CHECK(rational_to_string(Rational(-3, 7)) == "-3/7");
    CHECK(rational_from_string("-3/7") == Rational(-3, 7));
    CHECK(rational_from_string("12") == Rational(12));
}

TEST_CASE("series json round-trip") {
    TruncatedSeries s(6);
    s.set_coeff(0, 1);
    s.set_coeff(2, Rational(7, 3));
    s.set_coeff(6, -2);
    nlohmann::json j = series_to_json(s);
    CHECK(j.dump() == R"([[0,"1"],[2,"7/3"],[6,"-2"]])");
    CHECK(series_from_json(j, 6) == s);

    TruncatedSeries one_plus_t2(4);
    one_plus_t2.set_coeff(0, 1);
    one_plus_t2.set_coeff(2, 1);
    CHECK(series_to_json(one_plus_t2).dump() == R"([[0,"1"],[2,"1"]])");
}

TEST_CASE("hn type formatting") {
    HNType t{{DimensionVector({1, 0}), DimensionVector({0, 1})}};
    CHECK(hn_type_to_text(t) == "(1,0) > (0,1)");
    CHECK(hn_type_from_json(hn_type_to_json(t)) == t);
}

TEST_CASE("census report round-trips through json") {
    Quiver q = Quiver::make({"1", "2"}, {{"a", "1", "2"}});
    CensusReport r = strata_census(q, DimensionVector({1, 1}), StabilityParam({1, -1}), 2);
    CensusReport back = census_from_json(census_to_json(r));
    CHECK(back.field == r.field);
    CHECK(back.dim == r.dim);
    CHECK(back.empirical == r.empirical);
    CHECK(back.predicted == r.predicted);
    CHECK(back.total == r.total);
    CHECK(back.match == r.match);
    CHECK(census_to_json(back) == census_to_json(r));
}

TEST_CASE("cli: poincare matches the hn-recursion example") {
    auto r = run({"poincare", "-q", fixture("kronecker2.quiver"), "--dim", "1,1", "--theta",
                  "1,-1", "--truncate", "6", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out == "[[0,\"1\"],[2,\"2\"],[4,\"2\"],[6,\"2\"]]\n");
}

TEST_CASE("cli: census reports a match") {
    auto r = run({"census", "-q", fixture("kronecker1.quiver"), "--dim", "1,1", "--theta",
                  "1,-1", "--field", "2", "--format", "json"});
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["match"] == true);
}

TEST_CASE("cli: flow converges on the nilpotent fixture") {
    auto r = run({"flow", "-q", fixture("loop.quiver"), "--dim", "2", "--theta", "0",
                  "--input", fixture("nilpotent.rep"), "--tol", "1e-18", "--max-iters",
                  "100000", "--format", "json"});
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["converged"] == true);
    CHECK(std::stod(j["limit_norm"].get<std::string>()) < 1e-6);
}

TEST_CASE("cli: identical invocations give byte-identical output") {
    std::vector<std::string> argv = {"moduli", "-q", fixture("kronecker3.quiver"),
                                     "--truncate", "12", "--format", "json"};
    auto a = run(argv);
    auto b = run(argv);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    std::vector<std::string> argv2 = {"census", "-q", fixture("kronecker2.quiver"), "--dim",
                                      "1,1", "--theta", "1,-1", "--field", "3"};
    CHECK(run(argv2).out == run(argv2).out);
}

TEST_CASE("cli: exit codes") {
    CHECK(run({"frobnicate"}).code == 2);                    // unknown command
    CHECK(run({"poincare", "-q", "missing.quiver"}).code == 2); // missing required flag
    auto budget = run({"census", "-q", fixture("loop.quiver"), "--dim", "4", "--theta", "0",
                       "--field", "3", "--budget", "100"});
    CHECK(budget.code == 3);
    auto parse = run({"validate", "-q", fixture("nilpotent.rep")});
    CHECK(parse.code == 1);
}

TEST_CASE("cli: validate accepts the fixtures") {
    for (const char* f : {"kronecker1.quiver", "kronecker2.quiver", "kronecker3.quiver",
                          "loop.quiver", "example63.quiver"})
        CHECK(run({"validate", "-q", fixture(f)}).code == 0);
}

TEST_CASE("cli: defaults from the quiver file are honored") {
    auto r = run({"poincare", "-q", fixture("kronecker1.quiver"), "--truncate", "8",
                  "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out == "[[0,\"1\"],[2,\"1\"],[4,\"1\"],[6,\"1\"],[8,\"1\"]]\n");
}

TEST_CASE("ff rep files parse and validate shapes") {
    Quiver q = Quiver::make({"1", "2"}, {{"a", "1", "2"}});
    FFRep r = parse_ff_rep(q, R"({"field": 3, "matrices": {"a": [[2, 1]]}})");
    CHECK(r.dim == DimensionVector({2, 1}));
    CHECK(r.mats[0].at(0, 0) == 2);
    CHECK_THROWS_AS(parse_ff_rep(q, R"({"field": 3, "matrices": {"zz": [[1]]}})"),
                    FileParseError);
    // negative entries reduce mod q
    FFRep neg = parse_ff_rep(q, R"({"field": 5, "matrices": {"a": [[-1]]}})");
    CHECK(neg.mats[0].at(0, 0) == 4);
}

TEST_CASE("complex rep files parse [re, im] pairs") {
    Quiver q = Quiver::make({"1"}, {{"a", "1", "1"}});
    CRep r = parse_complex_rep(q, R"({"field": "C", "matrices": {"a": [[[0, 1]]]}})");
    CHECK(r.mats[0](0, 0) == std::complex<double>(0, 1));
}
