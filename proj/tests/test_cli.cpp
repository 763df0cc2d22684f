#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "oscint/json_io.hpp"
#include "oscint/parse.hpp"
#include "oscint/transfer.hpp"
#include "oscint/verify.hpp"

using namespace oscint;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

std::string data_path(const std::string& name) { return std::string(OSCINT_TEST_DATA_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json load_json(const std::string& name) { return Json::parse(read_file(data_path(name))); }

void check_golden(const Json& report, const std::string& golden_name) {
    const std::string expect = read_file(data_path(golden_name));
    CHECK(report.dump(2) + "\n" == expect);
    std::string err;
    const Json schema = load_json("report_schema.json");
    bool ok = validate_report(report, schema, &err);
    INFO(err);
    CHECK(ok);
}

// Reports assembled exactly the way the CLI assembles them.
Json sublevel_cmd_report(const std::string& phase, const std::string& amplitude) {
    ExpressionAST past = parse_expression(phase);
    ExpressionAST aast = parse_expression(amplitude);
    int dim = std::max(past.dimension, aast.dimension);
    SublevelProblem p;
    p.dimension = dim;
    p.phases.push_back(ast_to_phase(past, dim));
    p.amplitude = ast_to_amplitude(aast, dim);
    MultiPhaseExpansion e = expand_multi_detailed(p);
    return make_report("sublevel", Json{{"dimension", dim}, {"phases", Json::array({phase})}, {"amplitude", amplitude}},
                       sublevel_report(e.combined, &e));
}

} // namespace

TEST_CASE("parse_expression canonical forms") {
    ExpressionAST a = parse_expression("x1^2*x2");
    CHECK(a.dimension == 2);
    REQUIRE(a.terms.size() == 1);
    CHECK(a.terms.begin()->first == std::vector<long>{2, 1});
    CHECK(a.terms.begin()->second == rat(1));

    ExpressionAST b = parse_expression("1 + 3/2*x1*x2^3");
    CHECK(b.dimension == 2);
    REQUIRE(b.terms.size() == 2);
    CHECK(b.terms.at({0, 0}) == rat(1));
    CHECK(b.terms.at({1, 3}) == rat(3, 2));

    // like terms merge; cancellations drop out
    ExpressionAST c = parse_expression("x1 + x1 - 2*x1 + x2");
    CHECK(c.terms.size() == 1);
    CHECK(c.terms.at({0, 1}) == rat(1));

    // whitespace-insensitive
    CHECK(parse_expression("  1+3/2 * x1 * x2 ^ 3 ").terms == b.terms);

    // repeated variables multiply exponents together
    ExpressionAST d = parse_expression("x1*x1^2");
    CHECK(d.terms.begin()->first == std::vector<long>{3});
}

TEST_CASE("parse_expression error positions") {
    try {
        parse_expression("x1^-1");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code() == "negative-exponent-forbidden");
        CHECK(e.column() == 3);
    }
    CHECK(parse_expression("x1^-1", true).terms.begin()->first == std::vector<long>{-1});

    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("x0"), ParseError);
    CHECK_THROWS_AS(parse_expression("x1^"), ParseError);
    CHECK_THROWS_AS(parse_expression("x1 + "), ParseError);
    CHECK_THROWS_AS(parse_expression("y1"), ParseError);
}

TEST_CASE("ast conversions validate their contracts") {
    CHECK_THROWS_WITH_AS(ast_to_phase(parse_expression("1 + x1"), 1), doctest::Contains("not-a-monomial"),
                         EngineError);
    CHECK_THROWS_WITH_AS(ast_to_phase(parse_expression("0*x1"), 1), doctest::Contains("not-a-monomial"), EngineError);
    CHECK_THROWS_WITH_AS(ast_to_ratio(parse_expression("x1*x1^-1", true), 1), doctest::Contains("not-a-monomial"),
                         EngineError);
    MonomialPhase p = ast_to_phase(parse_expression("3/4*x2^2"), 2);
    CHECK(p.coefficient == rat(3, 4));
    CHECK(p.exponents == MultiIndex({0, 2}));
}

TEST_CASE("pretty form reparses to the identical sum") {
    std::mt19937 rng(5551212);
    std::uniform_int_distribution<int> nterms(0, 5), kdist(0, 3);
    std::uniform_int_distribution<long> snum(-4, 12), cnum(-9, 9), cden(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        LogPowerSum g;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) g.add_term(Rational(snum(rng), 4), kdist(rng), Rational(cnum(rng), cden(rng)));
        CHECK(log_power_sum_from_pretty(pretty(g), "t") == g);
        CHECK(log_power_sum_from_pretty(pretty(g, "t/4"), "t/4") == g);
    }
}

TEST_CASE("canonical JSON germ terms round-trip") {
    LogPowerSum g;
    g.add_term(rat(1, 2), 0, rat(22, 7));
    g.add_term(rat(3), 2, rat(-5));
    CHECK(germ_terms_from_json(germ_terms_json(g)) == g);
}

TEST_CASE("golden: sublevel single phase") { check_golden(sublevel_cmd_report("x1*x2", "1"), "golden_sublevel.json"); }

TEST_CASE("golden: sublevel multi phase with breakdown") {
    ExpressionAST p1 = parse_expression("x1");
    ExpressionAST p2 = parse_expression("x2");
    SublevelProblem p;
    p.dimension = 2;
    p.phases = {ast_to_phase(p1, 2), ast_to_phase(p2, 2)};
    p.amplitude = PolynomialAmplitude::constant(2, rat(1));
    MultiPhaseExpansion e = expand_multi_detailed(p);
    Json report = make_report("sublevel", Json{{"dimension", 2}, {"phases", Json::array({"x1", "x2"})}, {"amplitude", "1"}},
                              sublevel_report(e.combined, &e));
    check_golden(report, "golden_sublevel_multi.json");
}

TEST_CASE("golden: oscillatory series") {
    SublevelProblem p;
    p.dimension = 1;
    p.phases = {ast_to_phase(parse_expression("x1^2"), 1)};
    p.amplitude = PolynomialAmplitude::constant(1, rat(1));
    AsymptoticSeries s = oscillatory_expansion(expand_multi(p), rat(1000000));
    Json report = make_report("oscillatory",
                              Json{{"dimension", 1}, {"phases", Json::array({"x1^2"})}, {"amplitude", "1"}, {"order_cap", "1000000"}},
                              series_report(s));
    check_golden(report, "golden_oscillatory.json");
}

TEST_CASE("golden: laplace series") {
    SublevelProblem p;
    p.dimension = 2;
    p.phases = {ast_to_phase(parse_expression("x1*x2"), 2)};
    p.amplitude = PolynomialAmplitude::constant(2, rat(1));
    AsymptoticSeries s = laplace_expansion(expand_multi(p), rat(1000000));
    Json report = make_report("laplace",
                              Json{{"dimension", 2}, {"phases", Json::array({"x1*x2"})}, {"amplitude", "1"}, {"order_cap", "1000000"}},
                              series_report(s));
    check_golden(report, "golden_laplace.json");
}

TEST_CASE("golden: poles") {
    SublevelProblem p;
    p.dimension = 2;
    p.phases = {ast_to_phase(parse_expression("x1*x2"), 2)};
    p.amplitude = PolynomialAmplitude::constant(2, rat(1));
    Json report = make_report("poles", Json{{"dimension", 2}, {"phases", Json::array({"x1*x2"})}, {"amplitude", "1"}},
                              poles_report(mellin_meromorphic(expand_multi(p))));
    check_golden(report, "golden_poles.json");
}

TEST_CASE("golden: decompose") {
    std::vector<LaurentMonomial> ratios{ast_to_ratio(parse_expression("x1^2*x2^-1", true), 2),
                                        ast_to_ratio(parse_expression("x2^2*x1^-1", true), 2)};
    Json report = make_report("decompose", Json{{"ratios", Json::array({"x1^2*x2^-1", "x2^2*x1^-1"})}, {"dimension", 2}},
                              cells_report(decompose_domain(ratios)));
    check_golden(report, "golden_decompose.json");
}

TEST_CASE("golden: verify") {
    SublevelProblem p;
    p.dimension = 2;
    p.phases = {ast_to_phase(parse_expression("x1*x2"), 2)};
    p.amplitude = PolynomialAmplitude::constant(2, rat(1));
    QuadratureSpec spec;
    spec.method = QuadMethod::monte_carlo;
    spec.samples = 100000;
    spec.seed = 42;
    const double t = 0.01;
    SublevelFunction f = expand_multi(p);
    NumericResult r = numeric_sublevel(p, t, spec);
    bool pass = std::abs(r.value - f.value(t)) <= 3.0 * r.error;
    Json report = make_report("verify", Json{{"dimension", 2}, {"phases", Json::array({"x1*x2"})}, {"amplitude", "1"}},
                              verify_report("sublevel t=1/100", f.value(t), r.value, r.error, pass));
    check_golden(report, "golden_verify.json");
}

#ifdef OSCINT_CLI_PATH
namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(OSCINT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("cli end-to-end: json output matches the golden file") {
    CliResult r = run_cli("sublevel --phase x1*x2 --amplitude 1 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(data_path("golden_sublevel.json")));
}

TEST_CASE("cli end-to-end: text output and exit codes") {
    CliResult text = run_cli("sublevel --phase x1*x2 --format text");
    CHECK(text.exit_code == 0);
    CHECK(text.output == "t - t*ln(t)  (valid on (0,1); total mass 1)\n");

    // the displayed expansion reparses to the exact germ
    const std::string display = text.output.substr(0, text.output.find("  (valid"));
    LogPowerSum expect;
    expect.add_term(rat(1), 0, rat(1));
    expect.add_term(rat(1), 1, rat(-1));
    CHECK(log_power_sum_from_pretty(display, "t") == expect);

    CHECK(run_cli("sublevel --phase x1^-1").exit_code == 2);
    CHECK(run_cli("sublevel --phase 'x1 + x2'").exit_code == 2);
    CHECK(run_cli("verify --phase x1 --lambda 200000 --format text").exit_code == 3);
    CHECK(run_cli("poles --phase 2*x1 --format text").exit_code == 2); // nonunit constant
}
#endif
