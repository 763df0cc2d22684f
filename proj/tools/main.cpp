#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "oscint/json_io.hpp"
#include "oscint/parse.hpp"
#include "oscint/transfer.hpp"
#include "oscint/verify.hpp"

namespace {

using namespace oscint;

struct CommonArgs {
    std::vector<std::string> phases;
    std::string amplitude = "1";
    std::string ratios;
    std::string order = "1000000"; // include every exponent by default
    std::string format = "text";
    std::uint64_t seed = 1;
    long samples = 1000000;
    std::string t, lambda, tau;
    std::string method = "monte-carlo";
    double tolerance = 1e-8;
};

void add_problem_flags(CLI::App* cmd, CommonArgs& args, bool need_phase) {
    auto* p = cmd->add_option("--phase", args.phases, "phase monomial, e.g. \"x1^2*x2\" (repeatable)");
    if (need_phase) p->required();
    cmd->add_option("--amplitude", args.amplitude, "polynomial amplitude (default 1)");
    cmd->add_option("--format", args.format, "text|json")->check(CLI::IsMember({"text", "json"}));
}

struct ParsedProblem {
    SublevelProblem problem;
    Json echo;
};

ParsedProblem build_problem(const CommonArgs& args) {
    std::vector<ExpressionAST> phase_asts;
    int dim = 0;
    for (const auto& s : args.phases) {
        phase_asts.push_back(parse_expression(s));
        dim = std::max(dim, phase_asts.back().dimension);
    }
    ExpressionAST amp_ast = parse_expression(args.amplitude);
    dim = std::max(dim, amp_ast.dimension);
    if (dim == 0) throw input_error("no-variables", "problem involves no variables x1..xn");

    ParsedProblem out;
    out.problem.dimension = dim;
    for (const auto& ast : phase_asts) out.problem.phases.push_back(ast_to_phase(ast, dim));
    out.problem.amplitude = ast_to_amplitude(amp_ast, dim);
    out.problem.validate();
    out.echo = Json{{"dimension", dim}, {"phases", args.phases}, {"amplitude", args.amplitude}};
    return out;
}

std::string series_text(const AsymptoticSeries& series) {
    const std::string var = series.variable == SeriesVariable::lambda ? "lambda" : "tau";
    std::ostringstream os;
    for (const auto& [key, c] : series.terms) {
        char buf[64];
        if (c.imag() == 0.0)
            std::snprintf(buf, sizeof buf, "%.15g", c.real());
        else
            std::snprintf(buf, sizeof buf, "(%.15g%+.15gi)", c.real(), c.imag());
        os << buf << " * " << var << "^(-" << rat_to_string(key.s) << ")";
        if (key.k > 0) {
            os << " * ln(" << var << ")";
            if (key.k > 1) os << "^" << key.k;
        }
        os << "\n";
    }
    if (series.terms.empty()) os << "0\n";
    return os.str();
}

void emit(const std::string& command, const Json& echo, const Json& result, const std::string& format,
          const std::string& text) {
    if (format == "json")
        std::cout << make_report(command, echo, result).dump(2) << "\n";
    else
        std::cout << text << "\n";
}

int run_sublevel(const CommonArgs& args) {
    ParsedProblem in = build_problem(args);
    MultiPhaseExpansion expansion = expand_multi_detailed(in.problem);
    const SublevelFunction& f = expansion.combined;
    std::string label = f.scale == 1 ? "t" : "t/" + rat_to_string(f.scale);
    std::ostringstream text;
    text << pretty(f.germ, label) << "  (valid on (0," << rat_to_string(f.threshold) << "); total mass "
         << rat_to_string(f.total_mass) << ")";
    emit("sublevel", in.echo, sublevel_report(f, &expansion), args.format, text.str());
    return 0;
}

int run_series(const std::string& command, const CommonArgs& args) {
    ParsedProblem in = build_problem(args);
    SublevelFunction f = expand_multi(in.problem);
    Rational cap = parse_rational(args.order);
    AsymptoticSeries series = command == "oscillatory" ? oscillatory_expansion(f, cap) : laplace_expansion(f, cap);
    Json echo = in.echo;
    echo["order_cap"] = rat_to_string(cap);
    emit(command, echo, series_report(series), args.format, series_text(series));
    return 0;
}

int run_poles(const CommonArgs& args) {
    ParsedProblem in = build_problem(args);
    SublevelFunction f = expand_multi(in.problem);
    std::vector<PoleDatum> poles = mellin_meromorphic(f);
    std::ostringstream text;
    for (const auto& p : poles) {
        text << "pole at z = " << rat_to_string(p.location) << " (order " << p.order << "): principal part [";
        for (std::size_t j = 0; j < p.principal_part.size(); ++j) {
            if (j) text << ", ";
            text << rat_to_string(p.principal_part[j]);
        }
        text << "]\n";
    }
    if (poles.empty()) text << "no poles\n";
    emit("poles", in.echo, poles_report(poles), args.format, text.str());
    return 0;
}

int run_decompose(const CommonArgs& args) {
    std::vector<std::string> pieces;
    std::string current;
    for (char c : args.ratios) {
        if (c == ',') {
            pieces.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) pieces.push_back(current);
    if (pieces.empty()) throw input_error("empty-input", "--ratios expects a comma-separated list");

    std::vector<ExpressionAST> asts;
    int dim = 0;
    for (const auto& s : pieces) {
        asts.push_back(parse_expression(s, /*allow_negative_exponents=*/true));
        dim = std::max(dim, asts.back().dimension);
    }
    std::vector<LaurentMonomial> ratios;
    for (const auto& ast : asts) ratios.push_back(ast_to_ratio(ast, dim));

    std::vector<ConeCell> cells = decompose_domain(ratios);
    std::ostringstream text;
    text << cells.size() << " cells\n";
    for (const auto& cell : cells) {
        text << "  pattern (";
        for (std::size_t i = 0; i < cell.sign_pattern.size(); ++i) {
            if (i) text << ",";
            text << (cell.sign_pattern[i] == RatioSign::below ? "below" : "above");
        }
        text << ")  N=" << cell.map.N << "  eps=[";
        for (int r = 0; r < cell.map.eps.size(); ++r) {
            if (r) text << "; ";
            for (int c = 0; c < cell.map.eps.size(); ++c) {
                if (c) text << " ";
                text << cell.map.eps(r, c);
            }
        }
        text << "]\n";
    }
    Json echo{{"ratios", pieces}, {"dimension", dim}};
    emit("decompose", echo, cells_report(cells), args.format, text.str());
    return 0;
}

int run_verify(const CommonArgs& args) {
    int kinds = (!args.t.empty()) + (!args.lambda.empty()) + (!args.tau.empty());
    if (kinds != 1)
        throw input_error("ambiguous-verify", "give exactly one of --t (sublevel), --lambda, --tau");

    ParsedProblem in = build_problem(args);
    QuadratureSpec spec;
    spec.samples = args.samples;
    spec.seed = args.seed;
    spec.tolerance = args.tolerance;
    if (args.method == "monte-carlo") spec.method = QuadMethod::monte_carlo;
    else if (args.method == "quasi-monte-carlo") spec.method = QuadMethod::quasi_monte_carlo;
    else if (args.method == "adaptive-nested") spec.method = QuadMethod::adaptive;
    else if (args.method == "tensor-gauss") spec.method = QuadMethod::tensor_gauss;
    else throw input_error("bad-method", "unknown quadrature method '" + args.method + "'");

    std::string case_name;
    double symbolic = 0.0, numeric = 0.0, sigma = 0.0;
    bool pass = false;

    if (!args.t.empty()) {
        const double t = to_double(parse_rational(args.t));
        SublevelFunction f = expand_multi(in.problem);
        symbolic = f.value(t);
        NumericResult r = numeric_sublevel(in.problem, t, spec);
        numeric = r.value;
        sigma = r.error;
        const double tol = spec.method == QuadMethod::adaptive ? std::max(1e-8, 10 * r.error) : 3 * r.error;
        pass = std::abs(numeric - symbolic) <= std::max(tol, 1e-12);
        case_name = "sublevel t=" + args.t;
    } else if (!args.lambda.empty()) {
        const double lambda = to_double(parse_rational(args.lambda));
        SublevelFunction f = expand_multi(in.problem);
        AsymptoticSeries series = oscillatory_expansion(f, parse_rational(args.order));
        const std::complex<double> sym = series.evaluate(lambda);
        const std::complex<double> num = numeric_oscillatory(in.problem, lambda, spec);
        symbolic = std::abs(sym);
        numeric = std::abs(num);
        sigma = 0.0;
        // Asymptotic agreement: the gap is the first omitted correction.
        pass = std::abs(sym - num) <= 0.1 * std::abs(num) + 1e-12;
        case_name = "oscillatory lambda=" + args.lambda;
    } else {
        const double tau = to_double(parse_rational(args.tau));
        SublevelFunction f = expand_multi(in.problem);
        AsymptoticSeries series = laplace_expansion(f, parse_rational(args.order));
        symbolic = series.evaluate(tau).real();
        numeric = numeric_laplace(in.problem, tau, spec);
        sigma = 0.0;
        pass = std::abs(symbolic - numeric) <= 0.1 * std::abs(numeric) + 1e-12;
        case_name = "laplace tau=" + args.tau;
    }

    Json result = verify_report(case_name, symbolic, numeric, sigma, pass);
    std::ostringstream text;
    text << case_name << ": symbolic=" << symbolic << " numeric=" << numeric << " abs_err="
         << std::abs(symbolic - numeric) << " sigma=" << sigma << " verdict=" << (pass ? "pass" : "fail");
    emit("verify", in.echo, result, args.format, text.str());
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact asymptotics of sublevel volumes, oscillatory and Laplace integrals for monomial phases"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* sub = app.add_subcommand("sublevel", "exact sublevel-volume expansion");
    add_problem_flags(sub, args, true);

    auto* osc = app.add_subcommand("oscillatory", "oscillatory integral asymptotics");
    add_problem_flags(osc, args, true);
    osc->add_option("--order", args.order, "include exponents up to this rational cap");

    auto* lap = app.add_subcommand("laplace", "Laplace integral asymptotics");
    add_problem_flags(lap, args, true);
    lap->add_option("--order", args.order, "include exponents up to this rational cap");

    auto* pol = app.add_subcommand("poles", "meromorphic continuation poles");
    add_problem_flags(pol, args, true);

    auto* dec = app.add_subcommand("decompose", "cone decomposition of the unit cube");
    dec->add_option("--ratios", args.ratios, "comma-separated monomial ratios")->required();
    dec->add_option("--format", args.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* ver = app.add_subcommand("verify", "numeric cross-check of a symbolic result");
    add_problem_flags(ver, args, true);
    ver->add_option("--t", args.t, "sublevel threshold (rational)");
    ver->add_option("--lambda", args.lambda, "oscillatory parameter (rational)");
    ver->add_option("--tau", args.tau, "Laplace parameter (rational)");
    ver->add_option("--method", args.method, "monte-carlo|quasi-monte-carlo|adaptive-nested|tensor-gauss");
    ver->add_option("--samples", args.samples, "Monte Carlo sample count");
    ver->add_option("--seed", args.seed, "random seed");
    ver->add_option("--tolerance", args.tolerance, "quadrature tolerance");
    ver->add_option("--order", args.order, "series order cap for the symbolic side");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub->parsed()) return run_sublevel(args);
        if (osc->parsed()) return run_series("oscillatory", args);
        if (lap->parsed()) return run_series("laplace", args);
        if (pol->parsed()) return run_poles(args);
        if (dec->parsed()) return run_decompose(args);
        if (ver->parsed()) return run_verify(args);
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorCode::budget ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
