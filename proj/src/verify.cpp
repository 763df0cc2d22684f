#include "oscint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace oscint {

namespace {

// SplitMix64: tiny, seedable, and bit-stable across platforms, which the
// determinism contract (fixed seed => identical output) depends on.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

double pairwise_sum_range(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

// ---- sublevel: Monte Carlo and quasi-Monte Carlo ----

double sample_value(const SublevelProblem& p, const std::vector<double>& x, double t) {
    for (const auto& phase : p.phases)
        if (!(phase.evaluate(x) < t)) return 0.0;
    return p.amplitude.evaluate(x);
}

NumericResult mc_sublevel(const SublevelProblem& p, double t, const QuadratureSpec& spec) {
    SplitMix64 rng(spec.seed);
    const long N = spec.samples;
    std::vector<double> vals(static_cast<std::size_t>(N));
    std::vector<double> sqrs(static_cast<std::size_t>(N));
    std::vector<double> x(static_cast<std::size_t>(p.dimension));
    for (long i = 0; i < N; ++i) {
        for (auto& xi : x) xi = rng.uniform01();
        double h = sample_value(p, x, t);
        vals[static_cast<std::size_t>(i)] = h;
        sqrs[static_cast<std::size_t>(i)] = h * h;
    }
    const double mean = pairwise_sum(vals) / static_cast<double>(N);
    const double mean2 = pairwise_sum(sqrs) / static_cast<double>(N);
    const double var = std::max(0.0, mean2 - mean * mean);
    NumericResult r;
    r.value = mean;
    r.error = std::sqrt(var / static_cast<double>(N));
    return r;
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
    }
    return r;
}

NumericResult qmc_sublevel(const SublevelProblem& p, double t, const QuadratureSpec& spec) {
    static const int bases[] = {2, 3, 5, 7};
    if (p.dimension > 4) throw budget_error("dimension-too-large", "quasi-Monte Carlo supports n <= 4");
    const int R = 8; // Cranley-Patterson replicates
    const long per = std::max<long>(1, spec.samples / R);
    SplitMix64 rng(spec.seed);
    std::vector<double> means;
    std::vector<double> x(static_cast<std::size_t>(p.dimension));
    for (int rep = 0; rep < R; ++rep) {
        std::vector<double> shift(static_cast<std::size_t>(p.dimension));
        for (auto& s : shift) s = rng.uniform01();
        std::vector<double> vals(static_cast<std::size_t>(per));
        for (long i = 0; i < per; ++i) {
            for (int d = 0; d < p.dimension; ++d) {
                double u = halton(static_cast<std::uint64_t>(i) + 1, bases[d]) + shift[static_cast<std::size_t>(d)];
                x[static_cast<std::size_t>(d)] = u - std::floor(u);
            }
            vals[static_cast<std::size_t>(i)] = sample_value(p, x, t);
        }
        means.push_back(pairwise_sum(vals) / static_cast<double>(per));
    }
    NumericResult r;
    r.value = pairwise_sum(means) / R;
    double ss = 0.0;
    for (double m : means) ss += (m - r.value) * (m - r.value);
    r.error = std::sqrt(ss / (R - 1) / R);
    return r;
}

// ---- sublevel: iterated adaptive quadrature ----
//
// Variables are integrated outermost-first; the innermost variable has an
// exact polynomial antiderivative up to the region bound
//   u(x') = min(1, min_l (t / (c_l prod_{i<n} x_i^{m_li}))^{1/m_ln}),
// phases with m_ln = 0 acting as indicator constraints.

struct IteratedIntegrand {
    const SublevelProblem& p;
    double t;
    std::vector<double> x; // partial point, coordinates 0..level-1 set

    double inner_value() {
        const int n = p.dimension;
        double upper = 1.0;
        for (const auto& phase : p.phases) {
            double partial = to_double(phase.coefficient);
            for (int i = 0; i + 1 < n; ++i) {
                long e = phase.exponents[i];
                if (e > 0) partial *= std::pow(x[static_cast<std::size_t>(i)], static_cast<double>(e));
            }
            long en = phase.exponents[n - 1];
            if (en == 0) {
                if (!(partial < t)) return 0.0;
            } else {
                double bound = std::pow(t / partial, 1.0 / static_cast<double>(en));
                upper = std::min(upper, bound);
            }
        }
        if (upper <= 0.0) return 0.0;
        // int_0^{upper} amplitude(x', y) dy exactly per term
        double acc = 0.0;
        for (const auto& [alpha, c] : p.amplitude.terms()) {
            double v = to_double(c);
            for (int i = 0; i + 1 < p.dimension; ++i) {
                long e = alpha[i];
                if (e > 0) v *= std::pow(x[static_cast<std::size_t>(i)], static_cast<double>(e));
            }
            long en = alpha[p.dimension - 1];
            acc += v * std::pow(upper, static_cast<double>(en + 1)) / static_cast<double>(en + 1);
        }
        return acc;
    }

    double integrate_level(int level, double tol, double* err_acc) {
        if (level == p.dimension - 1) return inner_value();
        // Exact kink locations for the outermost variable: bounds crossing 1.
        std::vector<double> cuts{0.0, 1.0};
        if (level == 0) {
            for (const auto& phase : p.phases) {
                long e0 = phase.exponents[0];
                if (e0 > 0) {
                    double c = to_double(phase.coefficient);
                    double xstar = std::pow(t / c, 1.0 / static_cast<double>(e0));
                    if (xstar > 0.0 && xstar < 1.0) cuts.push_back(xstar);
                }
            }
            std::sort(cuts.begin(), cuts.end());
        }
        auto f = [&](double xi) {
            x[static_cast<std::size_t>(level)] = xi;
            return integrate_level(level + 1, tol, err_acc);
        };
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            total += adaptive_integrate(f, cuts[i], cuts[i + 1], tol / static_cast<double>(cuts.size() - 1), err_acc);
        return total;
    }
};

NumericResult adaptive_sublevel(const SublevelProblem& p, double t, const QuadratureSpec& spec) {
    if (p.dimension > 4) throw budget_error("dimension-too-large", "adaptive sublevel quadrature supports n <= 4");
    IteratedIntegrand it{p, t, std::vector<double>(static_cast<std::size_t>(p.dimension))};
    NumericResult r;
    if (p.dimension == 1) {
        r.value = it.inner_value();
        r.error = 0.0;
        return r;
    }
    double err = 0.0;
    r.value = it.integrate_level(0, spec.tolerance, &err);
    r.error = err;
    return r;
}

} // namespace

void QuadratureSpec::validate() const {
    if ((method == QuadMethod::monte_carlo || method == QuadMethod::quasi_monte_carlo) && samples < 1000)
        throw input_error("too-few-samples", "Monte Carlo methods need at least 1000 samples");
    if (!(tolerance > 0.0) || tolerance > 1e-2)
        throw input_error("bad-tolerance", "tolerance must lie in (0, 1e-2]");
}

double pairwise_sum(const std::vector<double>& values) {
    return values.empty() ? 0.0 : pairwise_sum_range(values.data(), values.size());
}

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        // Newton iteration on P_order from the Chebyshev initial guess.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

double gauss_on_interval(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> vals(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) vals[i] = f(mid + half * rule.nodes[i]);
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) acc += rule.weights[i] * vals[i];
    return acc * half;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
                    double* err_acc) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_on_interval(f, a, mid, 10);
    const double right = gauss_on_interval(f, mid, b, 10);
    const double diff = std::abs(left + right - whole);
    if (diff < tol || depth >= 48) {
        if (err_acc) *err_acc += diff;
        return left + right;
    }
    return adaptive_rec(f, a, mid, left, tol * 0.5, depth + 1, err_acc) +
           adaptive_rec(f, mid, b, right, tol * 0.5, depth + 1, err_acc);
}

} // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol, double* error_acc) {
    if (!(b > a)) return 0.0;
    return adaptive_rec(f, a, b, gauss_on_interval(f, a, b, 10), tol, 0, error_acc);
}

NumericResult numeric_sublevel(const SublevelProblem& problem, double t, const QuadratureSpec& spec) {
    problem.validate();
    spec.validate();
    if (!(t > 0.0)) throw input_error("bad-threshold", "t must be positive");
    switch (spec.method) {
        case QuadMethod::monte_carlo: return mc_sublevel(problem, t, spec);
        case QuadMethod::quasi_monte_carlo: return qmc_sublevel(problem, t, spec);
        case QuadMethod::adaptive: return adaptive_sublevel(problem, t, spec);
        case QuadMethod::tensor_gauss:
            throw input_error("unsupported-method", "tensor Gauss rules do not resolve sublevel indicator sets");
    }
    throw invariant_error("bad-method", "unreachable");
}

std::complex<double> numeric_oscillatory(const SublevelProblem& problem, double lambda, const QuadratureSpec& spec) {
    problem.validate();
    spec.validate();
    if (problem.phases.size() != 1)
        throw unsupported_error("multi-phase-numeric", "oscillatory quadrature handles a single phase");
    if (problem.dimension > 2) throw budget_error("dimension-too-large", "oscillatory quadrature supports n <= 2");
    if (lambda > 1e5) throw budget_error("lambda-too-large", "oscillatory quadrature budget ends at lambda = 1e5");
    const MonomialPhase& phase = problem.phases.front();
    const double c = to_double(phase.coefficient);
    const int n = problem.dimension;

    // Panels per axis proportional to the per-axis oscillation rate
    // lambda * c * m_i, about 2 radians of phase sweep per panel.
    const int order = 16;
    std::vector<long> panels(static_cast<std::size_t>(n));
    long total_cells = 1;
    for (int i = 0; i < n; ++i) {
        double rate = std::abs(lambda) * c * static_cast<double>(phase.exponents[i]);
        panels[static_cast<std::size_t>(i)] = std::max<long>(16, static_cast<long>(std::ceil(0.5 * rate)));
        total_cells *= panels[static_cast<std::size_t>(i)];
    }
    if (total_cells > (1L << 27) / (order * order))
        throw budget_error("lambda-too-large", "panel budget exceeded at this lambda and dimension");

    const GaussRule& rule = gauss_rule(order);
    std::vector<double> re, im;
    std::vector<double> x(static_cast<std::size_t>(n));
    if (n == 1) {
        re.reserve(static_cast<std::size_t>(panels[0]));
        im.reserve(static_cast<std::size_t>(panels[0]));
        const double h = 1.0 / static_cast<double>(panels[0]);
        for (long p = 0; p < panels[0]; ++p) {
            const double a = p * h, mid = a + 0.5 * h, half = 0.5 * h;
            double sr = 0.0, si = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                x[0] = mid + half * rule.nodes[q];
                const double ph = lambda * phase.evaluate(x);
                const double amp = problem.amplitude.evaluate(x) * rule.weights[q];
                sr += amp * std::cos(ph);
                si += amp * std::sin(ph);
            }
            re.push_back(sr * half);
            im.push_back(si * half);
        }
    } else {
        const double hx = 1.0 / static_cast<double>(panels[0]);
        const double hy = 1.0 / static_cast<double>(panels[1]);
        re.reserve(static_cast<std::size_t>(total_cells));
        im.reserve(static_cast<std::size_t>(total_cells));
        for (long px = 0; px < panels[0]; ++px) {
            for (long py = 0; py < panels[1]; ++py) {
                const double ax = px * hx, ay = py * hy;
                double sr = 0.0, si = 0.0;
                for (std::size_t qx = 0; qx < rule.nodes.size(); ++qx) {
                    x[0] = ax + 0.5 * hx * (1.0 + rule.nodes[qx]);
                    for (std::size_t qy = 0; qy < rule.nodes.size(); ++qy) {
                        x[1] = ay + 0.5 * hy * (1.0 + rule.nodes[qy]);
                        const double w = rule.weights[qx] * rule.weights[qy];
                        const double ph = lambda * phase.evaluate(x);
                        const double amp = problem.amplitude.evaluate(x) * w;
                        sr += amp * std::cos(ph);
                        si += amp * std::sin(ph);
                    }
                }
                re.push_back(sr * 0.25 * hx * hy);
                im.push_back(si * 0.25 * hx * hy);
            }
        }
    }
    return {pairwise_sum(re), pairwise_sum(im)};
}

double numeric_laplace(const SublevelProblem& problem, double tau, const QuadratureSpec& spec) {
    problem.validate();
    spec.validate();
    if (problem.phases.size() != 1)
        throw unsupported_error("multi-phase-numeric", "Laplace quadrature handles a single phase");
    if (problem.dimension > 3) throw budget_error("dimension-too-large", "Laplace quadrature supports n <= 3");
    if (tau > 1e8) throw budget_error("tau-too-large", "Laplace quadrature budget ends at tau = 1e8");
    const MonomialPhase& phase = problem.phases.front();
    const int n = problem.dimension;

    // Geometric subdivision toward the phase zero set {x_i = 0 : m_i > 0};
    // each dyadic cell sees only a bounded swing of the exponential weight.
    const int levels = n <= 2 ? 50 : 36;
    const int order = n <= 2 ? 10 : 6;
    std::vector<std::vector<double>> edges(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& e = edges[static_cast<std::size_t>(i)];
        if (phase.exponents[i] > 0) {
            e.push_back(0.0);
            for (int j = levels; j >= 0; --j) e.push_back(std::ldexp(1.0, -j));
        } else {
            e = {0.0, 0.5, 1.0};
        }
    }

    const GaussRule& rule = gauss_rule(order);
    std::vector<double> cells;
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<std::size_t> ci(static_cast<std::size_t>(n), 0);
    for (;;) {
        double cell = 0.0;
        // tensor Gauss over the current cell
        std::vector<std::size_t> qi(static_cast<std::size_t>(n), 0);
        double scale = 1.0;
        for (int i = 0; i < n; ++i) {
            const auto& e = edges[static_cast<std::size_t>(i)];
            scale *= 0.5 * (e[ci[static_cast<std::size_t>(i)] + 1] - e[ci[static_cast<std::size_t>(i)]]);
        }
        for (;;) {
            double w = 1.0;
            for (int i = 0; i < n; ++i) {
                const auto& e = edges[static_cast<std::size_t>(i)];
                const double a = e[ci[static_cast<std::size_t>(i)]], b = e[ci[static_cast<std::size_t>(i)] + 1];
                x[static_cast<std::size_t>(i)] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[qi[static_cast<std::size_t>(i)]];
                w *= rule.weights[qi[static_cast<std::size_t>(i)]];
            }
            cell += w * problem.amplitude.evaluate(x) * std::exp(-tau * phase.evaluate(x));
            int d = 0;
            while (d < n && ++qi[static_cast<std::size_t>(d)] == rule.nodes.size()) {
                qi[static_cast<std::size_t>(d)] = 0;
                ++d;
            }
            if (d == n) break;
        }
        cells.push_back(cell * scale);
        int d = 0;
        while (d < n && ++ci[static_cast<std::size_t>(d)] == edges[static_cast<std::size_t>(d)].size() - 1) {
            ci[static_cast<std::size_t>(d)] = 0;
            ++d;
        }
        if (d == n) break;
    }
    return pairwise_sum(cells);
}

FitReport fit_leading(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 6) throw input_error("insufficient-span", "need at least 6 samples");
    double tmin = samples.front().first, tmax = samples.front().first;
    for (const auto& [t, v] : samples) {
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (!(tmax / tmin >= 1e3)) throw input_error("insufficient-span", "samples must span at least 3 decades");

    FitReport best;
    double best_res = -1.0;
    for (int k = 0; k <= 4; ++k) {
        // regress y = ln|v| - k ln|ln t| against [1, ln t]
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double N = static_cast<double>(samples.size());
        bool usable = true;
        for (const auto& [t, v] : samples) {
            if (!(std::abs(v) > 0.0)) {
                usable = false;
                break;
            }
            const double lx = std::log(t);
            const double y = std::log(std::abs(v)) - k * std::log(std::abs(lx));
            sx += lx;
            sy += y;
            sxx += lx * lx;
            sxy += lx * y;
        }
        if (!usable) continue;
        const double denom = N * sxx - sx * sx;
        const double slope = (N * sxy - sx * sy) / denom;
        const double inter = (sy - slope * sx) / N;
        double rss = 0.0;
        for (const auto& [t, v] : samples) {
            const double lx = std::log(t);
            const double y = std::log(std::abs(v)) - k * std::log(std::abs(lx));
            const double pred = inter + slope * lx;
            rss += (y - pred) * (y - pred);
        }
        const double res = std::sqrt(rss / N);
        if (best_res < 0.0 || res < best_res) {
            best_res = res;
            best.fitted_exponent = slope;
            best.fitted_logpower = k;
            best.residual = res;
        }
    }
    if (best_res < 0.0) {
        // all sample values were zero: a flat (constant-zero) profile
        best.fitted_exponent = 0.0;
        best.fitted_logpower = 0;
        best.residual = 0.0;
    }
    return best;
}

double decay_slope(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2) throw input_error("insufficient-span", "need at least 2 samples for a slope");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double N = static_cast<double>(samples.size());
    for (const auto& [t, v] : samples) {
        const double lx = std::log(t), ly = std::log(std::abs(v));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (N * sxy - sx * sy) / (N * sxx - sx * sx);
}

} // namespace oscint
