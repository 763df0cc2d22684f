#ifndef OSCINT_VERIFY_HPP
#define OSCINT_VERIFY_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "oscint/sublevel.hpp"

namespace oscint {

enum class QuadMethod { tensor_gauss, adaptive, monte_carlo, quasi_monte_carlo };

struct QuadratureSpec {
    QuadMethod method = QuadMethod::monte_carlo;
    long samples = 100000;
    std::uint64_t seed = 1;
    double tolerance = 1e-8;

    void validate() const;
};

struct NumericResult {
    double value = 0.0;
    double error = 0.0; // MC: sample sd / sqrt(N); adaptive: accumulated estimate
};

struct FitReport {
    double fitted_exponent = 0.0;
    int fitted_logpower = 0;
    double residual = 0.0;
    double decay_slope = 0.0;
};

// Volume integral int_{max_l f_l < t} amplitude dx over the unit cube.
// Methods: monte_carlo, quasi_monte_carlo, adaptive (iterated quadrature
// with an exact innermost antiderivative); n <= 4 for the adaptive path.
NumericResult numeric_sublevel(const SublevelProblem& problem, double t, const QuadratureSpec& spec);

// int e^{i lambda f} amplitude over the cube; single phase, n <= 2,
// tensor Gauss-Legendre with panel counts proportional to lambda per axis.
std::complex<double> numeric_oscillatory(const SublevelProblem& problem, double lambda, const QuadratureSpec& spec);

// int e^{-tau f} amplitude; single phase, n <= 3, geometric panel
// subdivision toward the zero set of the phase.
double numeric_laplace(const SublevelProblem& problem, double tau, const QuadratureSpec& spec);

// Fit value ~ C t^s |ln t|^k over samples (t, value) by linear regression
// with k restricted to integers 0..4 chosen by residual minimization.
FitReport fit_leading(const std::vector<std::pair<double, double>>& samples);

// Log-log slope of |remainder| samples (lambda, |r|); positive inputs.
double decay_slope(const std::vector<std::pair<double, double>>& samples);

// Deterministic helpers shared by the oracles and the test-suites.
double pairwise_sum(const std::vector<double>& values);

struct GaussRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double tol,
                          double* error_acc = nullptr);

} // namespace oscint

#endif
