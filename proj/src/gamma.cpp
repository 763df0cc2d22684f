#include "oscint/gamma.hpp"

#include <cmath>

namespace oscint {

namespace {

// Even Bernoulli numbers B_2..B_20.
constexpr double kBernoulli[] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0,
};
constexpr int kBernCount = 10;
constexpr double kShiftThreshold = 16.0;

double factorial_d(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0)) throw input_error("gamma-domain", "log_gamma needs x > 0");
    return std::lgamma(x);
}

double gamma_fn(double x) {
    if (!(x > 0)) throw input_error("gamma-domain", "gamma needs x > 0");
    return std::tgamma(x);
}

double polygamma(int k, double x) {
    if (k < 0 || k > 8) throw input_error("polygamma-order", "polygamma supports k = 0..8");
    if (!(x > 0)) throw input_error("polygamma-domain", "polygamma needs x > 0");

    // psi^{(k)}(x) = psi^{(k)}(x+1) - (-1)^k k! / x^{k+1}
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    const double kfact = factorial_d(k);
    double acc = 0.0;
    while (x < kShiftThreshold) {
        acc -= sign_k * kfact / std::pow(x, k + 1);
        x += 1.0;
    }

    double val;
    if (k == 0) {
        val = std::log(x) - 0.5 / x;
        double x2 = x * x;
        double p = x2;
        for (int n = 1; n <= kBernCount; ++n) {
            val -= kBernoulli[n - 1] / (2.0 * n * p);
            p *= x2;
        }
    } else {
        // d^k/dx^k of the psi series:
        // (-1)^{k-1} [(k-1)!/x^k + k!/(2 x^{k+1}) + sum B_2n (2n+k-1)!/((2n)! x^{2n+k})]
        double series = factorial_d(k - 1) / std::pow(x, k) + kfact / (2.0 * std::pow(x, k + 1));
        for (int n = 1; n <= kBernCount; ++n) {
            double ratio = 1.0; // (2n+k-1)! / (2n)!
            for (int j = 2 * n + 1; j <= 2 * n + k - 1; ++j) ratio *= j;
            series += kBernoulli[n - 1] * ratio / std::pow(x, 2 * n + k);
        }
        val = -sign_k * series; // (-1)^{k-1}
    }
    return acc + val;
}

double polygamma(int k, const Rational& x) { return polygamma(k, to_double(x)); }

} // namespace oscint
