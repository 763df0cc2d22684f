#ifndef OSCINT_GAMMA_HPP
#define OSCINT_GAMMA_HPP

#include "oscint/rational.hpp"

namespace oscint {

inline constexpr double kEulerGamma = 0.5772156649015329;

double log_gamma(double x); // x > 0
double gamma_fn(double x);  // x > 0

// psi^{(k)}(x) for k = 0..8, x > 0: upward recurrence to shift the argument
// above the asymptotic threshold, then the Bernoulli series in 1/x.
// Absolute error <= 1e-12 for x <= 50.
double polygamma(int k, double x);
double polygamma(int k, const Rational& x);

} // namespace oscint

#endif
