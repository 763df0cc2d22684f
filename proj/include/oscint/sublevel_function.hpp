#ifndef OSCINT_SUBLEVEL_FUNCTION_HPP
#define OSCINT_SUBLEVEL_FUNCTION_HPP

#include "oscint/log_power_sum.hpp"

namespace oscint {

// Exact representation of a sublevel-volume function V(t).
//
// The germ is a log-power sum in the rescaled variable u = t/scale, so that
// V(t) = germ(t/scale) for 0 < t < threshold.  Keeping the substitution
// constant outside the germ is what lets coefficients stay rational: a phase
// constant c enters only as {c*z^mu < t} = {z^mu < t/c} plus threshold
// bookkeeping.  With exact_everywhere set, the germ is valid on all of
// u in (0,1) and V(t) = total_mass for t >= scale.
struct SublevelFunction {
    LogPowerSum germ;        // in u = t/scale
    Rational scale{1};       // positive
    Rational threshold{1};   // in t units; germ(t/scale) valid for 0 < t < threshold
    Rational total_mass{0};
    bool exact_everywhere = false;

    // Numeric evaluation; t must lie below threshold unless exact_everywhere.
    double value(double t) const;

    friend bool operator==(const SublevelFunction& a, const SublevelFunction& b) {
        return a.germ == b.germ && a.scale == b.scale && a.threshold == b.threshold &&
               a.total_mass == b.total_mass && a.exact_everywhere == b.exact_everywhere;
    }
};

// F(t) = int_0^1 y^a g(t/y^b) dy for g exact on (0,1) and constant
// total_mass for arguments >= 1.  This is the single step of the sublevel
// dimension recursion; the integrand exponent a - b*s hitting -1 is the one
// mechanism that raises the logarithm power.
SublevelFunction integrate_scaled(const SublevelFunction& g, long a, long b);

// order-th derivative of the germ in its own variable, termwise.
LogPowerSum termwise_derivative(const SublevelFunction& g, int order = 1);

} // namespace oscint

#endif
