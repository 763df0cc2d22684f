#include "oscint/sublevel_function.hpp"

namespace oscint {

double SublevelFunction::value(double t) const {
    double c = to_double(scale);
    if (exact_everywhere && t >= c) return to_double(total_mass);
    if (!exact_everywhere && !(t < to_double(threshold)))
        throw invariant_error("outside-validity", "evaluation beyond germ validity threshold");
    return germ.evaluate(t / c);
}

SublevelFunction integrate_scaled(const SublevelFunction& g, long a, long b) {
    if (a < 0 || b <= 0) throw input_error("bad-exponent", "integrate_scaled needs a >= 0, b >= 1");
    if (!g.exact_everywhere)
        throw input_error("inexact-input", "integrate_scaled requires an exact_everywhere input");
    if (g.scale != 1)
        throw input_error("scaled-input", "integrate_scaled operates on unit-scale functions");

    const Rational outer_exp = Rational(a + 1) / Rational(b); // exponent of every y* endpoint term
    for (const auto& [key, c] : g.germ.terms())
        if (key.s <= -outer_exp)
            throw input_error("divergent-recursion", "germ exponent " + rat_to_string(key.s) +
                                                         " is not integrable against y^" + std::to_string(a) +
                                                         " under b=" + std::to_string(b));

    LogPowerSum out;

    // Inner region y < t^{1/b}: the argument saturates and g contributes its
    // total mass,  M * t^{(a+1)/b} / (a+1).
    out.add_term(outer_exp, 0, g.total_mass / Rational(a + 1));

    // Outer region t^{1/b} < y < 1: integrate each germ term exactly.
    // For a term c u^s ln^k u with u = t/y^b,
    //   c * t^s * sum_j C(k,j) ln^j t * (-b)^{k-j} * I(a - b s, k - j)
    // where I(p,q) = int_{t^{1/b}}^1 y^p ln^q y dy.
    for (const auto& [key, coeff] : g.germ.terms()) {
        const Rational& s = key.s;
        const int k = key.k;
        const Rational p = Rational(a) - Rational(b) * s;

        for (int j = 0; j <= k; ++j) {
            const int q = k - j;
            Rational pref = coeff * Rational(int_binomial(k, j)) * rat_pow(Rational(-b), q);

            if (p == -1) {
                // I(-1,q) = -(ln t / b)^{q+1}/(q+1): the log power goes up by one.
                out.add_term(s, j + q + 1, -pref / (rat_pow(Rational(b), q + 1) * Rational(q + 1)));
                continue;
            }

            const Rational p1 = p + 1;
            // endpoint y = 1 keeps the input exponent s
            out.add_term(s, j, pref * Rational(int_factorial(q)) * rat_pow(Rational(-1), q) / rat_pow(p1, q + 1));
            // endpoint y = t^{1/b} collapses onto the exponent (a+1)/b
            Rational falling(1); // q!/(q-r)!
            for (int r = 0; r <= q; ++r) {
                Rational term = pref * rat_pow(Rational(-1), r) * falling /
                                (rat_pow(Rational(b), q - r) * rat_pow(p1, r + 1));
                out.add_term(outer_exp, j + q - r, -term);
                falling *= Rational(q - r);
            }
        }
    }

    SublevelFunction result;
    result.germ = std::move(out);
    result.scale = 1;
    result.threshold = 1;
    result.total_mass = g.total_mass / Rational(a + 1);
    result.exact_everywhere = true;
    return result;
}

LogPowerSum termwise_derivative(const SublevelFunction& g, int order) {
    if (order < 0) throw input_error("bad-order", "derivative order must be nonnegative");
    return derivative(g.germ, order);
}

} // namespace oscint
