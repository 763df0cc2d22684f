#ifndef OSCINT_TRANSFER_HPP
#define OSCINT_TRANSFER_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "oscint/multi_index.hpp"
#include "oscint/sublevel_function.hpp"

namespace oscint {

enum class SeriesVariable { lambda, tau };

// Finite asymptotic series  sum coeff * var^{-s} * ln(var)^k  with complex
// double coefficients, sorted by (s ascending, k ascending).
struct AsymptoticSeries {
    SeriesVariable variable = SeriesVariable::lambda;
    std::map<TermKey, std::complex<double>> terms;

    void add(const Rational& s, int k, std::complex<double> coeff) {
        if (coeff == std::complex<double>(0.0, 0.0)) return;
        auto [it, inserted] = terms.emplace(TermKey{s, k}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == std::complex<double>(0.0, 0.0)) terms.erase(it);
        }
    }

    std::complex<double> coefficient(const Rational& s, int k) const {
        auto it = terms.find(TermKey{s, k});
        return it == terms.end() ? std::complex<double>(0.0, 0.0) : it->second;
    }

    std::complex<double> evaluate(double v) const;

    // Partial sum over the leading `count` distinct exponents.
    AsymptoticSeries truncated_to_exponents(std::size_t count) const;
};

// Pole of the meromorphic continuation with its exact principal part;
// principal_part[j-1] multiplies (z - location)^{-j}.
struct PoleDatum {
    Rational location;
    int order = 0;
    std::vector<Rational> principal_part;

    friend bool operator==(const PoleDatum& a, const PoleDatum& b) {
        return a.location == b.location && a.order == b.order && a.principal_part == b.principal_part;
    }
};

// Termwise derivative of V transported to the unscaled variable t; with a
// nonunit scale c the factors c^{-beta-1} and powers of ln c fold into the
// (double) coefficients.
struct DerivativeTerm {
    Rational exponent;
    int logpower = 0;
    double coeff = 0.0;
};
std::vector<DerivativeTerm> derivative_terms(const SublevelFunction& V);

// dV/dt from t^{alpha} ln^i t terms to  partial_alpha^i [Gamma(alpha+1)
// e^{i pi (alpha+1)/2} lambda^{-alpha-1}], expanded over the (s, k) grid by
// complete Bell polynomials.  Requires a nonnegative phase (the reflected
// sublevel function vanishes identically); conjugate_branch swaps lambda for
// -lambda.
AsymptoticSeries oscillatory_expansion(const SublevelFunction& V, const Rational& order_cap,
                                       bool conjugate_branch = false, bool signed_phase = false);

// Same pipeline with the real kernel  partial_alpha^i [Gamma(alpha+1) tau^{-alpha-1}].
AsymptoticSeries laplace_expansion(const SublevelFunction& V, const Rational& order_cap);

// Exact meromorphic continuation of z -> int_0^1 t^z V'(t) dt: each germ
// term contributes B (-1)^i i! / (z + alpha + 1)^{i+1}; poles merged by
// location.  Requires exact_everywhere and unit scale.
std::vector<PoleDatum> mellin_meromorphic(const SublevelFunction& V);

// Fubini cross-check: int_{(0,1)^n} y^beta (y^m)^z dy = prod 1/(beta_i+1+m_i z),
// kept in factored form with an exact partial-fraction expansion.
struct MellinProduct {
    Rational constant{1};                            // prod over m_i = 0 of 1/(beta_i+1)
    std::vector<std::pair<long, long>> factors;      // (m_i, beta_i+1) for m_i > 0
    std::vector<PoleDatum> partial_fractions() const;
    std::complex<double> evaluate(std::complex<double> z) const;
};
MellinProduct mellin_product_oracle(const MultiIndex& beta, const MultiIndex& m);

// Principal parts summed as a rational function value (for cross-checks).
std::complex<double> evaluate_poles(const std::vector<PoleDatum>& poles, std::complex<double> z);

// d^i/d alpha^i [Gamma(alpha+1) x^{-alpha-1}], real kernel, exposed for the
// finite-difference validation of the Bell-polynomial derivatives.
double gamma_power_alpha_derivative(int i, double alpha, double x);

} // namespace oscint

#endif
