#include "oscint/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscint/gamma.hpp"

namespace oscint {

namespace {

using Complex = std::complex<double>;

// Polynomial in L = ln(var) with complex coefficients; degree stays <= the
// input log power, so dense vectors are fine.
using LPoly = std::vector<Complex>;

LPoly lpoly_mul(const LPoly& a, const LPoly& b) {
    LPoly out(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

void lpoly_axpy(LPoly& acc, const Complex& f, const LPoly& p) {
    if (acc.size() < p.size()) acc.resize(p.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += f * p[i];
}

// Complete Bell polynomials B_0..B_imax of (g_1, g_2, ..) where g_1 is a
// degree-one polynomial in L and the higher derivatives are constants:
// B_m = sum_{r=1}^m C(m-1, r-1) g_r B_{m-r}.
std::vector<LPoly> bell_polynomials(int imax, const LPoly& g1, const std::vector<Complex>& g_higher) {
    std::vector<LPoly> bell(static_cast<std::size_t>(imax) + 1);
    bell[0] = LPoly{Complex(1.0, 0.0)};
    for (int m = 1; m <= imax; ++m) {
        LPoly acc{Complex(0.0, 0.0)};
        for (int r = 1; r <= m; ++r) {
            double binom = 1.0;
            for (int t = 1; t <= r - 1; ++t) binom *= static_cast<double>(m - t) / t; // C(m-1, r-1)
            if (r == 1) {
                lpoly_axpy(acc, Complex(binom, 0.0), lpoly_mul(g1, bell[static_cast<std::size_t>(m - 1)]));
            } else {
                lpoly_axpy(acc, binom * g_higher[static_cast<std::size_t>(r - 2)],
                           bell[static_cast<std::size_t>(m - r)]);
            }
        }
        bell[static_cast<std::size_t>(m)] = std::move(acc);
    }
    return bell;
}

// Shared pipeline: each derivative term b t^{alpha} ln^i t maps to
// b * Gamma(alpha+1) e^{i theta (alpha+1)} var^{-alpha-1} * B_i(L), with
// theta = +-pi/2 for the oscillatory kernel and 0 for the Laplace kernel.
AsymptoticSeries transfer_series(const SublevelFunction& V, const Rational& order_cap, SeriesVariable variable,
                                 double theta) {
    if (order_cap <= 0) throw input_error("bad-order-cap", "order cap must be positive");
    AsymptoticSeries out;
    out.variable = variable;

    for (const auto& term : derivative_terms(V)) {
        const Rational s = term.exponent + 1;
        if (s > order_cap) continue;
        const double alpha = to_double(term.exponent);
        if (!(alpha > -1.0))
            throw input_error("divergent-transfer", "derivative exponent at or below -1");

        const int i = term.logpower;
        const Complex c0 = gamma_fn(alpha + 1.0) * std::exp(Complex(0.0, theta * (alpha + 1.0)));

        // g(alpha) = ln Gamma(alpha+1) + i theta (alpha+1) - (alpha+1) L
        LPoly g1{Complex(polygamma(0, alpha + 1.0), theta), Complex(-1.0, 0.0)};
        std::vector<Complex> g_higher;
        for (int r = 2; r <= i; ++r) g_higher.emplace_back(polygamma(r - 1, alpha + 1.0), 0.0);

        const LPoly bell = bell_polynomials(i, g1, g_higher)[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < bell.size(); ++j)
            out.add(s, static_cast<int>(j), term.coeff * c0 * bell[j]);
    }
    return out;
}

} // namespace

Complex AsymptoticSeries::evaluate(double v) const {
    const double lv = std::log(v);
    Complex acc(0.0, 0.0);
    for (const auto& [key, c] : terms) {
        double mag = std::pow(v, -to_double(key.s));
        for (int i = 0; i < key.k; ++i) mag *= lv;
        acc += c * mag;
    }
    return acc;
}

AsymptoticSeries AsymptoticSeries::truncated_to_exponents(std::size_t count) const {
    AsymptoticSeries out;
    out.variable = variable;
    std::size_t seen = 0;
    const Rational* current = nullptr;
    for (const auto& [key, c] : terms) {
        if (current == nullptr || key.s != *current) {
            ++seen;
            current = &key.s;
            if (seen > count) break;
        }
        out.terms.emplace(key, c);
    }
    return out;
}

std::vector<DerivativeTerm> derivative_terms(const SublevelFunction& V) {
    const LogPowerSum du = derivative(V.germ);
    std::vector<DerivativeTerm> out;
    if (V.scale == 1) {
        for (const auto& [key, c] : du.terms()) out.push_back({key.s, key.k, to_double(c)});
        return out;
    }
    // V(t) = germ(t/c):  V'(t) = (1/c) germ'(u), then (t/c)^b ln^i(t/c)
    // expands over powers of ln t with ln c folded into the coefficients.
    const double c = to_double(V.scale);
    const double lnc = std::log(c);
    std::map<TermKey, double> acc;
    for (const auto& [key, coeff] : du.terms()) {
        const double base = to_double(coeff) * std::pow(c, -to_double(key.s) - 1.0);
        for (int j = 0; j <= key.k; ++j) {
            double binom = 1.0;
            for (int t = 1; t <= j; ++t) binom *= static_cast<double>(key.k - t + 1) / t;
            acc[TermKey{key.s, j}] += base * binom * std::pow(-lnc, key.k - j);
        }
    }
    for (const auto& [key, v] : acc)
        if (v != 0.0) out.push_back({key.s, key.k, v});
    return out;
}

AsymptoticSeries oscillatory_expansion(const SublevelFunction& V, const Rational& order_cap, bool conjugate_branch,
                                       bool signed_phase) {
    if (signed_phase)
        throw unsupported_error("unsupported-signed-phase",
                                "sign-changing phases engage the reflected sublevel term");
    const double theta = (conjugate_branch ? -1.0 : 1.0) * std::numbers::pi / 2.0;
    return transfer_series(V, order_cap, SeriesVariable::lambda, theta);
}

AsymptoticSeries laplace_expansion(const SublevelFunction& V, const Rational& order_cap) {
    return transfer_series(V, order_cap, SeriesVariable::tau, 0.0);
}

std::vector<PoleDatum> mellin_meromorphic(const SublevelFunction& V) {
    if (!V.exact_everywhere)
        throw input_error("inexact-continuation", "mellin continuation requires an exact_everywhere function");
    if (V.scale != 1)
        throw input_error("unnormalized-scale",
                          "absorb the phase constant by substitution before the continuation");

    // int_0^1 t^{alpha+z} ln^i t dt = (-1)^i i! / (z+alpha+1)^{i+1}
    std::map<Rational, std::map<int, Rational>> acc; // location -> (order -> coefficient)
    const LogPowerSum dV = derivative(V.germ);
    for (const auto& [key, c] : dV.terms()) {
        const Rational location = -key.s - 1;
        const int order = key.k + 1;
        Rational contrib = c * Rational(int_factorial(key.k));
        if (key.k % 2 == 1) contrib = -contrib;
        acc[location][order] += contrib;
    }

    std::vector<PoleDatum> out;
    for (const auto& [location, parts] : acc) {
        int order = 0;
        for (const auto& [j, coeff] : parts)
            if (coeff != 0) order = std::max(order, j);
        if (order == 0) continue; // cancelled exactly
        PoleDatum pole;
        pole.location = location;
        pole.order = order;
        pole.principal_part.assign(static_cast<std::size_t>(order), Rational(0));
        for (const auto& [j, coeff] : parts)
            if (j <= order) pole.principal_part[static_cast<std::size_t>(j - 1)] = coeff;
        out.push_back(std::move(pole));
    }
    return out; // map iteration: locations ascending
}

MellinProduct mellin_product_oracle(const MultiIndex& beta, const MultiIndex& m) {
    if (beta.dimension() != m.dimension())
        throw input_error("dimension-mismatch", "beta and m must share a dimension");
    if (m.is_zero()) throw input_error("constant-phase", "m must not vanish entirely");
    MellinProduct out;
    for (int i = 0; i < m.dimension(); ++i) {
        if (m[i] == 0)
            out.constant /= Rational(beta[i] + 1);
        else
            out.factors.emplace_back(m[i], beta[i] + 1);
    }
    return out;
}

std::vector<PoleDatum> MellinProduct::partial_fractions() const {
    // Group factors by root; the principal part at a root r of multiplicity
    // mu reads off the Taylor series of the remaining product at r.
    std::map<Rational, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < factors.size(); ++i)
        by_root[Rational(-factors[i].second) / Rational(factors[i].first)].push_back(i);

    std::vector<PoleDatum> out;
    for (const auto& [root, idxs] : by_root) {
        const int mu = static_cast<int>(idxs.size());
        // h(z) = (z-root)^mu F(z): constant * prod_{at root} 1/m_i *
        //        prod_{other} 1/(m_i z + c_i), Taylor-expanded to degree mu-1.
        std::vector<Rational> h(static_cast<std::size_t>(mu), Rational(0));
        h[0] = constant;
        for (std::size_t i : idxs) h[0] /= Rational(factors[i].first);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (std::find(idxs.begin(), idxs.end(), i) != idxs.end()) continue;
            const Rational mi(factors[i].first), ci(factors[i].second);
            const Rational d = mi * root + ci; // nonzero: different root
            // 1/(m z + c) = (1/d) sum_t (-m/d)^t (z-root)^t
            std::vector<Rational> f(static_cast<std::size_t>(mu), Rational(0));
            Rational pw = Rational(1) / d;
            for (int t = 0; t < mu; ++t) {
                f[static_cast<std::size_t>(t)] = pw;
                pw *= -mi / d;
            }
            std::vector<Rational> prod(static_cast<std::size_t>(mu), Rational(0));
            for (int a = 0; a < mu; ++a)
                for (int b = 0; a + b < mu; ++b)
                    prod[static_cast<std::size_t>(a + b)] += h[static_cast<std::size_t>(a)] * f[static_cast<std::size_t>(b)];
            h = std::move(prod);
        }
        PoleDatum pole;
        pole.location = root;
        pole.order = mu;
        pole.principal_part.assign(static_cast<std::size_t>(mu), Rational(0));
        for (int j = 1; j <= mu; ++j)
            pole.principal_part[static_cast<std::size_t>(j - 1)] = h[static_cast<std::size_t>(mu - j)];
        out.push_back(std::move(pole));
    }
    return out;
}

Complex MellinProduct::evaluate(Complex z) const {
    Complex acc(to_double(constant), 0.0);
    for (const auto& [mi, ci] : factors) acc /= (static_cast<double>(mi) * z + static_cast<double>(ci));
    return acc;
}

Complex evaluate_poles(const std::vector<PoleDatum>& poles, Complex z) {
    Complex acc(0.0, 0.0);
    for (const auto& p : poles) {
        Complex dz = z - Complex(to_double(p.location), 0.0);
        Complex pw(1.0, 0.0);
        for (int j = 1; j <= p.order; ++j) {
            pw /= dz;
            acc += to_double(p.principal_part[static_cast<std::size_t>(j - 1)]) * pw;
        }
    }
    return acc;
}

double gamma_power_alpha_derivative(int i, double alpha, double x) {
    LPoly g1{Complex(polygamma(0, alpha + 1.0), 0.0), Complex(-1.0, 0.0)};
    std::vector<Complex> g_higher;
    for (int r = 2; r <= i; ++r) g_higher.emplace_back(polygamma(r - 1, alpha + 1.0), 0.0);
    const LPoly bell = bell_polynomials(i, g1, g_higher)[static_cast<std::size_t>(i)];
    const double L = std::log(x);
    Complex acc(0.0, 0.0);
    double lp = 1.0;
    for (std::size_t j = 0; j < bell.size(); ++j) {
        acc += bell[j] * lp;
        lp *= L;
    }
    return gamma_fn(alpha + 1.0) * std::pow(x, -alpha - 1.0) * acc.real();
}

} // namespace oscint
