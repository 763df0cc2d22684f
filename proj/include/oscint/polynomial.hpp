#ifndef OSCINT_POLYNOMIAL_HPP
#define OSCINT_POLYNOMIAL_HPP

#include <cmath>
#include <map>
#include <vector>

#include "oscint/multi_index.hpp"
#include "oscint/rational.hpp"

namespace oscint {

// Polynomial with exact rational coefficients over x_1..x_n, stored as a
// sparse map multi-index -> coefficient.  Zero coefficients are never kept.
class PolynomialAmplitude {
public:
    PolynomialAmplitude() = default;
    explicit PolynomialAmplitude(int dimension) : dim_(dimension) {}

    static PolynomialAmplitude constant(int dimension, const Rational& value) {
        PolynomialAmplitude p(dimension);
        p.add_term(MultiIndex::zeros(dimension), value);
        return p;
    }

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    void add_term(const MultiIndex& alpha, const Rational& coeff) {
        if (alpha.dimension() != dim_)
            throw input_error("dimension-mismatch", "term dimension does not match polynomial dimension");
        if (coeff == 0) return;
        auto it = terms_.find(alpha);
        if (it == terms_.end()) {
            terms_.emplace(alpha, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PolynomialAmplitude scaled(const Rational& factor) const {
        PolynomialAmplitude out(dim_);
        if (factor == 0) return out;
        for (const auto& [alpha, c] : terms_) out.terms_.emplace(alpha, c * factor);
        return out;
    }

    bool nonnegative_coefficients() const {
        for (const auto& [alpha, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    // Exact full-cube integral: sum_alpha c_alpha * prod_i 1/(alpha_i + 1).
    Rational cube_mass() const {
        Rational total(0);
        for (const auto& [alpha, c] : terms_) {
            Rational f = c;
            for (int i = 0; i < dim_; ++i) f /= Rational(alpha[i] + 1);
            total += f;
        }
        return total;
    }

    double evaluate(const std::vector<double>& x) const {
        double acc = 0.0;
        for (const auto& [alpha, c] : terms_) {
            double t = to_double(c);
            for (int i = 0; i < dim_; ++i) {
                long e = alpha[i];
                if (e == 1) t *= x[static_cast<std::size_t>(i)];
                else if (e > 1) t *= std::pow(x[static_cast<std::size_t>(i)], static_cast<double>(e));
            }
            acc += t;
        }
        return acc;
    }

    friend bool operator==(const PolynomialAmplitude& a, const PolynomialAmplitude& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    int dim_ = 0;
    std::map<MultiIndex, Rational> terms_;
};

} // namespace oscint

#endif
