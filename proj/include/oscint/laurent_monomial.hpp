#ifndef OSCINT_LAURENT_MONOMIAL_HPP
#define OSCINT_LAURENT_MONOMIAL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "oscint/rational.hpp"

namespace oscint {

// c * prod_i x_i^{e_i} with c > 0 and signed integer exponents.
struct LaurentMonomial {
    Rational coefficient{1};
    std::vector<std::int64_t> exponents;

    LaurentMonomial() = default;
    LaurentMonomial(Rational coeff, std::vector<std::int64_t> exps)
        : coefficient(std::move(coeff)), exponents(std::move(exps)) {
        if (coefficient <= 0)
            throw input_error("nonpositive-coefficient", "Laurent monomial coefficient must be positive");
    }

    int dimension() const { return static_cast<int>(exponents.size()); }

    bool is_constant() const {
        for (auto e : exponents)
            if (e != 0) return false;
        return true;
    }

    bool has_nonnegative_exponents() const {
        for (auto e : exponents)
            if (e < 0) return false;
        return true;
    }

    LaurentMonomial reciprocal() const {
        std::vector<std::int64_t> neg(exponents.size());
        for (std::size_t i = 0; i < exponents.size(); ++i) neg[i] = -exponents[i];
        return LaurentMonomial(Rational(1) / coefficient, std::move(neg));
    }

    double evaluate(const std::vector<double>& x) const {
        double v = to_double(coefficient);
        for (std::size_t i = 0; i < exponents.size(); ++i)
            v *= std::pow(x[i], static_cast<double>(exponents[i]));
        return v;
    }

    friend bool operator==(const LaurentMonomial& a, const LaurentMonomial& b) {
        return a.coefficient == b.coefficient && a.exponents == b.exponents;
    }
};

} // namespace oscint

#endif
