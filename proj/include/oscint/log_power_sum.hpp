#ifndef OSCINT_LOG_POWER_SUM_HPP
#define OSCINT_LOG_POWER_SUM_HPP

#include <map>
#include <string>
#include <vector>

#include "oscint/rational.hpp"

namespace oscint {

// Key of one expansion term t^s * ln(t)^k, ordered by (s ascending, k
// ascending) so the leading term is always front().
struct TermKey {
    Rational s;
    int k = 0;

    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.k < b.k;
    }
    friend bool operator==(const TermKey& a, const TermKey& b) { return a.s == b.s && a.k == b.k; }
};

// Finite exact sum  sum_i c_i * t^{s_i} * ln(t)^{k_i}  with rational
// coefficients and exponents; the carrier of every sublevel expansion.
// Zero coefficients are pruned eagerly, so term keys are unique and every
// stored coefficient is nonzero.
class LogPowerSum {
public:
    using TermMap = std::map<TermKey, Rational>;

    LogPowerSum() = default;

    static LogPowerSum single(const Rational& s, int k, const Rational& coeff) {
        LogPowerSum out;
        out.add_term(s, k, coeff);
        return out;
    }
    static LogPowerSum constant(const Rational& value) { return single(Rational(0), 0, value); }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Rational& s, int k, const Rational& coeff) {
        if (coeff == 0) return;
        if (k < 0) throw invariant_error("negative-log-power", "log power must be nonnegative");
        TermKey key{s, k};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Rational& s, int k) const {
        auto it = terms_.find(TermKey{s, k});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    LogPowerSum& operator+=(const LogPowerSum& rhs) {
        for (const auto& [key, c] : rhs.terms_) add_term(key.s, key.k, c);
        return *this;
    }
    friend LogPowerSum operator+(LogPowerSum lhs, const LogPowerSum& rhs) { return lhs += rhs; }
    friend LogPowerSum operator-(const LogPowerSum& lhs, const LogPowerSum& rhs) {
        LogPowerSum out = lhs;
        for (const auto& [key, c] : rhs.terms_) out.add_term(key.s, key.k, -c);
        return out;
    }

    LogPowerSum scaled(const Rational& factor) const {
        LogPowerSum out;
        if (factor == 0) return out;
        for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * factor);
        return out;
    }

    // Multiply by the single term t^{ds} * ln(t)^{dk}.
    LogPowerSum term_shifted(const Rational& ds, int dk) const {
        LogPowerSum out;
        for (const auto& [key, c] : terms_) out.terms_.emplace(TermKey{key.s + ds, key.k + dk}, c);
        return out;
    }

    Rational min_exponent() const {
        if (terms_.empty()) throw invariant_error("empty-sum", "min_exponent of empty sum");
        return terms_.begin()->first.s;
    }
    int max_log_power() const {
        int k = 0;
        for (const auto& [key, c] : terms_) k = std::max(k, key.k);
        return k;
    }

    double evaluate(double t) const;

    // Exact limit value at t = 1 (all logarithm factors vanish).
    Rational value_at_one() const {
        Rational v(0);
        for (const auto& [key, c] : terms_)
            if (key.k == 0) v += c;
        return v;
    }

    friend bool operator==(const LogPowerSum& a, const LogPowerSum& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LogPowerSum& a, const LogPowerSum& b) { return !(a == b); }

private:
    TermMap terms_;
};

// d/dt applied termwise:  d/dt[c t^s ln^k t] = c s t^{s-1} ln^k t + c k t^{s-1} ln^{k-1} t.
LogPowerSum derivative(const LogPowerSum& g);
LogPowerSum derivative(const LogPowerSum& g, int order);

// Exact antiderivative with zero constant of integration.
LogPowerSum antiderivative(const LogPowerSum& g);

// Canonical text form, one term per line: "coeff * t^(s) * ln(t)^k" with
// exact rationals printed as p/q.  Parsing the output reproduces the sum
// exactly.
std::string to_text(const LogPowerSum& g);
LogPowerSum log_power_sum_from_text(const std::string& text);

// Human-facing single-line rendering, e.g. "t - t*ln(t)"; argument_label
// replaces "t" (the scaled form prints with label "t/c").
std::string pretty(const LogPowerSum& g, const std::string& argument_label = "t");

// Inverse of pretty() for the same label; report text reparses exactly.
LogPowerSum log_power_sum_from_pretty(const std::string& text, const std::string& argument_label = "t");

} // namespace oscint

#endif
