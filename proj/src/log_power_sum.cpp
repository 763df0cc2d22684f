#include "oscint/log_power_sum.hpp"

#include <cmath>
#include <sstream>

namespace oscint {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw input_error("bad-rational", "empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rational(std::move(num), std::move(den));
    } catch (const std::exception&) {
        throw input_error("bad-rational", "cannot parse rational '" + text + "'");
    }
}

std::string rat_to_string(const Rational& q) {
    std::ostringstream os;
    os << rat_num(q);
    if (rat_den(q) != 1) os << "/" << rat_den(q);
    return os.str();
}

double LogPowerSum::evaluate(double t) const {
    double lt = std::log(t);
    double acc = 0.0;
    for (const auto& [key, c] : terms_) {
        double v = to_double(c) * std::pow(t, to_double(key.s));
        for (int i = 0; i < key.k; ++i) v *= lt;
        acc += v;
    }
    return acc;
}

LogPowerSum derivative(const LogPowerSum& g) {
    LogPowerSum out;
    for (const auto& [key, c] : g.terms()) {
        out.add_term(key.s - 1, key.k, c * key.s);
        if (key.k > 0) out.add_term(key.s - 1, key.k - 1, c * key.k);
    }
    return out;
}

LogPowerSum derivative(const LogPowerSum& g, int order) {
    LogPowerSum out = g;
    for (int i = 0; i < order; ++i) out = derivative(out);
    return out;
}

LogPowerSum antiderivative(const LogPowerSum& g) {
    LogPowerSum out;
    for (const auto& [key, c] : g.terms()) {
        if (key.s == -1) {
            // int t^{-1} ln^k t dt = ln^{k+1} t / (k+1)
            out.add_term(Rational(0), key.k + 1, c / Rational(key.k + 1));
            continue;
        }
        // int t^s ln^k t dt = t^{s+1} sum_{r=0}^{k} (-1)^r k!/(k-r)! ln^{k-r} t / (s+1)^{r+1}
        Rational sp1 = key.s + 1;
        Rational pow = sp1;
        Rational fall(1); // k!/(k-r)!
        int sign = 1;
        for (int r = 0; r <= key.k; ++r) {
            out.add_term(sp1, key.k - r, c * Rational(sign) * fall / pow);
            fall *= Rational(key.k - r);
            pow *= sp1;
            sign = -sign;
        }
    }
    return out;
}

std::string to_text(const LogPowerSum& g) {
    std::ostringstream os;
    for (const auto& [key, c] : g.terms())
        os << rat_to_string(c) << " * t^(" << rat_to_string(key.s) << ") * ln(t)^" << key.k << "\n";
    return os.str();
}

LogPowerSum log_power_sum_from_text(const std::string& text) {
    LogPowerSum out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        // strip whitespace
        std::string s;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
        if (s.empty()) continue;
        // coeff*t^(expr)*ln(t)^k
        auto tpos = s.find("*t^(");
        auto close = tpos == std::string::npos ? std::string::npos : s.find(')', tpos);
        if (tpos == std::string::npos || close == std::string::npos)
            throw input_error("bad-term", "malformed term line '" + line + "'");
        Rational coeff = parse_rational(s.substr(0, tpos));
        Rational expo = parse_rational(s.substr(tpos + 4, close - tpos - 4));
        auto caret = s.find("*ln(t)^", close);
        if (caret == std::string::npos)
            throw input_error("bad-term", "missing log power in '" + line + "'");
        int k = std::stoi(s.substr(caret + 7));
        out.add_term(expo, k, coeff);
    }
    return out;
}

namespace {

// "3/2*t^(1/2)" style fragment for one term of the pretty form.
std::string pretty_term(const TermKey& key, const Rational& coeff_abs, const std::string& var) {
    std::ostringstream os;
    bool coeff_one = (coeff_abs == 1);
    bool have_power = (key.s != 0);
    bool have_log = (key.k > 0);
    bool wrap = var.find('/') != std::string::npos; // composite label like t/4
    std::string v = wrap ? "(" + var + ")" : var;
    if (!coeff_one || (!have_power && !have_log)) os << rat_to_string(coeff_abs);
    if (have_power) {
        if (!coeff_one) os << "*";
        os << v;
        if (key.s != 1) os << "^(" << rat_to_string(key.s) << ")";
    }
    if (have_log) {
        if (!coeff_one || have_power) os << "*";
        os << "ln(" << var << ")";
        if (key.k != 1) os << "^" << key.k;
    }
    return os.str();
}

} // namespace

LogPowerSum log_power_sum_from_pretty(const std::string& text, const std::string& argument_label) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    LogPowerSum out;
    if (s.empty() || s == "0") return out;

    std::string stripped;
    for (char ch : argument_label)
        if (!std::isspace(static_cast<unsigned char>(ch))) stripped.push_back(ch);
    const bool wrapped = stripped.find('/') != std::string::npos;
    const std::string var = wrapped ? "(" + stripped + ")" : stripped;
    const std::string log_tok = "ln(" + stripped + ")";

    // split into signed terms at top parenthesis level
    std::vector<std::pair<int, std::string>> pieces;
    int sign = 1;
    std::size_t start = 0;
    if (s[0] == '-') {
        sign = -1;
        start = 1;
    }
    int depth = 0;
    for (std::size_t i = start; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        if (i < s.size() && s[i] == ')') --depth;
        const bool split = i == s.size() || (depth == 0 && (s[i] == '+' || s[i] == '-') && i > start);
        if (!split) continue;
        if (i > start) pieces.emplace_back(sign, s.substr(start, i - start));
        if (i < s.size()) sign = s[i] == '-' ? -1 : 1;
        start = i + 1;
    }

    for (auto& [sgn, term] : pieces) {
        Rational coeff(sgn);
        Rational expo(0);
        int k = 0;
        std::size_t pos = 0;
        // optional rational coefficient
        if (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
            std::size_t end = pos;
            while (end < term.size() && (std::isdigit(static_cast<unsigned char>(term[end])) || term[end] == '/')) ++end;
            coeff *= parse_rational(term.substr(pos, end - pos));
            pos = end;
            if (pos < term.size() && term[pos] == '*') ++pos;
        }
        // optional power part (skip when the tail is precisely the log token)
        if (term.compare(pos, log_tok.size(), log_tok) != 0 && term.compare(pos, var.size(), var) == 0) {
            pos += var.size();
            if (pos < term.size() && term[pos] == '^') {
                ++pos;
                if (pos >= term.size() || term[pos] != '(')
                    throw input_error("bad-term", "expected parenthesized exponent in '" + term + "'");
                std::size_t close = term.find(')', pos);
                expo = parse_rational(term.substr(pos + 1, close - pos - 1));
                pos = close + 1;
            } else {
                expo = 1;
            }
            if (pos < term.size() && term[pos] == '*') ++pos;
        }
        // optional log part
        if (term.compare(pos, log_tok.size(), log_tok) == 0) {
            pos += log_tok.size();
            if (pos < term.size() && term[pos] == '^') {
                k = std::stoi(term.substr(pos + 1));
                pos = term.size();
            } else {
                k = 1;
            }
        }
        out.add_term(expo, k, coeff);
    }
    return out;
}

std::string pretty(const LogPowerSum& g, const std::string& argument_label) {
    if (g.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : g.terms()) {
        bool neg = c < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        os << pretty_term(key, neg ? Rational(-c) : c, argument_label);
        first = false;
    }
    return os.str();
}

} // namespace oscint
