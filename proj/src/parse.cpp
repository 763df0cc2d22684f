#include "oscint/parse.hpp"

#include <cctype>

namespace oscint {

ExpressionAST ExpressionAST::padded(int target_dimension) const {
    if (target_dimension < dimension)
        throw input_error("dimension-mismatch", "cannot shrink an expression's dimension");
    ExpressionAST out;
    out.dimension = target_dimension;
    for (const auto& [exps, coeff] : terms) {
        std::vector<long> padded_exps = exps;
        padded_exps.resize(static_cast<std::size_t>(target_dimension), 0);
        out.terms.emplace(std::move(padded_exps), coeff);
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(const std::string& text, bool allow_negative) : s_(text), allow_negative_(allow_negative) {}

    ExpressionAST run() {
        skip_ws();
        if (eof()) throw ParseError("empty-expression", "expected an expression", col());
        ExpressionAST ast;
        bool negative = accept('-');
        parse_term(ast, negative);
        skip_ws();
        while (!eof()) {
            char op = peek();
            if (op != '+' && op != '-') throw ParseError("unexpected-token", "expected '+' or '-'", col());
            ++pos_;
            parse_term(ast, op == '-');
            skip_ws();
        }
        // dimension = max variable index; normalize exponent vectors
        ExpressionAST out;
        out.dimension = dim_;
        for (auto& [exps, coeff] : ast.terms) {
            if (coeff == 0) continue;
            std::vector<long> e = exps;
            e.resize(static_cast<std::size_t>(dim_), 0);
            auto it = out.terms.find(e);
            if (it == out.terms.end())
                out.terms.emplace(std::move(e), coeff);
            else {
                it->second += coeff;
                if (it->second == 0) out.terms.erase(it);
            }
        }
        return out;
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    int col() const { return static_cast<int>(pos_) + 1; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (!eof() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string read_digits() {
        skip_ws();
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected-number", "expected digits", col());
        return s_.substr(start, pos_ - start);
    }

    Rational read_rational() {
        std::string num = read_digits();
        if (accept('/')) {
            std::string den = read_digits();
            if (Int(den) == 0) throw ParseError("bad-rational", "zero denominator", col());
            return make_rational(Int(num), Int(den));
        }
        return Rational(Int(num));
    }

    long read_exponent(int caret_col) {
        skip_ws();
        bool neg = false;
        if (!eof() && peek() == '-') {
            if (!allow_negative_)
                throw ParseError("negative-exponent-forbidden", "negative exponents are not allowed here", caret_col);
            neg = true;
            ++pos_;
        }
        std::string digits = read_digits();
        long v = std::stol(digits);
        return neg ? -v : v;
    }

    void parse_term(ExpressionAST& ast, bool negative) {
        Rational coeff = negative ? Rational(-1) : Rational(1);
        std::vector<long> exps;
        bool any_factor = false;
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= read_rational();
                any_factor = true;
            } else if (c == 'x') {
                int var_col = col();
                ++pos_;
                std::string digits = read_digits();
                int idx = std::stoi(digits);
                if (idx < 1) throw ParseError("bad-variable", "variable indices start at x1", var_col);
                long e = 1;
                skip_ws();
                if (!eof() && peek() == '^') {
                    int caret_col = col();
                    ++pos_;
                    e = read_exponent(caret_col);
                }
                if (static_cast<int>(exps.size()) < idx) exps.resize(static_cast<std::size_t>(idx), 0);
                exps[static_cast<std::size_t>(idx - 1)] += e;
                dim_ = std::max(dim_, idx);
                any_factor = true;
            } else {
                break;
            }
            if (!accept('*')) break;
        }
        if (!any_factor) throw ParseError("expected-factor", "expected a number or variable", col());
        auto it = ast.terms.find(exps);
        if (it == ast.terms.end())
            ast.terms.emplace(std::move(exps), coeff);
        else
            it->second += coeff;
    }

    const std::string& s_;
    bool allow_negative_;
    std::size_t pos_ = 0;
    int dim_ = 0;
};

} // namespace

ExpressionAST parse_expression(const std::string& text, bool allow_negative_exponents) {
    return Parser(text, allow_negative_exponents).run();
}

MonomialPhase ast_to_phase(const ExpressionAST& ast, int dimension) {
    ExpressionAST p = ast.padded(dimension);
    if (p.terms.size() != 1) throw input_error("not-a-monomial", "a phase must be a single monomial term");
    const auto& [exps, coeff] = *p.terms.begin();
    if (coeff <= 0) throw input_error("nonpositive-coefficient", "phase coefficient must be positive");
    for (long e : exps)
        if (e < 0) throw input_error("negative-exponent", "phase exponents must be nonnegative");
    return MonomialPhase(coeff, MultiIndex(exps));
}

PolynomialAmplitude ast_to_amplitude(const ExpressionAST& ast, int dimension) {
    ExpressionAST p = ast.padded(dimension);
    PolynomialAmplitude amp(dimension);
    for (const auto& [exps, coeff] : p.terms) {
        for (long e : exps)
            if (e < 0) throw input_error("negative-exponent", "amplitude exponents must be nonnegative");
        amp.add_term(MultiIndex(exps), coeff);
    }
    if (amp.is_zero()) throw input_error("zero-amplitude", "amplitude must be nonzero");
    return amp;
}

LaurentMonomial ast_to_ratio(const ExpressionAST& ast, int dimension) {
    ExpressionAST p = ast.padded(dimension);
    if (p.terms.size() != 1) throw input_error("not-a-monomial", "a ratio must be a single monomial term");
    const auto& [exps, coeff] = *p.terms.begin();
    if (coeff <= 0) throw input_error("nonpositive-coefficient", "ratio coefficient must be positive");
    std::vector<std::int64_t> e(exps.begin(), exps.end());
    return LaurentMonomial(coeff, std::move(e));
}

} // namespace oscint
