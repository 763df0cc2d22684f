#ifndef OSCINT_PARSE_HPP
#define OSCINT_PARSE_HPP

#include <map>
#include <string>
#include <vector>

#include "oscint/laurent_monomial.hpp"
#include "oscint/polynomial.hpp"
#include "oscint/sublevel.hpp"

namespace oscint {

// Canonical parsed expression: merged like terms over signed exponent
// vectors, zero coefficients dropped, dimension = largest variable index.
struct ExpressionAST {
    int dimension = 0;
    std::map<std::vector<long>, Rational> terms;

    ExpressionAST padded(int target_dimension) const;
};

// Syntax error with a 1-based column.
class ParseError : public EngineError {
public:
    ParseError(std::string code, const std::string& what, int column)
        : EngineError(ErrorCode::input, std::move(code), what + " at column " + std::to_string(column)),
          column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

// Grammar (whitespace-insensitive):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | var ['^' int]
//   var    := 'x' digits       (variables are fixed as x1..xn)
//   rational := digits ['/' digits]
// Exponents may be negative only when allow_negative_exponents is set.
ExpressionAST parse_expression(const std::string& text, bool allow_negative_exponents = false);

// Conversions with the validation each consumer requires.
MonomialPhase ast_to_phase(const ExpressionAST& ast, int dimension);
PolynomialAmplitude ast_to_amplitude(const ExpressionAST& ast, int dimension);
LaurentMonomial ast_to_ratio(const ExpressionAST& ast, int dimension);

} // namespace oscint

#endif
