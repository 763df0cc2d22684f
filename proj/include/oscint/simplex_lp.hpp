#ifndef OSCINT_SIMPLEX_LP_HPP
#define OSCINT_SIMPLEX_LP_HPP

#include <vector>

#include "oscint/rational.hpp"

namespace oscint {

// Exact rational linear program  max c.x  s.t.  A x <= b, x >= 0.
// Two-phase tableau simplex with Bland's rule, so it terminates on every
// input.  Problem sizes here are tiny (cone feasibility and halfspace
// redundancy checks), so no effort is spent on sparsity.
struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rational objective{0};
    std::vector<Rational> x;
};

LpSolution lp_maximize(const std::vector<std::vector<Rational>>& A,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c);

} // namespace oscint

#endif
