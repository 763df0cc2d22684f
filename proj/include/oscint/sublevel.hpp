#ifndef OSCINT_SUBLEVEL_HPP
#define OSCINT_SUBLEVEL_HPP

#include <vector>

#include "oscint/cone.hpp"
#include "oscint/multi_index.hpp"
#include "oscint/polynomial.hpp"
#include "oscint/sublevel_function.hpp"

namespace oscint {

// c * prod x_i^{m_i} with positive rational c and a nonconstant monomial.
struct MonomialPhase {
    Rational coefficient{1};
    MultiIndex exponents;

    MonomialPhase() = default;
    MonomialPhase(Rational c, MultiIndex m) : coefficient(std::move(c)), exponents(std::move(m)) {
        if (coefficient <= 0) throw input_error("nonpositive-coefficient", "phase coefficient must be positive");
        if (exponents.is_zero()) throw input_error("constant-phase", "phase monomial must be nonconstant");
    }

    double evaluate(const std::vector<double>& x) const;

    friend bool operator==(const MonomialPhase& a, const MonomialPhase& b) {
        return a.coefficient == b.coefficient && a.exponents == b.exponents;
    }
};

struct SublevelProblem {
    std::vector<MonomialPhase> phases;
    PolynomialAmplitude amplitude;
    int dimension = 0;

    void validate() const;
};

// E(t; alpha, m) = int over {y in (0,1)^n : y^m < t} of y^alpha, exact, by
// iterating the scaled 1-D integral over the variables with m_i > 0;
// variables with m_i = 0 factor out as 1/(alpha_i + 1).
SublevelFunction monomial_cell_volume(const MultiIndex& alpha, const MultiIndex& m);

// Single-phase expansion K(t) = sum_beta Phi_beta E(t/c; beta, m); the germ
// is exact with rational coefficients in u = t/c.
SublevelFunction sublevel_expansion(const SublevelProblem& problem);

// One cell of the multi-phase reduction: after decomposing by all pairwise
// phase ratios, a single phase dominates the cell.
struct DominantCell {
    ConeCell cell;
    int dominant_index = 0;     // position in the original phase list
    MonomialPhase pulled_phase; // dominant phase in cell coordinates
};

std::vector<DominantCell> dominant_phase_per_cell(const std::vector<MonomialPhase>& phases);

struct CellContribution {
    DominantCell cell;
    PolynomialAmplitude cell_amplitude; // pulled amplitude times the Jacobian monomial
    SublevelFunction part;
};

struct MultiPhaseExpansion {
    SublevelFunction combined;
    std::vector<CellContribution> cells;  // empty when no decomposition was needed
    std::vector<int> pruned;              // phases removed as globally dominated
};

// Volume of {x in (0,1)^n : max_l f_l(x) < t} against the amplitude.
MultiPhaseExpansion expand_multi_detailed(const SublevelProblem& problem);
SublevelFunction expand_multi(const SublevelProblem& problem);

} // namespace oscint

#endif
