#include "oscint/sublevel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace oscint {

double MonomialPhase::evaluate(const std::vector<double>& x) const {
    double v = to_double(coefficient);
    for (int i = 0; i < exponents.dimension(); ++i) {
        long e = exponents[i];
        if (e > 0) v *= std::pow(x[static_cast<std::size_t>(i)], static_cast<double>(e));
    }
    return v;
}

void SublevelProblem::validate() const {
    if (phases.empty()) throw input_error("no-phase", "problem needs at least one phase");
    if (amplitude.is_zero()) throw input_error("zero-amplitude", "amplitude must be nonzero");
    if (amplitude.dimension() != dimension)
        throw input_error("dimension-mismatch", "amplitude dimension does not match problem");
    for (const auto& p : phases)
        if (p.exponents.dimension() != dimension)
            throw input_error("dimension-mismatch", "phase dimension does not match problem");
}

SublevelFunction monomial_cell_volume(const MultiIndex& alpha, const MultiIndex& m) {
    if (alpha.dimension() != m.dimension())
        throw input_error("dimension-mismatch", "alpha and m must share a dimension");
    if (m.is_zero()) throw input_error("constant-phase", "monomial exponent vector must be nonzero");

    std::vector<int> active;
    Rational inactive_factor(1);
    for (int i = 0; i < m.dimension(); ++i) {
        if (m[i] > 0)
            active.push_back(i);
        else
            inactive_factor /= Rational(alpha[i] + 1);
    }

    // One active variable: int_0^{min(1, t^{1/m})} y^alpha dy.
    const int first = active.front();
    SublevelFunction g;
    g.germ = LogPowerSum::single(Rational(alpha[first] + 1) / Rational(m[first]), 0, Rational(1) / Rational(alpha[first] + 1));
    g.scale = 1;
    g.threshold = 1;
    g.total_mass = Rational(1) / Rational(alpha[first] + 1);
    g.exact_everywhere = true;

    for (std::size_t idx = 1; idx < active.size(); ++idx) {
        const int i = active[idx];
        g = integrate_scaled(g, alpha[i], m[i]);
    }

    g.germ = g.germ.scaled(inactive_factor);
    g.total_mass *= inactive_factor;
    return g;
}

SublevelFunction sublevel_expansion(const SublevelProblem& problem) {
    problem.validate();
    if (problem.phases.size() != 1)
        throw input_error("multi-phase", "sublevel_expansion takes exactly one phase");
    const MonomialPhase& phase = problem.phases.front();

    SublevelFunction out;
    out.scale = phase.coefficient;
    out.threshold = phase.coefficient;
    out.total_mass = problem.amplitude.cube_mass();
    out.exact_everywhere = true;
    for (const auto& [beta, coeff] : problem.amplitude.terms()) {
        SublevelFunction cell = monomial_cell_volume(beta, phase.exponents);
        out.germ += cell.germ.scaled(coeff);
    }
    return out;
}

namespace {

// f_l <= f_k everywhere on the cube iff m_l >= m_k componentwise and c_l <= c_k.
bool globally_dominated_by(const MonomialPhase& fl, const MonomialPhase& fk) {
    if (fl.coefficient > fk.coefficient) return false;
    for (int i = 0; i < fl.exponents.dimension(); ++i)
        if (fl.exponents[i] < fk.exponents[i]) return false;
    return true;
}

struct PrunedPhases {
    std::vector<int> kept;   // original indices, surviving phases
    std::vector<int> pruned; // original indices, globally dominated
};

PrunedPhases prune_phases(const std::vector<MonomialPhase>& phases) {
    for (std::size_t i = 0; i < phases.size(); ++i)
        for (std::size_t j = i + 1; j < phases.size(); ++j)
            if (phases[i] == phases[j])
                throw input_error("duplicate-phase", "phases " + std::to_string(i) + " and " + std::to_string(j) +
                                                         " are identical");
    PrunedPhases out;
    for (std::size_t l = 0; l < phases.size(); ++l) {
        bool dominated = false;
        for (std::size_t k = 0; k < phases.size() && !dominated; ++k)
            if (k != l && globally_dominated_by(phases[l], phases[k])) dominated = true;
        (dominated ? out.pruned : out.kept).push_back(static_cast<int>(l));
    }
    return out;
}

MonomialPhase pulled_phase_of(const MonomialPhase& phase, const MonomialMap& map) {
    auto exps = pullback_exponents(
        std::vector<std::int64_t>(phase.exponents.exponents().begin(), phase.exponents.exponents().end()), map);
    return MonomialPhase(phase.coefficient, MultiIndex(std::vector<long>(exps.begin(), exps.end())));
}

} // namespace

std::vector<DominantCell> dominant_phase_per_cell(const std::vector<MonomialPhase>& phases) {
    if (phases.size() < 2) throw input_error("too-few-phases", "dominance needs at least two phases");
    const int n = phases.front().exponents.dimension();
    for (const auto& p : phases)
        if (p.exponents.dimension() != n) throw input_error("dimension-mismatch", "phases of mixed dimension");

    PrunedPhases pruned = prune_phases(phases);

    std::vector<DominantCell> out;
    if (pruned.kept.size() == 1) {
        // A single survivor dominates the whole cube: the identity cell.
        ConeCell cell;
        std::vector<std::vector<std::int64_t>> rays;
        for (int i = 0; i < n; ++i) {
            std::vector<std::int64_t> r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(i)] = -1;
            rays.push_back(std::move(r));
        }
        cell.cone.rays = std::move(rays);
        cell.cone.H = IntMatrix::identity(n);
        cell.map.eps = IntMatrix::identity(n);
        cell.map.N = 1;
        cell.jacobian = jacobian_of(cell.map);
        DominantCell dc;
        dc.cell = std::move(cell);
        dc.dominant_index = pruned.kept.front();
        dc.pulled_phase = phases[static_cast<std::size_t>(pruned.kept.front())];
        out.push_back(std::move(dc));
        return out;
    }

    // Pairwise ratios f_i / f_j over survivors, i < j in kept order.
    std::vector<LaurentMonomial> ratios;
    std::vector<std::pair<int, int>> pairs; // indices into pruned.kept
    for (std::size_t a = 0; a < pruned.kept.size(); ++a) {
        for (std::size_t b = a + 1; b < pruned.kept.size(); ++b) {
            const auto& fi = phases[static_cast<std::size_t>(pruned.kept[a])];
            const auto& fj = phases[static_cast<std::size_t>(pruned.kept[b])];
            std::vector<std::int64_t> diff(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) diff[static_cast<std::size_t>(i)] = fi.exponents[i] - fj.exponents[i];
            ratios.emplace_back(fi.coefficient / fj.coefficient, std::move(diff));
            pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }

    for (auto& cell : decompose_domain(ratios)) {
        // The feasible sign pattern is a strict total order of the survivor
        // monomials on the cell; find its maximum.
        const std::size_t K = pruned.kept.size();
        std::vector<int> beaten(K, 0);
        for (std::size_t r = 0; r < ratios.size(); ++r) {
            auto [a, b] = pairs[r];
            // below: monomial(f_a/f_b) <= 1 on the cell, so b beats a.
            if (cell.sign_pattern[r] == RatioSign::below)
                beaten[static_cast<std::size_t>(a)] = 1;
            else
                beaten[static_cast<std::size_t>(b)] = 1;
        }
        int max_pos = -1;
        for (std::size_t a = 0; a < K; ++a)
            if (!beaten[a]) {
                if (max_pos >= 0) throw invariant_error("ambiguous-dominance", "sign pattern is not a total order");
                max_pos = static_cast<int>(a);
            }
        if (max_pos < 0) throw invariant_error("ambiguous-dominance", "sign pattern has no maximal phase");

        // The monomial ratio of any other phase to the candidate is <= 1 on
        // the cell, with supremum 1 at the corner (1,..,1); the constants
        // must therefore also be ordered or no single phase dominates.
        const int dominant = pruned.kept[static_cast<std::size_t>(max_pos)];
        for (int k : pruned.kept)
            if (phases[static_cast<std::size_t>(k)].coefficient > phases[static_cast<std::size_t>(dominant)].coefficient)
                throw unsupported_error("incomparable-phases",
                                        "no phase dominates a cell: the configuration needs affine cuts "
                                        "outside the homogeneous cone decomposition");

        DominantCell dc;
        dc.dominant_index = dominant;
        dc.pulled_phase = pulled_phase_of(phases[static_cast<std::size_t>(dominant)], cell.map);
        dc.cell = std::move(cell);
        out.push_back(std::move(dc));
    }
    return out;
}

MultiPhaseExpansion expand_multi_detailed(const SublevelProblem& problem) {
    problem.validate();
    MultiPhaseExpansion out;

    if (problem.phases.size() == 1) {
        out.combined = sublevel_expansion(problem);
        return out;
    }

    PrunedPhases pruned = prune_phases(problem.phases);
    out.pruned = pruned.pruned;
    if (pruned.kept.size() == 1) {
        SublevelProblem single{{problem.phases[static_cast<std::size_t>(pruned.kept.front())]}, problem.amplitude,
                               problem.dimension};
        out.combined = sublevel_expansion(single);
        return out;
    }

    std::vector<MonomialPhase> survivors;
    for (int k : pruned.kept) survivors.push_back(problem.phases[static_cast<std::size_t>(k)]);
    std::vector<DominantCell> cells = dominant_phase_per_cell(survivors);
    // map survivor-local dominant indices back to the original list
    for (auto& dc : cells) dc.dominant_index = pruned.kept[static_cast<std::size_t>(dc.dominant_index)];

    SublevelFunction combined;
    bool first = true;
    for (auto& dc : cells) {
        // Amplitude in cell coordinates: each x^beta becomes
        // |det eps| * z^{eps beta + sigma - 1} by the change of variables.
        PolynomialAmplitude amp_z(problem.dimension);
        const LaurentMonomial& jac = dc.cell.jacobian;
        for (const auto& [beta, coeff] : problem.amplitude.terms()) {
            auto exps = pullback_exponents(
                std::vector<std::int64_t>(beta.exponents().begin(), beta.exponents().end()), dc.cell.map);
            std::vector<long> total(exps.size());
            for (std::size_t i = 0; i < exps.size(); ++i)
                total[i] = static_cast<long>(exps[i] + jac.exponents[i]);
            amp_z.add_term(MultiIndex(std::move(total)), coeff * jac.coefficient);
        }

        SublevelProblem cell_problem{{dc.pulled_phase}, amp_z, problem.dimension};
        SublevelFunction part = sublevel_expansion(cell_problem);

        if (first) {
            combined = part;
            first = false;
        } else {
            if (part.scale != combined.scale)
                throw invariant_error("mixed-scales", "cells with distinct dominant constants survived dominance");
            combined.germ += part.germ;
            combined.total_mass += part.total_mass;
        }
        out.cells.push_back(CellContribution{std::move(dc), std::move(amp_z), std::move(part)});
    }
    combined.threshold = combined.scale;
    combined.exact_everywhere = true;
    assert(combined.total_mass == problem.amplitude.cube_mass());
    out.combined = std::move(combined);
    return out;
}

SublevelFunction expand_multi(const SublevelProblem& problem) { return expand_multi_detailed(problem).combined; }

} // namespace oscint
