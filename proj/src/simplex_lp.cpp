#include "oscint/simplex_lp.hpp"

#include <cstddef>

namespace oscint {

namespace {

// Dense tableau: rows = constraints, one extra objective row at the end,
// columns = structural + slack + artificial variables, one extra RHS column.
class Tableau {
public:
    Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows + 1) * (cols + 1)) {}

    Rational& at(int r, int c) { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
    Rational& rhs(int r) { return at(r, cols_); }
    Rational& obj(int c) { return at(rows_, c); }
    Rational& obj_rhs() { return at(rows_, cols_); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void pivot(int pr, int pc) {
        Rational inv = Rational(1) / at(pr, pc);
        for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
        for (int r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            Rational f = at(r, pc);
            if (f == 0) continue;
            for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
        }
    }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

enum class RunResult { optimal, unbounded };

// Bland's rule simplex on a tableau whose objective row holds reduced costs
// (entering column = most-negative-free: smallest index with obj < 0).
RunResult run_simplex(Tableau& t, std::vector<int>& basis, int allowed_cols) {
    for (;;) {
        int enter = -1;
        for (int c = 0; c < allowed_cols; ++c) {
            if (t.obj(c) < 0) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return RunResult::optimal;

        int leave = -1;
        Rational best_ratio;
        for (int r = 0; r < t.rows(); ++r) {
            if (t.at(r, enter) <= 0) continue;
            Rational ratio = t.rhs(r) / t.at(r, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return RunResult::unbounded;

        t.pivot(leave, enter);
        basis[static_cast<std::size_t>(leave)] = enter;
    }
}

// Load the objective row with reduced costs for maximizing cvec.
void set_objective(Tableau& t, const std::vector<int>& basis, const std::vector<Rational>& cvec) {
    for (int c = 0; c <= t.cols(); ++c) t.obj(c) = 0;
    for (int c = 0; c < static_cast<int>(cvec.size()); ++c) t.obj(c) = -cvec[static_cast<std::size_t>(c)];
    for (int r = 0; r < t.rows(); ++r) {
        int bc = basis[static_cast<std::size_t>(r)];
        Rational cb = bc < static_cast<int>(cvec.size()) ? cvec[static_cast<std::size_t>(bc)] : Rational(0);
        if (cb == 0) continue;
        for (int c = 0; c <= t.cols(); ++c) t.obj(c) += cb * t.at(r, c);
    }
}

} // namespace

LpSolution lp_maximize(const std::vector<std::vector<Rational>>& A,
                       const std::vector<Rational>& b,
                       const std::vector<Rational>& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());

    int n_art = 0;
    for (const auto& bi : b)
        if (bi < 0) ++n_art;

    const int slack0 = n;
    const int art0 = n + m;
    const int total = n + m + n_art;

    Tableau t(m, total);
    std::vector<int> basis(static_cast<std::size_t>(m), -1);

    int art = art0;
    for (int r = 0; r < m; ++r) {
        const bool flip = b[static_cast<std::size_t>(r)] < 0;
        const Rational sgn = flip ? Rational(-1) : Rational(1);
        for (int cidx = 0; cidx < n; ++cidx)
            t.at(r, cidx) = sgn * A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cidx)];
        t.at(r, slack0 + r) = sgn;
        t.rhs(r) = sgn * b[static_cast<std::size_t>(r)];
        if (flip) {
            t.at(r, art) = 1;
            basis[static_cast<std::size_t>(r)] = art;
            ++art;
        } else {
            basis[static_cast<std::size_t>(r)] = slack0 + r;
        }
    }

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials).
        std::vector<Rational> phase1(static_cast<std::size_t>(total), Rational(0));
        for (int cidx = art0; cidx < total; ++cidx) phase1[static_cast<std::size_t>(cidx)] = -1;
        set_objective(t, basis, phase1);
        run_simplex(t, basis, total); // bounded below by construction
        if (t.obj_rhs() != 0) {
            LpSolution sol;
            sol.status = LpSolution::Status::infeasible;
            return sol;
        }
        // Drive any degenerate artificial out of the basis.
        for (int r = 0; r < m; ++r) {
            if (basis[static_cast<std::size_t>(r)] < art0) continue;
            int pc = -1;
            for (int cidx = 0; cidx < art0; ++cidx)
                if (t.at(r, cidx) != 0) {
                    pc = cidx;
                    break;
                }
            if (pc >= 0) {
                t.pivot(r, pc);
                basis[static_cast<std::size_t>(r)] = pc;
            }
            // else: the row is a redundant constraint (all-zero over real
            // columns); it stays inert with rhs 0 and cannot pivot again.
        }
    }

    std::vector<Rational> cvec(static_cast<std::size_t>(total), Rational(0));
    for (int cidx = 0; cidx < n; ++cidx) cvec[static_cast<std::size_t>(cidx)] = c[static_cast<std::size_t>(cidx)];
    set_objective(t, basis, cvec);
    RunResult rr = run_simplex(t, basis, art0); // artificials may not re-enter

    LpSolution sol;
    if (rr == RunResult::unbounded) {
        sol.status = LpSolution::Status::unbounded;
        return sol;
    }
    sol.status = LpSolution::Status::optimal;
    sol.objective = t.obj_rhs();
    sol.x.assign(static_cast<std::size_t>(n), Rational(0));
    for (int r = 0; r < m; ++r) {
        int bc = basis[static_cast<std::size_t>(r)];
        if (bc >= 0 && bc < n) sol.x[static_cast<std::size_t>(bc)] = t.rhs(r);
    }
    return sol;
}

} // namespace oscint
