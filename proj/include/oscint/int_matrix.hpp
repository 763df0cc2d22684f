#ifndef OSCINT_INT_MATRIX_HPP
#define OSCINT_INT_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "oscint/rational.hpp"

namespace oscint {

// Square integer matrix with exact determinant and adjugate.  Minors are
// computed in arbitrary precision and narrowed back, so entry growth in the
// cofactor expansion can never wrap around.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
    IntMatrix(int n, std::vector<std::int64_t> entries);

    static IntMatrix identity(int n);

    int size() const { return n_; }
    std::int64_t operator()(int r, int c) const { return a_[idx(r, c)]; }
    std::int64_t& operator()(int r, int c) { return a_[idx(r, c)]; }

    Int det() const;

    // adj(M) * M = det(M) * I; defined for every square matrix.
    IntMatrix adjugate() const;

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& rhs) const;

    // Row sums (used for monomial Jacobian exponents).
    std::vector<std::int64_t> row_sums() const;

    // Matrix times integer vector.
    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
    friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }
    friend bool operator<(const IntMatrix& a, const IntMatrix& b) { return a.a_ < b.a_; }

private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * n_ + c; }

    int n_ = 0;
    std::vector<std::int64_t> a_;
};

} // namespace oscint

#endif
