#include "oscint/int_matrix.hpp"

#include <cassert>

namespace oscint {

namespace {

// Determinant over cpp_int by fraction-free (Bareiss) elimination.
Int det_big(std::vector<Int> m, int n) {
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<std::size_t>(k) * n + k] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r) * n + k] != 0) { p = r; break; }
            if (p < 0) return Int(0);
            for (int c = 0; c < n; ++c)
                std::swap(m[static_cast<std::size_t>(k) * n + c], m[static_cast<std::size_t>(p) * n + c]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                Int v = m[static_cast<std::size_t>(r) * n + c] * m[static_cast<std::size_t>(k) * n + k] -
                        m[static_cast<std::size_t>(r) * n + k] * m[static_cast<std::size_t>(k) * n + c];
                m[static_cast<std::size_t>(r) * n + c] = v / prev; // exact division in Bareiss
            }
            m[static_cast<std::size_t>(r) * n + k] = 0;
        }
        prev = m[static_cast<std::size_t>(k) * n + k];
    }
    Int d = m[static_cast<std::size_t>(n - 1) * n + (n - 1)];
    return sign > 0 ? d : Int(-d);
}

} // namespace

IntMatrix::IntMatrix(int n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw invariant_error("matrix-shape", "entry count does not match declared size");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Int IntMatrix::det() const {
    std::vector<Int> big(a_.begin(), a_.end());
    return det_big(std::move(big), n_);
}

IntMatrix IntMatrix::adjugate() const {
    IntMatrix out(n_);
    if (n_ == 1) {
        out(0, 0) = 1;
        return out;
    }
    // Cofactor expansion; adj(M)_{ij} = (-1)^{i+j} minor_{ji}.
    std::vector<Int> minor(static_cast<std::size_t>(n_ - 1) * (n_ - 1));
    for (int r = 0; r < n_; ++r) {
        for (int c = 0; c < n_; ++c) {
            int mr = 0;
            for (int i = 0; i < n_; ++i) {
                if (i == c) continue;
                int mc = 0;
                for (int j = 0; j < n_; ++j) {
                    if (j == r) continue;
                    minor[static_cast<std::size_t>(mr) * (n_ - 1) + mc] = Int((*this)(i, j));
                    ++mc;
                }
                ++mr;
            }
            Int cof = det_big(minor, n_ - 1);
            if (((r + c) & 1) != 0) cof = -cof;
            out(r, c) = to_int64(cof);
        }
    }
#ifndef NDEBUG
    {
        IntMatrix check = out.mul(*this);
        Int d = det();
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                assert(Int(check(i, j)) == (i == j ? d : Int(0)));
    }
#endif
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

IntMatrix IntMatrix::mul(const IntMatrix& rhs) const {
    if (rhs.n_ != n_) throw invariant_error("matrix-shape", "size mismatch in multiply");
    IntMatrix out(n_);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            Int acc(0);
            for (int k = 0; k < n_; ++k) acc += Int((*this)(r, k)) * rhs(k, c);
            out(r, c) = to_int64(acc);
        }
    return out;
}

std::vector<std::int64_t> IntMatrix::row_sums() const {
    std::vector<std::int64_t> s(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r) {
        Int acc(0);
        for (int c = 0; c < n_; ++c) acc += Int((*this)(r, c));
        s[static_cast<std::size_t>(r)] = to_int64(acc);
    }
    return s;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& v) const {
    if (v.size() != static_cast<std::size_t>(n_))
        throw invariant_error("matrix-shape", "vector length mismatch in apply");
    std::vector<std::int64_t> out(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r) {
        Int acc(0);
        for (int c = 0; c < n_; ++c) acc += Int((*this)(r, c)) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = to_int64(acc);
    }
    return out;
}

} // namespace oscint
