#ifndef OSCINT_MULTI_INDEX_HPP
#define OSCINT_MULTI_INDEX_HPP

#include <numeric>
#include <vector>

#include "oscint/errors.hpp"

namespace oscint {

// Vector of nonnegative integer exponents with a fixed length equal to the
// ambient dimension of the enclosing problem.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<long> exponents) : e_(std::move(exponents)) {
        for (long v : e_)
            if (v < 0) throw input_error("negative-exponent", "multi-index entries must be nonnegative");
    }

    static MultiIndex zeros(int dimension) { return MultiIndex(std::vector<long>(dimension, 0)); }

    int dimension() const { return static_cast<int>(e_.size()); }
    long operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<long>& exponents() const { return e_; }

    long degree() const { return std::accumulate(e_.begin(), e_.end(), 0L); }
    bool is_zero() const {
        for (long v : e_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.e_ < b.e_; }

private:
    std::vector<long> e_;
};

} // namespace oscint

#endif
