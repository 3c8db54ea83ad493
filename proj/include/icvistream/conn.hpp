#ifndef ICVISTREAM_CONN_HPP
#define ICVISTREAM_CONN_HPP

#include <cstddef>
#include <vector>

namespace icvistream {

/// Symmetric P x P connectivity counts between categories (zero diagonal).
/// An entry counts how often two categories were first and second
/// resonant for the same sample.
class ConnMatrix {
public:
    ConnMatrix() = default;
    explicit ConnMatrix(std::size_t p) : p_(p), m_(p * p, 0) {}

    std::size_t size() const { return p_; }

    long long at(std::size_t i, std::size_t j) const { return m_[i * p_ + j]; }

    /// Append one all-zero row and column.
    void grow();

    /// Increment both (i, j) and (j, i); i == j is rejected.
    void link(std::size_t i, std::size_t j);

    /// Block-sum remap: entry (a, b) of the result accumulates all
    /// old entries between groups[a] and groups[b]. Mass internal to a
    /// group is dropped (the diagonal stays zero).
    void remap_blocks(const std::vector<std::vector<std::size_t>>& groups);

    /// Remove the given rows/columns (indices ascending).
    void remove(const std::vector<std::size_t>& sorted_indices);

    long long row_sum(std::size_t i) const;
    long long total() const;

private:
    std::size_t p_ = 0;
    std::vector<long long> m_;
};

} // namespace icvistream

#endif
