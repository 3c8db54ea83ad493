#include "icvistream/conn.hpp"

#include <stdexcept>

namespace icvistream {

void ConnMatrix::grow() {
    const std::size_t p = p_ + 1;
    std::vector<long long> next(p * p, 0);
    for (std::size_t i = 0; i < p_; ++i) {
        for (std::size_t j = 0; j < p_; ++j) {
            next[i * p + j] = m_[i * p_ + j];
        }
    }
    p_ = p;
    m_ = std::move(next);
}

void ConnMatrix::link(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("ConnMatrix::link: self link");
    if (i >= p_ || j >= p_) throw std::out_of_range("ConnMatrix::link");
    m_[i * p_ + j] += 1;
    m_[j * p_ + i] += 1;
}

void ConnMatrix::remap_blocks(const std::vector<std::vector<std::size_t>>& groups) {
    const std::size_t p = groups.size();
    std::vector<long long> next(p * p, 0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            if (a == b) continue;
            long long s = 0;
            for (std::size_t k : groups[a]) {
                for (std::size_t l : groups[b]) {
                    s += at(k, l);
                }
            }
            next[a * p + b] = s;
        }
    }
    p_ = p;
    m_ = std::move(next);
}

void ConnMatrix::remove(const std::vector<std::size_t>& sorted_indices) {
    if (sorted_indices.empty()) return;
    std::vector<bool> drop(p_, false);
    for (std::size_t i : sorted_indices) drop.at(i) = true;

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < p_; ++i) {
        if (!drop[i]) keep.push_back(i);
    }
    const std::size_t p = keep.size();
    std::vector<long long> next(p * p, 0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            next[a * p + b] = at(keep[a], keep[b]);
        }
    }
    p_ = p;
    m_ = std::move(next);
}

long long ConnMatrix::row_sum(std::size_t i) const {
    long long s = 0;
    for (std::size_t j = 0; j < p_; ++j) s += at(i, j);
    return s;
}

long long ConnMatrix::total() const {
    long long s = 0;
    for (long long v : m_) s += v;
    return s;
}

} // namespace icvistream
