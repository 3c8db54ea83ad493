#include "icvistream/mapfield.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace icvistream {

Vec MapField::one_hot(std::size_t k, std::size_t cluster) {
    Vec y(k, 0.0);
    y.at(cluster) = 1.0;
    return y;
}

std::size_t MapField::cluster_of(std::size_t j) const {
    const Vec& r = rows_.at(j);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (r[i] > r[best]) best = i;
    }
    return best;
}

MapField::MatchResult MapField::match(std::size_t j1, const std::vector<Vec>& label_matrix) const {
    if (label_matrix.empty()) throw std::invalid_argument("MapField::match: empty label matrix");
    MatchResult out{-1.0, 0};
    for (std::size_t i = 0; i < label_matrix.size(); ++i) {
        const double m = match_supervised(j1, label_matrix[i]);
        if (m > out.value) {
            out.value = m;
            out.best_row = i;
        }
    }
    return out;
}

double MapField::match_supervised(std::size_t j1, const Vec& y) const {
    const Vec& w = rows_.at(j1);
    if (y.size() != w.size()) throw std::invalid_argument("MapField: label width mismatch");
    const double norm_y = std::accumulate(y.begin(), y.end(), 0.0);
    if (norm_y <= 0.0) throw std::invalid_argument("MapField: zero label");
    return fuzzy_and_l1(y, w) / norm_y;
}

double MapField::track(double m_a, MatchKind kind) const {
    const double eps = params_.mt == MtSign::plus ? params_.eps : -params_.eps;
    if (kind == MatchKind::fuzzy) {
        return std::max(std::min(m_a + eps, 1.0), 0.0);
    }
    return std::min(std::max(m_a - eps, 0.0), 2.0);
}

void MapField::learn(std::size_t j1, const Vec& target) {
    Vec& w = rows_.at(j1);
    if (target.size() != w.size()) throw std::invalid_argument("MapField::learn: width mismatch");
    const double b = params_.beta_ab;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = (1.0 - b) * w[i] + b * std::min(target[i], w[i]);
    }
}

std::size_t MapField::expand_for_new_category(const std::optional<Vec>& supervised,
                                              std::optional<std::size_t> target_cluster) {
    if (rows_.empty() && k_ == 0) {
        // very first category: W^ab starts as [1]
        rows_.push_back(Vec{1.0});
        k_ = 1;
        return 0;
    }
    if (supervised) {
        if (supervised->size() != k_) {
            throw std::invalid_argument("MapField: supervised label width mismatch");
        }
        rows_.push_back(*supervised);
        return cluster_of(rows_.size() - 1);
    }
    if (params_.mode == ClusterMode::variable) {
        add_column();
        rows_.push_back(one_hot(k_, k_ - 1));
        return k_ - 1;
    }
    const std::size_t c = target_cluster.value_or(0);
    rows_.push_back(one_hot(k_, c));
    return c;
}

void MapField::set_row_onehot(std::size_t j, std::size_t cluster) {
    rows_.at(j) = one_hot(k_, cluster);
}

void MapField::add_column() {
    k_ += 1;
    for (auto& r : rows_) r.push_back(0.0);
}

void MapField::relabel_clusters(const std::vector<std::size_t>& old_to_new, std::size_t new_k) {
    if (old_to_new.size() != k_) throw std::invalid_argument("relabel_clusters: size mismatch");
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        const std::size_t c = old_to_new[cluster_of(j)];
        if (c >= new_k) throw std::invalid_argument("relabel_clusters: target out of range");
        rows_[j] = one_hot(new_k, c);
    }
    k_ = new_k;
}

std::vector<std::vector<std::size_t>> MapField::members() const {
    std::vector<std::vector<std::size_t>> m(k_);
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        m[cluster_of(j)].push_back(j);
    }
    return m;
}

void MapField::adopt_rows(std::vector<Vec> rows, std::size_t k) {
    for (const auto& r : rows) {
        if (r.size() != k) throw std::invalid_argument("adopt_rows: width mismatch");
    }
    rows_ = std::move(rows);
    k_ = k;
}

} // namespace icvistream
