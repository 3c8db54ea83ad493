#include "icvistream/art.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace icvistream {

double fuzzy_and_l1(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::min(a[i], b[i]);
    }
    return s;
}

double fuzzy_activation(std::span<const double> x_a, std::span<const double> w, double alpha) {
    const double norm_w = std::accumulate(w.begin(), w.end(), 0.0);
    return fuzzy_and_l1(x_a, w) / (alpha + norm_w);
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) return 2.0; // zero vector: maximal mismatch
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

bool TopoFuzzyArt::observe(std::span<const double> x) {
    if (!range_.initialized()) {
        range_ = RangeState(x);
        return false;
    }
    RangeState before = range_;
    const bool expanded = icvistream::observe(range_, x);
    if (expanded && !categories_.empty()) {
        // a feature whose old interval was a single point collapses to
        // its correct new coordinate through the affine map (scale 0)
        for (auto& c : categories_) {
            c.w = rescale_weight(before, range_, c.w);
        }
    }
    return expanded;
}

double TopoFuzzyArt::activation(std::span<const double> x_a, std::size_t j) const {
    return fuzzy_activation(x_a, categories_[j].w, params_.alpha);
}

double TopoFuzzyArt::uncommitted_activation() const {
    if (!params_.uncommitted_gate) return -1.0;
    const double d = static_cast<double>(dim());
    return d / (params_.alpha + 2.0 * d);
}

double TopoFuzzyArt::match_fuzzy(std::span<const double> x_a, std::size_t j) const {
    return fuzzy_and_l1(x_a, categories_[j].w) / static_cast<double>(dim());
}

double TopoFuzzyArt::match_cosine(std::span<const double> x_raw, std::size_t j) const {
    return cosine_distance(x_raw, categories_[j].stats.mu);
}

double TopoFuzzyArt::match_value(std::span<const double> x_a, std::span<const double> x_raw,
                                 std::size_t j) const {
    return params_.match == MatchKind::fuzzy ? match_fuzzy(x_a, j) : match_cosine(x_raw, j);
}

bool TopoFuzzyArt::match_passes(double m, double rho) const {
    return params_.match == MatchKind::fuzzy ? m >= rho : m <= rho;
}

std::vector<std::size_t> TopoFuzzyArt::ranked_by_activation(std::span<const double> x_a) const {
    std::vector<double> t(categories_.size());
    for (std::size_t j = 0; j < categories_.size(); ++j) {
        t[j] = activation(x_a, j);
    }
    std::vector<std::size_t> order(categories_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t[a] > t[b]; });
    return order;
}

std::optional<TopoFuzzyArt::Found> TopoFuzzyArt::search(
    std::span<const double> x_a, std::span<const double> x_raw, const double* rho,
    const std::function<bool(std::size_t, double)>& accept) const {
    const double gate = uncommitted_activation();
    for (std::size_t j : ranked_by_activation(x_a)) {
        if (activation(x_a, j) <= gate) break; // sorted: the rest fail too
        const double m = match_value(x_a, x_raw, j);
        if (!match_passes(m, *rho)) continue;
        if (!accept(j, m)) continue;
        return Found{j, m};
    }
    return std::nullopt;
}

void TopoFuzzyArt::cycle_inactivity(std::size_t winner_index) {
    for (auto& c : categories_) {
        c.inactivity += 1;
    }
    categories_[winner_index].inactivity = 0;
}

void TopoFuzzyArt::learn_first(std::size_t j1, std::span<const double> x_a,
                               std::span<const double> x_raw) {
    auto& c = categories_[j1];
    const double b = params_.beta1;
    for (std::size_t i = 0; i < c.w.size(); ++i) {
        c.w[i] = (1.0 - b) * c.w[i] + b * std::min(x_a[i], c.w[i]);
    }
    stats_add(c.stats, x_raw);
    cycle_inactivity(j1);
}

std::size_t TopoFuzzyArt::create_category(std::span<const double> x_a,
                                          std::span<const double> x_raw) {
    Category c;
    c.w.assign(x_a.begin(), x_a.end());
    c.stats = stats_init(x_raw);
    categories_.push_back(std::move(c));
    conn_.grow();
    cycle_inactivity(categories_.size() - 1);
    return categories_.size() - 1;
}

std::optional<std::size_t> TopoFuzzyArt::second_resonant(std::span<const double> x_a,
                                                         std::span<const double> x_raw,
                                                         std::size_t j1, bool created_new,
                                                         double baseline_rho) {
    const double gate = uncommitted_activation();
    auto order = ranked_by_activation(x_a);

    std::size_t start = 0;
    if (!created_new) {
        // resume just below j1 in the activation ranking
        while (start < order.size() && order[start] != j1) ++start;
        ++start;
    }
    for (std::size_t pos = start; pos < order.size(); ++pos) {
        const std::size_t j = order[pos];
        if (j == j1) continue;
        if (activation(x_a, j) <= gate) break;
        if (!match_passes(match_value(x_a, x_raw, j), baseline_rho)) continue;

        auto& c = categories_[j];
        const double b = params_.beta2;
        for (std::size_t i = 0; i < c.w.size(); ++i) {
            c.w[i] = (1.0 - b) * c.w[i] + b * std::min(x_a[i], c.w[i]);
        }
        conn_.link(j1, j);
        return j;
    }
    return std::nullopt;
}

std::optional<std::size_t> TopoFuzzyArt::winner(std::span<const double> x_a,
                                                std::span<const double> x_raw,
                                                double rho) const {
    const double gate = uncommitted_activation();
    for (std::size_t j : ranked_by_activation(x_a)) {
        if (activation(x_a, j) <= gate) break;
        if (match_passes(match_value(x_a, x_raw, j), rho)) return j;
    }
    return std::nullopt;
}

std::size_t TopoFuzzyArt::argmax_activation(std::span<const double> x_a) const {
    if (categories_.empty()) throw std::logic_error("argmax_activation: empty network");
    return ranked_by_activation(x_a).front();
}

void TopoFuzzyArt::remove_categories(const std::vector<std::size_t>& sorted_indices) {
    if (sorted_indices.empty()) return;
    std::vector<bool> drop(categories_.size(), false);
    for (std::size_t i : sorted_indices) drop.at(i) = true;
    std::vector<Category> kept;
    kept.reserve(categories_.size() - sorted_indices.size());
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        if (!drop[i]) kept.push_back(std::move(categories_[i]));
    }
    categories_ = std::move(kept);
    conn_.remove(sorted_indices);
}

void TopoFuzzyArt::adopt(std::vector<Category> categories, ConnMatrix conn) {
    if (categories.size() != conn.size()) {
        throw std::invalid_argument("adopt: CONN size mismatch");
    }
    categories_ = std::move(categories);
    conn_ = std::move(conn);
}

} // namespace icvistream
