#include "icvistream/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "icvistream/stats.hpp"

namespace icvistream {

std::size_t SequentialKMeans::winner_update(std::span<const double> x) {
    const std::size_t w = predict_one(x);
    auto& c = centroids_[w];
    const double n = static_cast<double>(counts_[w]);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] += (x[i] - c[i]) / (n + 1.0);
    }
    counts_[w] += 1;
    return w;
}

void SequentialKMeans::reseed_from_buffer() {
    // farthest-first traversal over the buffer, then replay
    std::vector<std::size_t> seeds{0};
    std::vector<double> dist(buffer_.size(), std::numeric_limits<double>::infinity());
    while (seeds.size() < k_ && seeds.size() < buffer_.size()) {
        const auto& last = buffer_[seeds.back()];
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < buffer_.size(); ++i) {
            dist[i] = std::min(dist[i], squared_distance(buffer_[i], last));
            if (dist[i] > far_d) {
                far_d = dist[i];
                far = i;
            }
        }
        seeds.push_back(far);
    }
    centroids_.clear();
    counts_.clear();
    std::vector<bool> is_seed(buffer_.size(), false);
    for (std::size_t s : seeds) {
        centroids_.push_back(buffer_[s]);
        counts_.push_back(1);
        is_seed[s] = true;
    }
    for (std::size_t i = 0; i < buffer_.size(); ++i) {
        if (!is_seed[i]) winner_update(buffer_[i]);
    }
    buffer_.clear();
    seeded_ = true;
}

std::size_t SequentialKMeans::step(std::span<const double> x) {
    if (!seeded_) {
        buffer_.emplace_back(x.begin(), x.end());
        std::size_t w;
        if (centroids_.size() < k_) {
            centroids_.emplace_back(x.begin(), x.end());
            counts_.push_back(1);
            w = centroids_.size() - 1;
        } else {
            w = winner_update(x);
        }
        if (buffer_.size() >= buffer_target_) reseed_from_buffer();
        return w;
    }
    return winner_update(x);
}

std::size_t SequentialKMeans::predict_one(std::span<const double> x) const {
    if (centroids_.empty()) throw std::logic_error("SequentialKMeans: no centroids");
    std::size_t best = 0;
    double best_d = squared_distance(x, centroids_[0]);
    for (std::size_t i = 1; i < centroids_.size(); ++i) {
        const double d = squared_distance(x, centroids_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<int> SequentialKMeans::predict(const std::vector<Vec>& samples) const {
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = static_cast<int>(predict_one(samples[i]));
    }
    return out;
}

WsDualVigilanceArt::WsDualVigilanceArt(double rho_ub, double rho_lb, double alpha, double beta)
    : rho_ub_(rho_ub), rho_lb_(rho_lb), alpha_(alpha), beta_(beta) {
    if (rho_lb > rho_ub) throw std::invalid_argument("WsDualVigilanceArt: rho_lb > rho_ub");
}

Vec WsDualVigilanceArt::encode(std::span<const double> x) const {
    return normalize_cc(range_, x);
}

std::size_t WsDualVigilanceArt::step(std::span<const double> x) {
    if (!range_.initialized()) {
        range_ = RangeState(x);
    } else {
        RangeState before = range_;
        if (observe(range_, x)) {
            rescale_weights(before, range_, weights_);
        }
    }
    const Vec xa = encode(x);
    const double d = static_cast<double>(range_.dim());

    std::vector<std::size_t> order(weights_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<double> act(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        act[i] = fuzzy_activation(xa, weights_[i], alpha_);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return act[a] > act[b]; });

    for (std::size_t j : order) {
        const double m = fuzzy_and_l1(xa, weights_[j]) / d;
        if (m >= rho_ub_) {
            auto& w = weights_[j];
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] = (1.0 - beta_) * w[i] + beta_ * std::min(xa[i], w[i]);
            }
            return cluster_of_[j];
        }
        if (m >= rho_lb_) {
            // new category inside the resonant category's cluster
            weights_.push_back(xa);
            cluster_of_.push_back(cluster_of_[j]);
            return cluster_of_[j];
        }
    }
    weights_.push_back(xa);
    cluster_of_.push_back(k_);
    k_ += 1;
    return k_ - 1;
}

std::size_t WsDualVigilanceArt::predict_one(std::span<const double> x) const {
    if (weights_.empty()) throw std::logic_error("WsDualVigilanceArt: empty model");
    Vec t = normalize(range_, x);
    for (auto& v : t) v = std::clamp(v, 0.0, 1.0);
    Vec xa(2 * t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        xa[i] = t[i];
        xa[t.size() + i] = 1.0 - t[i];
    }
    std::size_t best = 0;
    double best_t = -1.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        const double a = fuzzy_activation(xa, weights_[j], alpha_);
        if (a > best_t) {
            best_t = a;
            best = j;
        }
    }
    return cluster_of_[best];
}

std::vector<int> WsDualVigilanceArt::predict(const std::vector<Vec>& samples) const {
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = static_cast<int>(predict_one(samples[i]));
    }
    return out;
}

WsTopoFuzzyArt::WsTopoFuzzyArt(ArtParams params, long long prune_every, long long min_samples)
    : art_(params), prune_every_(prune_every), min_samples_(min_samples) {}

std::size_t WsTopoFuzzyArt::step(std::span<const double> x) {
    t_ += 1;
    art_.observe(x);
    const Vec xa = art_.encode(x);

    std::size_t j1;
    if (art_.size() == 0) {
        j1 = art_.create_category(xa, x);
    } else {
        double rho = art_.params().rho;
        const auto found =
            art_.search(xa, x, &rho, [](std::size_t, double) { return true; });
        bool created = false;
        if (found) {
            j1 = found->j1;
            art_.learn_first(j1, xa, x);
        } else {
            j1 = art_.create_category(xa, x);
            created = true;
        }
        art_.second_resonant(xa, x, j1, created, art_.params().rho);
    }

    if (prune_every_ > 0 && min_samples_ > 0 && t_ % prune_every_ == 0) {
        std::vector<std::size_t> doomed;
        for (std::size_t j = 0; j < art_.size(); ++j) {
            if (art_.category(j).stats.n < min_samples_) doomed.push_back(j);
        }
        if (!doomed.empty() && doomed.size() < art_.size()) {
            art_.remove_categories(doomed);
        }
    }
    return j1;
}

std::vector<std::size_t> WsTopoFuzzyArt::components() const {
    const std::size_t p = art_.size();
    std::vector<std::size_t> comp(p, static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (std::size_t s = 0; s < p; ++s) {
        if (comp[s] != static_cast<std::size_t>(-1)) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = next;
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < p; ++v) {
                if (comp[v] == static_cast<std::size_t>(-1) && art_.conn().at(u, v) > 0) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        next += 1;
    }
    return comp;
}

std::size_t WsTopoFuzzyArt::clusters() const {
    std::size_t k = 0;
    for (std::size_t c : components()) k = std::max(k, c + 1);
    return k;
}

std::size_t WsTopoFuzzyArt::predict_one(std::span<const double> x) const {
    if (art_.size() == 0) throw std::logic_error("WsTopoFuzzyArt: empty model");
    Vec t = normalize(art_.range(), x);
    for (auto& v : t) v = std::clamp(v, 0.0, 1.0);
    Vec xa(2 * t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        xa[i] = t[i];
        xa[t.size() + i] = 1.0 - t[i];
    }
    const auto j = art_.winner(xa, x, art_.params().rho);
    const auto comp = components();
    return comp[j ? *j : art_.argmax_activation(xa)];
}

std::vector<int> WsTopoFuzzyArt::predict(const std::vector<Vec>& samples) const {
    const auto comp = components();
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = static_cast<int>(predict_one(samples[i]));
    }
    return out;
}

int nn_classify(const std::vector<Vec>& prototypes, const std::vector<int>& labels,
                NnMetric metric, std::span<const double> x) {
    if (prototypes.empty() || prototypes.size() != labels.size()) {
        throw std::invalid_argument("nn_classify: bad prototype set");
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < prototypes.size(); ++i) {
        const double d = metric == NnMetric::euclidean
                             ? squared_distance(x, prototypes[i])
                             : cosine_distance(x, prototypes[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return labels[best];
}

} // namespace icvistream
