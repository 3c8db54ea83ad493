#include "icvistream/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace icvistream {

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("ari: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("ari: need at least two samples");

    std::map<int, std::size_t> ia, ib;
    for (int v : a) ia.emplace(v, ia.size());
    for (int v : b) ib.emplace(v, ib.size());

    std::vector<std::vector<long long>> table(ia.size(), std::vector<long long>(ib.size(), 0));
    for (std::size_t i = 0; i < n; ++i) {
        table[ia[a[i]]][ib[b[i]]] += 1;
    }
    auto comb2 = [](long long m) { return static_cast<double>(m) * (m - 1) / 2.0; };

    double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (std::size_t r = 0; r < table.size(); ++r) {
        long long row = 0;
        for (std::size_t c = 0; c < table[r].size(); ++c) {
            sum_ij += comb2(table[r][c]);
            row += table[r][c];
        }
        sum_a += comb2(row);
    }
    for (std::size_t c = 0; c < table[0].size(); ++c) {
        long long col = 0;
        for (std::size_t r = 0; r < table.size(); ++r) col += table[r][c];
        sum_b += comb2(col);
    }
    const double expected = sum_a * sum_b / comb2(static_cast<long long>(n));
    const double maximum = 0.5 * (sum_a + sum_b);
    if (maximum == expected) return 1.0; // both partitions trivial
    return (sum_ij - expected) / (maximum - expected);
}

AccuracyResult accuracy(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) throw std::invalid_argument("accuracy: length mismatch");
    if (pred.empty()) throw std::invalid_argument("accuracy: empty input");
    AccuracyResult r;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] != truth[i]) r.n_mis += 1;
    }
    r.acc = 1.0 - static_cast<double>(r.n_mis) / static_cast<double>(pred.size());
    return r;
}

double Rng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::gaussian(double mean, double stddev) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + stddev * spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return mean + stddev * u * f;
}

std::size_t Rng::below(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
}

SyntheticSpec SyntheticSpec::default7(std::size_t total) {
    // two upper clusters, five lower ones, mimicking a band layout
    const std::vector<Vec> means = {
        {2.5, 8.0}, {6.5, 8.0},                                  // upper
        {0.0, 0.0}, {2.5, 1.6}, {5.0, 0.0}, {7.5, 1.6}, {10.0, 0.0}, // lower
    };
    SyntheticSpec spec;
    const std::size_t base = total / means.size();
    const std::size_t extra = total % means.size();
    for (std::size_t i = 0; i < means.size(); ++i) {
        GaussianSpec g;
        g.mean = means[i];
        g.sigma = 0.35;
        g.count = base + (i < extra ? 1 : 0);
        spec.clusters.push_back(std::move(g));
    }
    return spec;
}

Dataset gen_synthetic(std::uint64_t seed, const SyntheticSpec& spec) {
    if (spec.clusters.empty()) throw std::invalid_argument("gen_synthetic: empty spec");
    Rng rng(seed);
    Dataset data;
    data.dim = spec.clusters.front().mean.size();
    for (std::size_t c = 0; c < spec.clusters.size(); ++c) {
        const auto& g = spec.clusters[c];
        if (g.mean.size() != data.dim) {
            throw std::invalid_argument("gen_synthetic: inconsistent dimensions");
        }
        for (std::size_t i = 0; i < g.count; ++i) {
            Vec x(data.dim);
            for (std::size_t f = 0; f < data.dim; ++f) {
                x[f] = rng.gaussian(g.mean[f], g.sigma);
            }
            data.x.push_back(std::move(x));
            data.y.push_back(static_cast<int>(c));
        }
    }
    return data;
}

const char* ordering_name(Ordering o) {
    switch (o) {
    case Ordering::class_incremental: return "class_incremental";
    case Ordering::mixed: return "mixed";
    case Ordering::random_order: return "random";
    }
    return "?";
}

std::optional<Ordering> ordering_from_name(const std::string& name) {
    if (name == "class_incremental" || name == "class-incremental" || name == "ordered") {
        return Ordering::class_incremental;
    }
    if (name == "mixed") return Ordering::mixed;
    if (name == "random" || name == "shuffled") return Ordering::random_order;
    return std::nullopt;
}

Dataset order_stream(const Dataset& data, Ordering mode, std::uint64_t seed) {
    std::vector<std::size_t> idx;

    // label blocks in first-appearance order
    std::vector<int> block_order;
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        auto [it, inserted] = blocks.try_emplace(data.y[i]);
        if (inserted) block_order.push_back(data.y[i]);
        it->second.push_back(i);
    }

    Rng rng(seed);
    switch (mode) {
    case Ordering::class_incremental:
        for (int label : block_order) {
            for (std::size_t i : blocks[label]) idx.push_back(i);
        }
        break;
    case Ordering::mixed: {
        std::size_t head = std::min<std::size_t>(2, block_order.size());
        for (std::size_t b = 0; b < head; ++b) {
            for (std::size_t i : blocks[block_order[b]]) idx.push_back(i);
        }
        std::vector<std::size_t> rest;
        for (std::size_t b = head; b < block_order.size(); ++b) {
            for (std::size_t i : blocks[block_order[b]]) rest.push_back(i);
        }
        rng.shuffle(rest);
        idx.insert(idx.end(), rest.begin(), rest.end());
        break;
    }
    case Ordering::random_order:
        idx.resize(data.x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        rng.shuffle(idx);
        break;
    }

    Dataset out;
    out.dim = data.dim;
    out.x.reserve(idx.size());
    out.y.reserve(idx.size());
    for (std::size_t i : idx) {
        out.x.push_back(data.x[i]);
        out.y.push_back(data.y[i]);
    }
    return out;
}

EvalResult evaluate(const IcviTopoArtMap& model, const Dataset& data) {
    EvalResult r;
    const auto pred = model.predict(data.x);
    r.ari = adjusted_rand_index(pred, data.y);
    r.k_hat = std::set<int>(pred.begin(), pred.end()).size();
    r.p = model.categories();
    return r;
}

} // namespace icvistream
