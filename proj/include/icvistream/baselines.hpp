#ifndef ICVISTREAM_BASELINES_HPP
#define ICVISTREAM_BASELINES_HPP

#include <optional>
#include <span>
#include <vector>

#include "icvistream/art.hpp"

namespace icvistream {

/// Sequential k-means with the winner running-mean update. The first
/// seed_window * k samples are buffered; once full, the centroids are
/// re-seeded by farthest-first traversal over the buffer and the buffer
/// is replayed, which keeps duplicate-cluster seeds from wrecking an
/// otherwise easy stream. Until then it behaves as plain MacQueen
/// (first k samples as centroids).
class SequentialKMeans {
public:
    explicit SequentialKMeans(std::size_t k, std::size_t seed_window = 16)
        : k_(k), buffer_target_(k * seed_window) {}

    std::size_t k() const { return k_; }
    const std::vector<Vec>& centroids() const { return centroids_; }
    const std::vector<long long>& counts() const { return counts_; }

    /// Returns the index of the winning centroid.
    std::size_t step(std::span<const double> x);

    std::size_t predict_one(std::span<const double> x) const;
    std::vector<int> predict(const std::vector<Vec>& samples) const;

private:
    std::size_t k_;
    std::size_t buffer_target_;
    bool seeded_ = false;
    std::vector<Vec> buffer_;
    std::vector<Vec> centroids_;
    std::vector<long long> counts_;

    std::size_t winner_update(std::span<const double> x);
    void reseed_from_buffer();
};

/// Dual-vigilance fuzzy ART with online range tracking and weight
/// re-scaling. Passing the upper vigilance learns into the category;
/// passing only the lower one creates a category inside the same
/// cluster; failing both opens a new cluster.
class WsDualVigilanceArt {
public:
    WsDualVigilanceArt(double rho_ub, double rho_lb, double alpha = 1e-3, double beta = 1.0);

    std::size_t categories() const { return weights_.size(); }
    std::size_t clusters() const { return k_; }
    const RangeState& range() const { return range_; }

    /// Returns the assigned cluster.
    std::size_t step(std::span<const double> x);

    std::size_t predict_one(std::span<const double> x) const;
    std::vector<int> predict(const std::vector<Vec>& samples) const;

private:
    double rho_ub_;
    double rho_lb_;
    double alpha_;
    double beta_;
    RangeState range_;
    std::vector<Vec> weights_;
    std::vector<std::size_t> cluster_of_;
    std::size_t k_ = 0;

    Vec encode(std::span<const double> x) const;
};

/// Topological fuzzy ART with online re-scaling and no map field.
/// Clusters are the connected components of CONN > 0; every prune_every
/// samples, categories holding fewer than min_samples are deleted.
class WsTopoFuzzyArt {
public:
    WsTopoFuzzyArt(ArtParams params, long long prune_every, long long min_samples);

    const TopoFuzzyArt& art() const { return art_; }
    std::size_t categories() const { return art_.size(); }
    std::size_t clusters() const;

    std::size_t step(std::span<const double> x); // returns winning category

    /// Component id per category.
    std::vector<std::size_t> components() const;

    std::size_t predict_one(std::span<const double> x) const;
    std::vector<int> predict(const std::vector<Vec>& samples) const;

private:
    TopoFuzzyArt art_;
    long long prune_every_;
    long long min_samples_;
    long long t_ = 0;
};

enum class NnMetric { euclidean, cosine };

/// Label of the nearest prototype; ties go to the lowest index.
int nn_classify(const std::vector<Vec>& prototypes, const std::vector<int>& labels,
                NnMetric metric, std::span<const double> x);

} // namespace icvistream

#endif
