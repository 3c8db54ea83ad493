#ifndef ICVISTREAM_BENCH_HPP
#define ICVISTREAM_BENCH_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "icvistream/geometry.hpp"
#include "icvistream/trainer.hpp"

namespace icvistream {

/// Hubert-Arabie adjusted Rand index; permutation-invariant, 1.0 for
/// identical partitions. Requires equal lengths of at least 2.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct AccuracyResult {
    double acc = 0.0;
    std::size_t n_mis = 0;
};

AccuracyResult accuracy(std::span<const int> pred, std::span<const int> truth);

/// Deterministic PRNG helpers: the standard mt19937_64 sequence with a
/// hand-rolled Box-Muller gaussian and rejection-sampled bounded draws,
/// so streams are bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    double uniform01();
    double gaussian(double mean, double stddev);
    std::size_t below(std::size_t bound);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct GaussianSpec {
    Vec mean;
    double sigma = 1.0;
    std::size_t count = 0;
};

struct SyntheticSpec {
    std::vector<GaussianSpec> clusters;
    /// Seven well-separated 2-d gaussians, two in an upper band and
    /// five in a lower band, 1600 samples total. The first two entries
    /// are the upper clusters.
    static SyntheticSpec default7(std::size_t total = 1600);
};

struct Dataset {
    std::vector<Vec> x;
    std::vector<int> y;
    std::size_t dim = 0;
};

Dataset gen_synthetic(std::uint64_t seed, const SyntheticSpec& spec);

enum class Ordering { class_incremental, mixed, random_order };

const char* ordering_name(Ordering o);
std::optional<Ordering> ordering_from_name(const std::string& name);

/// Permute a labeled dataset into one of the three presentation orders.
/// "mixed" keeps the first two label blocks contiguous and shuffles the
/// rest; both shuffles are seed-deterministic.
Dataset order_stream(const Dataset& data, Ordering mode, std::uint64_t seed);

struct EvalResult {
    double ari = 0.0;
    std::size_t k_hat = 0; // distinct predicted clusters
    std::size_t p = 0;     // categories
};

/// Re-present the whole dataset through predict() and score the
/// partition; the model is not mutated.
EvalResult evaluate(const IcviTopoArtMap& model, const Dataset& data);

} // namespace icvistream

#endif
