#ifndef ICVISTREAM_TRAINER_HPP
#define ICVISTREAM_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "icvistream/config.hpp"

namespace icvistream {

/// Per-sample record emitted by step(). The schema is versioned; readers
/// must ignore fields they do not know.
struct StepReport {
    static constexpr int schema_version = 1;
    long long t = 0;
    std::size_t cluster = 0;
    std::size_t k = 0; // clusters
    std::size_t p = 0; // categories
    double rho_a = 0.0;
    long long v = 0;
    std::optional<double> icvi_value;
    std::size_t category = 0; // first resonant category
    bool created_category = false;
};

/// The full online clustering engine: topological fuzzy ART module A,
/// associative map field, online iCVI framework, and the end-of-step
/// restructuring strategies, orchestrated one sample at a time.
class IcviTopoArtMap {
public:
    explicit IcviTopoArtMap(Config cfg);

    /// Present one raw sample, optionally with a supervised label
    /// (labels take priority over iCVI-generated assignments).
    StepReport step(std::span<const double> x, std::optional<int> label = std::nullopt);

    /// Cluster id for one sample: gated activation winner, labeled
    /// through its map field row; falls back to the overall activation
    /// winner when nothing passes. Never learns.
    std::size_t predict_one(std::span<const double> x) const;

    std::vector<int> predict(const std::vector<Vec>& samples) const;

    long long samples_seen() const { return t_; }
    std::size_t categories() const { return art_.size(); }
    std::size_t clusters() const { return mf_.clusters(); }
    double vigilance() const { return rho_a_; }
    std::optional<double> icvi_value() const { return icvi_.value(); }
    long long tracker() const { return icvi_.tracker(); }

    const Config& config() const { return cfg_; }
    const std::unordered_map<int, std::size_t>& label_map() const { return label_to_cluster_; }
    const TopoFuzzyArt& art() const { return art_; }
    const MapField& mapfield() const { return mf_; }
    const IcviState& icvi() const { return icvi_; }
    const Warnings& warnings() const { return warnings_; }

    /// Observer for compression adoptions: receives the member groups
    /// (old category indices per surviving category). Used for
    /// telemetry and by the test-mode history shadow.
    void set_compress_observer(std::function<void(const std::vector<std::vector<std::size_t>>&)> fn) {
        on_compress_ = std::move(fn);
    }

    /// Order-insensitive digest of the learned state.
    std::uint64_t state_digest() const;

private:
    Config cfg_;
    TopoFuzzyArt art_;
    MapField mf_;
    IcviState icvi_;
    double rho_a_;
    long long t_ = 0;
    bool unsupervised_seen_ = false;
    std::unordered_map<int, std::size_t> label_to_cluster_;
    Warnings warnings_;
    std::function<void(const std::vector<std::vector<std::size_t>>&)> on_compress_;

    std::size_t map_label(int label);
    Vec encode_for_predict(std::span<const double> x) const;
    StepReport make_report(std::size_t cluster, std::size_t j1, bool created) const;
};

std::vector<StepReport> run_stream(IcviTopoArtMap& model, const std::vector<Vec>& samples,
                                   const std::vector<std::optional<int>>* labels = nullptr);

} // namespace icvistream

#endif
