#ifndef ICVISTREAM_ART_HPP
#define ICVISTREAM_ART_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "icvistream/conn.hpp"
#include "icvistream/geometry.hpp"
#include "icvistream/stats.hpp"

namespace icvistream {

enum class MatchKind { fuzzy, cosine };

struct ArtParams {
    double rho = 0.0;    // baseline vigilance
    double beta1 = 1.0;  // learning rate, first resonant category
    double beta2 = 0.0;  // learning rate, second resonant category
    double alpha = 1e-3; // choice parameter
    MatchKind match = MatchKind::fuzzy;
    bool uncommitted_gate = true; // require T > activation of an uncommitted node
};

/// One prototype: complement-coded hyperbox weight, raw-domain summary
/// statistics, and an inactivity counter (presentations since it last
/// was the first resonant category).
struct Category {
    Vec w;
    ClusterStats stats;
    long long inactivity = 0;
};

double fuzzy_and_l1(std::span<const double> a, std::span<const double> b);
double fuzzy_activation(std::span<const double> x_a, std::span<const double> w, double alpha);
double cosine_distance(std::span<const double> a, std::span<const double> b);

/// Topological fuzzy ART with online input normalization, weight
/// re-scaling, per-category summary statistics, inactivity counters,
/// and a CONN connectivity matrix.
class TopoFuzzyArt {
public:
    explicit TopoFuzzyArt(ArtParams params) : params_(params) {}

    const ArtParams& params() const { return params_; }
    std::size_t size() const { return categories_.size(); }
    std::size_t dim() const { return range_.dim(); }
    const Category& category(std::size_t j) const { return categories_[j]; }
    const std::vector<Category>& categories() const { return categories_; }
    const ConnMatrix& conn() const { return conn_; }
    const RangeState& range() const { return range_; }

    /// Absorb x into the data range; on expansion all weights are
    /// re-scaled before any activation is computed. Returns true iff
    /// the range moved.
    bool observe(std::span<const double> x);

    /// Complement-coded input under the current range.
    Vec encode(std::span<const double> x) const { return normalize_cc(range_, x); }

    double activation(std::span<const double> x_a, std::size_t j) const;

    /// Activation of an uncommitted (all-ones) node; the gate every
    /// committed candidate must beat. -1 when the gate is disabled.
    double uncommitted_activation() const;

    double match_fuzzy(std::span<const double> x_a, std::size_t j) const;
    double match_cosine(std::span<const double> x_raw, std::size_t j) const;
    double match_value(std::span<const double> x_a, std::span<const double> x_raw,
                       std::size_t j) const;
    bool match_passes(double m, double rho) const;

    /// Category indices sorted by activation descending, index ascending on ties.
    std::vector<std::size_t> ranked_by_activation(std::span<const double> x_a) const;

    struct Found {
        std::size_t j1;
        double match;
    };

    /// Resonance search. Candidates are visited in activation order,
    /// gated by the uncommitted activation, tested against the current
    /// *rho (re-read on every candidate so match tracking applied by
    /// the accept callback takes effect mid-search), and finally
    /// offered to accept(j, match). nullopt means a new category is
    /// the outcome.
    std::optional<Found> search(std::span<const double> x_a, std::span<const double> x_raw,
                                const double* rho,
                                const std::function<bool(std::size_t, double)>& accept) const;

    /// First-resonant learning: weight fuzzy-min blend, statistics from
    /// the raw sample, and the per-presentation inactivity cycle (all
    /// counters +1, then the winner reset to 0).
    void learn_first(std::size_t j1, std::span<const double> x_a, std::span<const double> x_raw);

    /// Append a new category (w = x_a, singleton stats); CONN grows by
    /// one zero row/column. Runs the inactivity cycle. Returns its index.
    std::size_t create_category(std::span<const double> x_a, std::span<const double> x_raw);

    /// Second resonant category: searched at the baseline vigilance
    /// among those ranked below j1 (or the full prior set if j1 is
    /// new). Learns its weight with beta2 and links CONN(j1, j2).
    std::optional<std::size_t> second_resonant(std::span<const double> x_a,
                                               std::span<const double> x_raw, std::size_t j1,
                                               bool created_new, double baseline_rho);

    /// Gated winner for prediction: highest-activation category passing
    /// the uncommitted gate and the match test; nullopt when none does.
    std::optional<std::size_t> winner(std::span<const double> x_a,
                                      std::span<const double> x_raw, double rho) const;

    std::size_t argmax_activation(std::span<const double> x_a) const;

    /// Drop categories (for baseline pruning); CONN rows follow.
    void remove_categories(const std::vector<std::size_t>& sorted_indices);

    /// Wholesale replacement used by compression.
    void adopt(std::vector<Category> categories, ConnMatrix conn);

private:
    ArtParams params_;
    RangeState range_;
    std::vector<Category> categories_;
    ConnMatrix conn_;

    void cycle_inactivity(std::size_t winner_index);
};

} // namespace icvistream

#endif
