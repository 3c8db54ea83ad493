#ifndef ICVISTREAM_MAPFIELD_HPP
#define ICVISTREAM_MAPFIELD_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "icvistream/art.hpp"

namespace icvistream {

enum class MtSign { plus, minus };
enum class ClusterMode { variable, fixed };

struct MapFieldParams {
    double rho_ab = 1.0;
    double beta_ab = 1.0;
    double eps = 0.01; // match tracking step
    MtSign mt = MtSign::plus;
    ClusterMode mode = ClusterMode::variable;
};

/// Associative map from module A categories (rows) to clusters
/// (columns). With beta_ab = 1 and one-hot targets every committed row
/// is one-hot, so cluster_of() is the row argmax.
class MapField {
public:
    explicit MapField(MapFieldParams params) : params_(params) {}

    const MapFieldParams& params() const { return params_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t clusters() const { return k_; }
    const Vec& row(std::size_t j) const { return rows_[j]; }

    std::size_t cluster_of(std::size_t j) const;

    struct MatchResult {
        double value;
        std::size_t best_row; // index into Y
    };

    /// Effective match of category j1 against a label matrix: the max
    /// over rows of |y ^ w| / |y| (ties to the lowest row).
    MatchResult match(std::size_t j1, const std::vector<Vec>& label_matrix) const;

    /// Supervised path: a single test against the provided label.
    double match_supervised(std::size_t j1, const Vec& y) const;

    bool vigilance_passes(double m_ab) const { return m_ab >= params_.rho_ab; }

    /// New module A vigilance after a map field mismatch (standard
    /// match tracking). MT- lowers instead of raising.
    double track(double m_a, MatchKind kind) const;

    /// Row update w <- (1-b) w + b (y ^ w).
    void learn(std::size_t j1, const Vec& target);

    /// Expansion for a freshly created module A category.
    /// Supervised targets pin the cluster in either mode. Otherwise,
    /// variable mode opens a new cluster (one extra column) while fixed
    /// mode re-uses target_cluster (or cluster 0 when none is known).
    /// Returns the cluster of the new row.
    std::size_t expand_for_new_category(const std::optional<Vec>& supervised,
                                        std::optional<std::size_t> target_cluster);

    // --- post-processing edits ---
    void set_row_onehot(std::size_t j, std::size_t cluster);
    void add_column();
    /// Rewrite every row one-hot through old-cluster -> new-cluster and
    /// shrink to new_k columns.
    void relabel_clusters(const std::vector<std::size_t>& old_to_new, std::size_t new_k);
    /// Rows mapping to each cluster.
    std::vector<std::vector<std::size_t>> members() const;
    /// Replace all rows (compression adopt).
    void adopt_rows(std::vector<Vec> rows, std::size_t k);

    static Vec one_hot(std::size_t k, std::size_t cluster);

private:
    MapFieldParams params_;
    std::vector<Vec> rows_;
    std::size_t k_ = 0;
};

} // namespace icvistream

#endif
