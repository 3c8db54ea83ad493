#ifndef ICVISTREAM_ICVI_HPP
#define ICVISTREAM_ICVI_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icvistream/art.hpp"
#include "icvistream/conn.hpp"
#include "icvistream/mapfield.hpp"
#include "icvistream/stats.hpp"

namespace icvistream {

enum class IcviKind { ch, wb, pbm, xb, db, conn };

bool is_max_optimal(IcviKind kind);
const char* icvi_name(IcviKind kind);
std::optional<IcviKind> icvi_from_name(const std::string& name);

/// Sum-of-squares index value from per-cluster and whole-data summary
/// statistics. nullopt while fewer than two clusters exist. Zero pair
/// distances are floored at 1e-12 (flagged through *degenerate) so a
/// duplicated centroid cannot poison the stream with NaNs.
std::optional<double> icvi_evaluate(IcviKind kind, std::span<const ClusterStats> clusters,
                                    const GrandStats& grand, bool* degenerate = nullptr);

/// conn_index value from the connectivity matrix and the prototype ->
/// cluster mapping: mean within-cluster connection fraction scaled by
/// one minus the mean worst boundary leakage.
std::optional<double> icvi_evaluate_conn(const ConnMatrix& conn,
                                         std::span<const std::size_t> proto_cluster,
                                         std::size_t k);

struct CommitInfo {
    std::span<const double> x;
    std::size_t cluster; // == cluster_count() appends a new cluster
    std::size_t j1 = 0;
    bool created_new = false;
    std::optional<std::size_t> j2;
    const ConnMatrix* conn = nullptr; // required for IcviKind::conn
};

/// Online incremental cluster validity index state: the selected index,
/// per-cluster and whole-data statistics maintained by exact
/// recursions, the current value, and the checks tracker v.
class IcviState {
public:
    explicit IcviState(IcviKind kind) : kind_(kind) {}

    IcviKind kind() const { return kind_; }
    bool max_optimal() const { return is_max_optimal(kind_); }
    std::size_t cluster_count() const { return clusters_.size(); }
    const std::vector<ClusterStats>& clusters() const { return clusters_; }
    const GrandStats& grand() const { return grand_; }
    const std::vector<std::size_t>& proto_clusters() const { return proto_cluster_; }
    const std::vector<long long>& proto_freq() const { return proto_freq_; }

    /// Current index value; nullopt while fewer than two clusters exist.
    std::optional<double> value() const { return value_; }

    long long tracker() const { return v_; }
    bool degenerate_warned() const { return warned_; }

    /// Fold one presented sample into the selected cluster, the grand
    /// statistics, and (for conn_index) the prototype bookkeeping; then
    /// refresh the value.
    void commit(const CommitInfo& info);

    /// Temporary index values for assigning x to each existing cluster,
    /// negated for min-optimal indices so argmax semantics always hold.
    /// State is untouched; conn_index scoring trains throwaway copies
    /// of module A and the map field for one epoch per cluster.
    std::vector<double> score_assignments(std::span<const double> x, const TopoFuzzyArt& art,
                                          const MapField& mf, double rho_working,
                                          double baseline_rho) const;

    /// One-hot label rows for the argmax set of the scores, ordered by
    /// cluster index.
    static std::vector<Vec> label_matrix(std::span<const double> scores);

    /// iCVI-based match tracking: when the tracker has reached tau the
    /// vigilance is pushed toward rho_mt, otherwise it snaps back to
    /// the user baseline.
    double match_tracking(double rho_a, double rho_baseline, MatchKind kind, double eps_icvi,
                          double rho_mt, long long tau) const;

    /// End-of-step bookkeeping: a worse value increments v, otherwise v
    /// decays toward zero.
    void tracker_update(double value_start, double value_end);

    /// Replace the partition after a post-processing edit and refresh
    /// the value. Cluster statistics must come from the exact
    /// merge/split recursions on the previous partition. proto_freq is
    /// only consulted when the prototype set itself changed
    /// (compression); pass {} to keep the current counters.
    void reset_partition(std::vector<ClusterStats> clusters,
                         std::vector<std::size_t> proto_cluster,
                         std::vector<long long> proto_freq, const ConnMatrix* conn);

    void refresh_value(const ConnMatrix* conn);

private:
    IcviKind kind_;
    std::vector<ClusterStats> clusters_;
    GrandStats grand_;
    std::vector<std::size_t> proto_cluster_;
    std::vector<long long> proto_freq_;
    std::optional<double> value_;
    long long v_ = 0;
    bool warned_ = false;
};

} // namespace icvistream

#endif
