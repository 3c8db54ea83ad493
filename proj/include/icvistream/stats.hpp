#ifndef ICVISTREAM_STATS_HPP
#define ICVISTREAM_STATS_HPP

#include <span>
#include <vector>

#include "icvistream/geometry.hpp"

namespace icvistream {

/// Summary statistics of a set of raw samples: frequency, mean, and
/// hard compactness (sum of squared deviations from the mean).
/// All update rules are exact recursions of the batch quantities.
struct ClusterStats {
    long long n = 0;
    Vec mu;
    double cp = 0.0;

    bool empty() const { return n == 0; }
    std::size_t dim() const { return mu.size(); }
};

/// Whole-data statistics use the same recursions.
using GrandStats = ClusterStats;

ClusterStats stats_init(std::span<const double> x);

/// Add one sample. The compactness term uses the pre-update mean.
void stats_add(ClusterStats& s, std::span<const double> x);

/// Pooled statistics of the union; exact, symmetric, associative
/// (up to rounding). The cross term uses the pre-merge means.
ClusterStats stats_merge(const ClusterStats& a, const ClusterStats& b);

/// Exact inverse of stats_merge: split(merge(a,b), b) == a.
/// whole.n == part.n yields an empty result (caller deletes the cluster).
/// Throws std::logic_error if the removal is numerically inconsistent.
ClusterStats stats_split(const ClusterStats& whole, const ClusterStats& part);

double squared_distance(std::span<const double> a, std::span<const double> b);

} // namespace icvistream

#endif
