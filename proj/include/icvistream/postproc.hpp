#ifndef ICVISTREAM_POSTPROC_HPP
#define ICVISTREAM_POSTPROC_HPP

#include <vector>

#include "icvistream/config.hpp"

namespace icvistream {

/// End-of-step restructuring strategies. Each coordinates the map
/// field rows/columns, the iCVI partition state, and (compression
/// only) module A itself. Cluster statistics always move through the
/// exact merge/split recursions. Each returns whether an edit was
/// applied.

/// Greedy improving migration of single categories between
/// CONN-connected clusters.
bool run_swap(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg);

/// Hierarchical merge emulation down to two clusters; the best stage
/// is adopted when it improves the current value. Gated on v == 0.
bool run_merge(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg);

/// Split per the configured type. Gated on v > tau.
bool run_split(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg);

struct CompressOutcome {
    bool applied = false;
    std::vector<std::vector<std::size_t>> groups; // old categories per surviving one
};

/// Self-supervised category compression through an inner fuzzy ARTMAP
/// over the inactive categories; adopted only when it shrinks the
/// category count.
CompressOutcome run_compress(TopoFuzzyArt& art, MapField& mf, IcviState& icvi,
                             const Config& cfg, Warnings* warnings);

/// Reassign inactive categories of under-populated clusters to the
/// cluster of their nearest active category.
bool run_prune_reassign(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg);

} // namespace icvistream

#endif
