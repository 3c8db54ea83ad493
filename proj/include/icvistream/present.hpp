#ifndef ICVISTREAM_PRESENT_HPP
#define ICVISTREAM_PRESENT_HPP

#include <optional>
#include <span>
#include <vector>

#include "icvistream/art.hpp"
#include "icvistream/mapfield.hpp"

namespace icvistream {

/// What the map field is asked to honor for one presentation.
struct LabelTarget {
    enum class Kind { none, supervised, matrix };
    Kind kind = Kind::none;
    Vec y;                  // supervised one-hot
    std::vector<Vec> rows;  // label matrix from the iCVI framework

    static LabelTarget none() { return {}; }
    static LabelTarget supervised(Vec y);
    static LabelTarget matrix(std::vector<Vec> rows);
};

struct PresentOutcome {
    std::size_t j1 = 0;
    bool created = false;
    std::optional<std::size_t> j2;
    std::size_t cluster = 0;
};

/// One joint module A / map field presentation: resonance search with
/// the map field acceptance test (standard match tracking on mismatch,
/// scoped to this call), first/second resonant learning, CONN update,
/// and map field adaptation or expansion. The data range must already
/// be up to date and x_a encoded against it.
PresentOutcome present(TopoFuzzyArt& art, MapField& mf, std::span<const double> x_a,
                       std::span<const double> x_raw, const LabelTarget& target,
                       double rho_working, double baseline_rho);

} // namespace icvistream

#endif
