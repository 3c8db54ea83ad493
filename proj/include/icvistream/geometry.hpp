#ifndef ICVISTREAM_GEOMETRY_HPP
#define ICVISTREAM_GEOMETRY_HPP

#include <span>
#include <vector>

namespace icvistream {

using Vec = std::vector<double>;

/// Running per-feature minima/maxima of the raw data seen so far.
/// The interval only grows over a run; normalization and weight
/// re-scaling are both driven by it.
struct RangeState {
    Vec x_min;
    Vec x_max;

    RangeState() = default;
    explicit RangeState(std::span<const double> first_sample);

    std::size_t dim() const { return x_min.size(); }
    bool initialized() const { return !x_min.empty(); }

    double span_of(std::size_t i) const { return x_max[i] - x_min[i]; }
};

/// Absorb a sample into the range. Returns true iff any bound moved.
/// Throws std::invalid_argument on dimension mismatch.
bool observe(RangeState& range, std::span<const double> x);

/// Min-max normalization of one component; a degenerate feature
/// (max == min) maps to 0.5 so complement coding stays well-formed.
double normalize_component(const RangeState& range, std::size_t i, double xi);

/// T(x): componentwise min-max normalization, length d.
Vec normalize(const RangeState& range, std::span<const double> x);

/// Complement-coded input [T(x), 1 - T(x)], length 2d, L1 norm exactly d.
Vec normalize_cc(const RangeState& range, std::span<const double> x);

/// Inverse of normalize() for a normalized vector (length d).
Vec denormalize(const RangeState& range, std::span<const double> t);

/// Re-scale one complement-coded weight w = [u, v_bar] (length 2d) from
/// range_old coordinates to range_new coordinates. The represented
/// raw-domain hyperbox is preserved up to the clamps (u at 0, v at 1).
/// Throws if range_new does not contain range_old.
Vec rescale_weight(const RangeState& range_old, const RangeState& range_new,
                   std::span<const double> w);

void rescale_weights(const RangeState& range_old, const RangeState& range_new,
                     std::vector<Vec>& weights);

} // namespace icvistream

#endif
