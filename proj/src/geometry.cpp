#include "icvistream/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace icvistream {

namespace {

void check_dim(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                    std::to_string(expected) + ", got " +
                                    std::to_string(got));
    }
}

} // namespace

RangeState::RangeState(std::span<const double> first_sample)
    : x_min(first_sample.begin(), first_sample.end()),
      x_max(first_sample.begin(), first_sample.end()) {}

bool observe(RangeState& range, std::span<const double> x) {
    if (!range.initialized()) {
        range = RangeState(x);
        return false;
    }
    check_dim(range.dim(), x.size(), "observe");
    bool expanded = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < range.x_min[i]) {
            range.x_min[i] = x[i];
            expanded = true;
        }
        if (x[i] > range.x_max[i]) {
            range.x_max[i] = x[i];
            expanded = true;
        }
    }
    return expanded;
}

double normalize_component(const RangeState& range, std::size_t i, double xi) {
    const double span = range.span_of(i);
    if (span <= 0.0) return 0.5;
    return (xi - range.x_min[i]) / span;
}

Vec normalize(const RangeState& range, std::span<const double> x) {
    check_dim(range.dim(), x.size(), "normalize");
    Vec t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        t[i] = normalize_component(range, i, x[i]);
    }
    return t;
}

Vec normalize_cc(const RangeState& range, std::span<const double> x) {
    const std::size_t d = range.dim();
    check_dim(d, x.size(), "normalize_cc");
    Vec cc(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        const double t = normalize_component(range, i, x[i]);
        cc[i] = t;
        cc[d + i] = 1.0 - t;
    }
    return cc;
}

Vec denormalize(const RangeState& range, std::span<const double> t) {
    check_dim(range.dim(), t.size(), "denormalize");
    Vec x(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double span = range.span_of(i);
        x[i] = span > 0.0 ? range.x_min[i] + t[i] * span : range.x_min[i];
    }
    return x;
}

Vec rescale_weight(const RangeState& range_old, const RangeState& range_new,
                   std::span<const double> w) {
    const std::size_t d = range_old.dim();
    check_dim(range_new.dim(), d, "rescale_weight");
    check_dim(2 * d, w.size(), "rescale_weight");

    Vec out(w.begin(), w.end());
    for (std::size_t i = 0; i < d; ++i) {
        if (range_new.x_min[i] > range_old.x_min[i] ||
            range_new.x_max[i] < range_old.x_max[i]) {
            throw std::invalid_argument("rescale_weight: range may not shrink");
        }
        const double span_new = range_new.span_of(i);
        if (span_new <= 0.0) continue; // feature never varied; weight stays put
        const double scale = range_old.span_of(i) / span_new;

        // u component, then clamp at 0
        double u = scale * w[i] + (range_old.x_min[i] - range_new.x_min[i]) / span_new;
        out[i] = std::max(u, 0.0);

        // v_bar component; clamping v at 1 is max(v_bar, 0)
        double vb = scale * w[d + i] + (range_new.x_max[i] - range_old.x_max[i]) / span_new;
        out[d + i] = std::max(vb, 0.0);
    }
    return out;
}

void rescale_weights(const RangeState& range_old, const RangeState& range_new,
                     std::vector<Vec>& weights) {
    for (auto& w : weights) {
        w = rescale_weight(range_old, range_new, w);
    }
}

} // namespace icvistream
