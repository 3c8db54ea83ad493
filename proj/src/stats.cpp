#include "icvistream/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace icvistream {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

ClusterStats stats_init(std::span<const double> x) {
    ClusterStats s;
    s.n = 1;
    s.mu.assign(x.begin(), x.end());
    s.cp = 0.0;
    return s;
}

void stats_add(ClusterStats& s, std::span<const double> x) {
    if (s.n <= 0) {
        s = stats_init(x);
        return;
    }
    if (x.size() != s.mu.size()) {
        throw std::invalid_argument("stats_add: dimension mismatch");
    }
    const double n = static_cast<double>(s.n);
    s.cp += n / (n + 1.0) * squared_distance(x, s.mu);
    for (std::size_t i = 0; i < s.mu.size(); ++i) {
        s.mu[i] = n / (n + 1.0) * s.mu[i] + x[i] / (n + 1.0);
    }
    s.n += 1;
}

ClusterStats stats_merge(const ClusterStats& a, const ClusterStats& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("stats_merge: dimension mismatch");
    }
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    ClusterStats out;
    out.n = a.n + b.n;
    out.mu.resize(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out.mu[i] = (na * a.mu[i] + nb * b.mu[i]) / (na + nb);
    }
    out.cp = a.cp + b.cp + na * nb / (na + nb) * squared_distance(b.mu, a.mu);
    return out;
}

ClusterStats stats_split(const ClusterStats& whole, const ClusterStats& part) {
    if (part.n > whole.n) {
        throw std::invalid_argument("stats_split: part larger than whole");
    }
    if (part.n == whole.n) {
        return ClusterStats{}; // removal empties the cluster
    }
    if (whole.dim() != part.dim()) {
        throw std::invalid_argument("stats_split: dimension mismatch");
    }
    const double nw = static_cast<double>(whole.n);
    const double np = static_cast<double>(part.n);
    ClusterStats out;
    out.n = whole.n - part.n;
    out.mu.resize(whole.dim());
    for (std::size_t i = 0; i < whole.dim(); ++i) {
        out.mu[i] = nw / (nw - np) * whole.mu[i] - np / (nw - np) * part.mu[i];
    }
    out.cp = whole.cp - part.cp -
             nw * np / (nw - np) * squared_distance(part.mu, whole.mu);
    if (out.cp < 0.0) {
        if (out.cp < -1e-6 * std::max(whole.cp, 1.0)) {
            throw std::logic_error("stats_split: negative compactness beyond tolerance");
        }
        out.cp = 0.0;
    }
    return out;
}

} // namespace icvistream
