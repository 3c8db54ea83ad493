#include "icvistream/icvi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "icvistream/present.hpp"

namespace icvistream {

namespace {

constexpr double kDistanceFloor = 1e-12;

double safe_pos(double x) { return std::max(x, kDistanceFloor); }

} // namespace

bool is_max_optimal(IcviKind kind) {
    switch (kind) {
    case IcviKind::ch:
    case IcviKind::pbm:
    case IcviKind::conn:
        return true;
    case IcviKind::wb:
    case IcviKind::xb:
    case IcviKind::db:
        return false;
    }
    return true;
}

const char* icvi_name(IcviKind kind) {
    switch (kind) {
    case IcviKind::ch: return "iCH";
    case IcviKind::wb: return "iWB";
    case IcviKind::pbm: return "iPBM";
    case IcviKind::xb: return "iXB";
    case IcviKind::db: return "iDB";
    case IcviKind::conn: return "iconn";
    }
    return "?";
}

std::optional<IcviKind> icvi_from_name(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "ich" || s == "ch") return IcviKind::ch;
    if (s == "iwb" || s == "wb") return IcviKind::wb;
    if (s == "ipbm" || s == "pbm") return IcviKind::pbm;
    if (s == "ixb" || s == "xb") return IcviKind::xb;
    if (s == "idb" || s == "db") return IcviKind::db;
    if (s == "iconn" || s == "conn" || s == "iconn_index" || s == "conn_index")
        return IcviKind::conn;
    return std::nullopt;
}

std::optional<double> icvi_evaluate(IcviKind kind, std::span<const ClusterStats> clusters,
                                    const GrandStats& grand, bool* degenerate) {
    const std::size_t k = clusters.size();
    if (k < 2) return std::nullopt;
    const double n = static_cast<double>(grand.n);
    const double kd = static_cast<double>(k);

    double ss_w = 0.0;
    double ss_b = 0.0;
    for (const auto& c : clusters) {
        ss_w += c.cp;
        ss_b += static_cast<double>(c.n) * squared_distance(c.mu, grand.mu);
    }

    auto pair_d2 = [&](std::size_t a, std::size_t b) {
        return squared_distance(clusters[a].mu, clusters[b].mu);
    };
    auto flag = [&] {
        if (degenerate) *degenerate = true;
    };

    switch (kind) {
    case IcviKind::ch: {
        const double within = grand.n > static_cast<long long>(k)
                                  ? ss_w / (n - kd)
                                  : 0.0;
        return (ss_b / (kd - 1.0)) / safe_pos(within);
    }
    case IcviKind::wb:
        return kd * ss_w / safe_pos(ss_b);
    case IcviKind::xb: {
        double min_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                min_d2 = std::min(min_d2, pair_d2(a, b));
            }
        }
        if (min_d2 <= 0.0) {
            flag();
            min_d2 = kDistanceFloor * kDistanceFloor;
        }
        return ss_w / (n * min_d2);
    }
    case IcviKind::db: {
        std::vector<double> s(k);
        for (std::size_t i = 0; i < k; ++i) {
            s[i] = std::sqrt(clusters[i].cp / static_cast<double>(clusters[i].n));
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double worst = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                double dist = std::sqrt(pair_d2(i, j));
                if (dist <= 0.0) {
                    flag();
                    dist = kDistanceFloor;
                }
                worst = std::max(worst, (s[i] + s[j]) / dist);
            }
            sum += worst;
        }
        return sum / kd;
    }
    case IcviKind::pbm: {
        double max_d = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                max_d = std::max(max_d, std::sqrt(pair_d2(a, b)));
            }
        }
        const double term = (1.0 / kd) * (grand.cp / safe_pos(ss_w)) * max_d;
        return term * term;
    }
    case IcviKind::conn:
        throw std::logic_error("icvi_evaluate: conn_index needs the CONN matrix");
    }
    return std::nullopt;
}

std::optional<double> icvi_evaluate_conn(const ConnMatrix& conn,
                                         std::span<const std::size_t> proto_cluster,
                                         std::size_t k) {
    if (k < 2) return std::nullopt;
    const std::size_t p = conn.size();
    if (proto_cluster.size() != p) {
        throw std::invalid_argument("icvi_evaluate_conn: mapping size mismatch");
    }

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < p; ++i) {
        members.at(proto_cluster[i]).push_back(i);
    }
    std::vector<long long> rowsum(p, 0);
    for (std::size_t i = 0; i < p; ++i) rowsum[i] = conn.row_sum(i);

    // mass from prototype i into cluster l
    std::vector<std::vector<long long>> into(p, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            into[i][proto_cluster[j]] += conn.at(i, j);
        }
    }

    double intra_sum = 0.0;
    double inter_sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        long long within = 0;
        long long total = 0;
        for (std::size_t i : members[c]) {
            within += into[i][c];
            total += rowsum[i];
        }
        // no connection mass carries no dis-cohesion evidence; a ratio
        // of 1 keeps unconnected clusters from rewarding blind merges
        intra_sum += total > 0 ? static_cast<double>(within) / static_cast<double>(total) : 1.0;

        double worst = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            if (l == c) continue;
            long long num = 0;
            long long den = 0;
            for (std::size_t i : members[c]) {
                if (into[i][l] > 0) { // boundary prototype toward cluster l
                    num += into[i][l];
                    den += rowsum[i];
                }
            }
            if (den > 0) {
                worst = std::max(worst, static_cast<double>(num) / static_cast<double>(den));
            }
        }
        inter_sum += worst;
    }
    const double intra = intra_sum / static_cast<double>(k);
    const double inter = inter_sum / static_cast<double>(k);
    return intra * (1.0 - inter);
}

void IcviState::commit(const CommitInfo& info) {
    if (info.cluster > clusters_.size()) {
        throw std::out_of_range("IcviState::commit: cluster index");
    }
    if (info.cluster == clusters_.size()) {
        clusters_.push_back(stats_init(info.x));
    } else {
        stats_add(clusters_[info.cluster], info.x);
    }
    stats_add(grand_, info.x);

    if (kind_ == IcviKind::conn) {
        if (info.created_new) {
            proto_cluster_.push_back(info.cluster);
            proto_freq_.push_back(1);
        } else {
            proto_cluster_.at(info.j1) = info.cluster;
            proto_freq_.at(info.j1) += 1;
        }
    }
    refresh_value(info.conn);
}

std::vector<double> IcviState::score_assignments(std::span<const double> x,
                                                 const TopoFuzzyArt& art, const MapField& mf,
                                                 double rho_working,
                                                 double baseline_rho) const {
    const std::size_t k = clusters_.size();
    if (k < 2) throw std::logic_error("score_assignments: fewer than two clusters");

    std::vector<double> scores(k);
    if (kind_ != IcviKind::conn) {
        GrandStats grand_next = grand_;
        stats_add(grand_next, x);
        std::vector<ClusterStats> working(clusters_.begin(), clusters_.end());
        for (std::size_t i = 0; i < k; ++i) {
            const ClusterStats saved = working[i];
            stats_add(working[i], x);
            const auto v = icvi_evaluate(kind_, working, grand_next, nullptr);
            working[i] = saved;
            scores[i] = max_optimal() ? *v : -*v;
        }
        return scores;
    }

    // conn_index: train a throwaway copy of module A + map field per
    // hypothetical cluster assignment and read the value off its CONN.
    for (std::size_t i = 0; i < k; ++i) {
        TopoFuzzyArt art_copy = art;
        MapField mf_copy = mf;
        const Vec x_a = art_copy.encode(x);
        present(art_copy, mf_copy, x_a, x, LabelTarget::supervised(MapField::one_hot(k, i)),
                rho_working, baseline_rho);
        std::vector<std::size_t> mapping(mf_copy.rows());
        for (std::size_t j = 0; j < mapping.size(); ++j) {
            mapping[j] = mf_copy.cluster_of(j);
        }
        const auto v = icvi_evaluate_conn(art_copy.conn(), mapping, mf_copy.clusters());
        scores[i] = *v; // conn_index is max-optimal
    }
    return scores;
}

std::vector<Vec> IcviState::label_matrix(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("label_matrix: empty scores");
    const double best = *std::max_element(scores.begin(), scores.end());
    std::vector<Vec> rows;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (scores[c] == best) {
            rows.push_back(MapField::one_hot(scores.size(), c));
        }
    }
    return rows;
}

double IcviState::match_tracking(double rho_a, double rho_baseline, MatchKind kind,
                                 double eps_icvi, double rho_mt, long long tau) const {
    if (v_ < tau) return rho_baseline;
    if (kind == MatchKind::fuzzy) {
        return std::max(std::min(rho_a + eps_icvi, rho_mt), 0.0);
    }
    return std::min(std::max(rho_a - eps_icvi, rho_mt), 2.0);
}

void IcviState::tracker_update(double value_start, double value_end) {
    const bool worse = max_optimal() ? value_end < value_start : value_end > value_start;
    if (worse) {
        v_ += 1;
    } else {
        v_ = std::max<long long>(0, v_ - 1);
    }
}

void IcviState::reset_partition(std::vector<ClusterStats> clusters,
                                std::vector<std::size_t> proto_cluster,
                                std::vector<long long> proto_freq, const ConnMatrix* conn) {
    for (const auto& c : clusters) {
        if (c.empty()) throw std::invalid_argument("reset_partition: empty cluster");
    }
    clusters_ = std::move(clusters);
    if (kind_ == IcviKind::conn) {
        proto_cluster_ = std::move(proto_cluster);
        if (!proto_freq.empty()) {
            proto_freq_ = std::move(proto_freq);
        }
    }
    refresh_value(conn);
}

void IcviState::refresh_value(const ConnMatrix* conn) {
    if (kind_ == IcviKind::conn) {
        if (conn == nullptr) throw std::invalid_argument("refresh_value: CONN required");
        value_ = icvi_evaluate_conn(*conn, proto_cluster_, clusters_.size());
    } else {
        bool flag = false;
        value_ = icvi_evaluate(kind_, clusters_, grand_, &flag);
        if (flag) warned_ = true;
    }
}

} // namespace icvistream
