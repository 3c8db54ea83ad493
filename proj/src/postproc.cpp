#include "icvistream/postproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace icvistream {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::optional<double> eval_partition(const IcviState& icvi, const ConnMatrix& conn,
                                     const std::vector<ClusterStats>& stats,
                                     const std::vector<std::size_t>& proto_cluster) {
    if (icvi.kind() == IcviKind::conn) {
        return icvi_evaluate_conn(conn, proto_cluster, stats.size());
    }
    return icvi_evaluate(icvi.kind(), stats, icvi.grand(), nullptr);
}

bool better(double a, double b, bool maxopt) { return maxopt ? a > b : a < b; }

/// Strict improvement with a relative tolerance, so ties never oscillate.
bool improves(const std::optional<double>& cand, const std::optional<double>& cur, bool maxopt) {
    if (!cand || !cur) return false;
    const double tol = 1e-12 * std::max(1.0, std::abs(*cur));
    return maxopt ? *cand > *cur + tol : *cand < *cur - tol;
}

std::vector<std::size_t> category_clusters(const MapField& mf) {
    std::vector<std::size_t> m(mf.rows());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = mf.cluster_of(j);
    return m;
}

/// Rewrite rows and the iCVI partition from an explicit per-category
/// cluster assignment (cluster ids already compacted).
void apply_partition(const TopoFuzzyArt& art, MapField& mf, IcviState& icvi,
                     const std::vector<std::size_t>& category_cluster,
                     std::vector<ClusterStats> stats) {
    const std::size_t new_k = stats.size();
    std::vector<Vec> rows;
    rows.reserve(category_cluster.size());
    for (std::size_t c : category_cluster) rows.push_back(MapField::one_hot(new_k, c));
    mf.adopt_rows(std::move(rows), new_k);
    icvi.reset_partition(std::move(stats), category_cluster, {}, &art.conn());
}

struct MovePlan {
    std::vector<ClusterStats> stats;
    std::vector<std::size_t> old_to_new; // npos for the dropped cluster
    std::size_t new_k = 0;
    std::vector<std::size_t> proto_cluster;
    std::optional<double> value;
};

/// Move category c from cluster `from` to cluster `to`; split + merge on
/// the cluster statistics, dropping `from` when it empties.
MovePlan make_move_plan(const TopoFuzzyArt& art, const MapField& mf, const IcviState& icvi,
                        std::size_t c, std::size_t from, std::size_t to) {
    const std::size_t k = mf.clusters();
    const ClusterStats& part = art.category(c).stats;

    const ClusterStats src = stats_split(icvi.clusters()[from], part);
    const ClusterStats dst = stats_merge(icvi.clusters()[to], part);

    MovePlan plan;
    plan.old_to_new.assign(k, npos);
    for (std::size_t i = 0; i < k; ++i) {
        if (i == from && src.empty()) continue;
        plan.old_to_new[i] = plan.stats.size();
        if (i == from) {
            plan.stats.push_back(src);
        } else if (i == to) {
            plan.stats.push_back(dst);
        } else {
            plan.stats.push_back(icvi.clusters()[i]);
        }
    }
    plan.new_k = plan.stats.size();

    plan.proto_cluster.resize(mf.rows());
    for (std::size_t j = 0; j < mf.rows(); ++j) {
        const std::size_t old = j == c ? to : mf.cluster_of(j);
        plan.proto_cluster[j] = plan.old_to_new[old];
    }
    plan.value = eval_partition(icvi, art.conn(), plan.stats, plan.proto_cluster);
    return plan;
}

} // namespace

bool run_swap(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg) {
    (void)cfg;
    if (art.size() <= 2) return false;
    const bool maxopt = icvi.max_optimal();
    bool any = false;

    while (true) {
        const auto cur = icvi.value();
        if (!cur) break;
        const std::size_t k = mf.clusters();
        if (k < 2) break;
        const auto members = mf.members();

        struct Best {
            std::size_t c, to;
            double value;
        };
        std::optional<Best> best;

        for (std::size_t c = 0; c < art.size(); ++c) {
            const std::size_t from = mf.cluster_of(c);
            if (members[from].size() == 1 && k == 2) continue; // single cluster forbidden
            for (std::size_t to = 0; to < k; ++to) {
                if (to == from) continue;
                bool connected = false;
                for (std::size_t g : members[to]) {
                    if (art.conn().at(c, g) > 0) {
                        connected = true;
                        break;
                    }
                }
                if (!connected) continue;

                const auto plan = make_move_plan(art, mf, icvi, c, from, to);
                if (!improves(plan.value, cur, maxopt)) continue;
                if (!best || better(*plan.value, best->value, maxopt)) {
                    best = Best{c, to, *plan.value};
                }
            }
        }
        if (!best) break;

        const std::size_t from = mf.cluster_of(best->c);
        const auto plan = make_move_plan(art, mf, icvi, best->c, from, best->to);
        mf.set_row_onehot(best->c, best->to);
        if (plan.new_k != k) mf.relabel_clusters(plan.old_to_new, plan.new_k);
        icvi.reset_partition(plan.stats, plan.proto_cluster, {}, &art.conn());
        any = true;
    }
    return any;
}

bool run_merge(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg) {
    (void)cfg;
    if (mf.clusters() <= 2) return false;
    if (icvi.tracker() != 0) return false;
    const auto cur = icvi.value();
    if (!cur) return false;
    const bool maxopt = icvi.max_optimal();

    // emulation over cluster footprints; module A is never touched
    std::vector<ClusterStats> stats = icvi.clusters();
    std::vector<std::size_t> orig_to_id(mf.clusters());
    std::iota(orig_to_id.begin(), orig_to_id.end(), std::size_t{0});
    std::vector<std::size_t> protos = category_clusters(mf);

    std::optional<double> best_value;
    std::vector<ClusterStats> best_stats;
    std::vector<std::size_t> best_orig_to_id;
    std::vector<std::size_t> best_protos;

    while (stats.size() > 2) {
        const std::size_t m = stats.size();
        std::optional<double> stage_value;
        std::size_t sa = 0, sb = 0;
        ClusterStats stage_merged;

        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                ClusterStats merged = stats_merge(stats[a], stats[b]);
                std::vector<ClusterStats> cand;
                cand.reserve(m - 1);
                for (std::size_t i = 0; i < m; ++i) {
                    if (i == b) continue;
                    cand.push_back(i == a ? merged : stats[i]);
                }
                std::vector<std::size_t> cand_protos = protos;
                for (auto& p : cand_protos) {
                    if (p == b) p = a;
                    else if (p > b) p -= 1;
                }
                const auto val = eval_partition(icvi, art.conn(), cand, cand_protos);
                if (!val) continue;
                if (!stage_value || better(*val, *stage_value, maxopt)) {
                    stage_value = val;
                    sa = a;
                    sb = b;
                    stage_merged = std::move(merged);
                }
            }
        }
        if (!stage_value) break;

        stats[sa] = stage_merged;
        stats.erase(stats.begin() + static_cast<std::ptrdiff_t>(sb));
        for (auto& id : orig_to_id) {
            if (id == sb) id = sa;
            else if (id > sb) id -= 1;
        }
        for (auto& p : protos) {
            if (p == sb) p = sa;
            else if (p > sb) p -= 1;
        }

        if (!best_value || better(*stage_value, *best_value, maxopt)) {
            best_value = stage_value;
            best_stats = stats;
            best_orig_to_id = orig_to_id;
            best_protos = protos;
        }
    }

    if (!improves(best_value, cur, maxopt)) return false;
    mf.relabel_clusters(best_orig_to_id, best_stats.size());
    icvi.reset_partition(best_stats, best_protos, {}, &art.conn());
    return true;
}

namespace {

bool split_activity(TopoFuzzyArt& art, MapField& mf, IcviState& icvi) {
    const auto members = mf.members();
    std::vector<std::size_t> order(art.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return art.category(a).inactivity < art.category(b).inactivity;
    });

    for (std::size_t c : order) {
        const std::size_t from = mf.cluster_of(c);
        if (members[from].size() <= 1) continue; // single-prototype clusters stay

        const ClusterStats& part = art.category(c).stats;
        std::vector<ClusterStats> stats = icvi.clusters();
        stats[from] = stats_split(stats[from], part);
        stats.push_back(part);

        auto mapping = category_clusters(mf);
        mapping[c] = stats.size() - 1;
        apply_partition(art, mf, icvi, mapping, std::move(stats));
        return true;
    }
    return false;
}

bool split_full(TopoFuzzyArt& art, MapField& mf, IcviState& icvi) {
    const bool maxopt = icvi.max_optimal();
    bool any = false;

    while (true) {
        const auto cur = icvi.value();
        if (!cur) break;
        const std::size_t k = mf.clusters();
        const auto members = mf.members();

        struct Candidate {
            double value;
            std::size_t cluster;
            std::vector<std::size_t> piece_of; // member position -> piece id
            std::vector<ClusterStats> pieces;
        };
        std::optional<Candidate> best;

        for (std::size_t i = 0; i < k; ++i) {
            if (members[i].size() < 2) continue;

            // atomize into one piece per category
            std::vector<ClusterStats> pieces;
            std::vector<std::size_t> piece_of(members[i].size());
            for (std::size_t m = 0; m < members[i].size(); ++m) {
                pieces.push_back(art.category(members[i][m]).stats);
                piece_of[m] = m;
            }

            auto compose_value = [&](const std::vector<ClusterStats>& ps,
                                     const std::vector<std::size_t>& pof) {
                std::vector<ClusterStats> stats;
                std::vector<std::size_t> cluster_pos(k, npos);
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == i) continue;
                    cluster_pos[j] = stats.size();
                    stats.push_back(icvi.clusters()[j]);
                }
                const std::size_t base = stats.size();
                for (const auto& p : ps) stats.push_back(p);

                std::vector<std::size_t> mapping(mf.rows());
                std::vector<std::size_t> member_pos(mf.rows(), npos);
                for (std::size_t m = 0; m < members[i].size(); ++m) {
                    member_pos[members[i][m]] = m;
                }
                for (std::size_t j = 0; j < mf.rows(); ++j) {
                    mapping[j] = member_pos[j] == npos ? cluster_pos[mf.cluster_of(j)]
                                                       : base + pof[member_pos[j]];
                }
                return eval_partition(icvi, art.conn(), stats, mapping);
            };

            // greedy re-merge among the pieces
            while (pieces.size() > 1) {
                const auto base_val = compose_value(pieces, piece_of);
                std::optional<double> best_pair_val;
                std::size_t pa = 0, pb = 0;
                for (std::size_t a = 0; a < pieces.size(); ++a) {
                    for (std::size_t b = a + 1; b < pieces.size(); ++b) {
                        auto ps = pieces;
                        ps[a] = stats_merge(ps[a], ps[b]);
                        ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(b));
                        auto pof = piece_of;
                        for (auto& p : pof) {
                            if (p == b) p = a;
                            else if (p > b) p -= 1;
                        }
                        const auto val = compose_value(ps, pof);
                        if (!val) continue;
                        if (!best_pair_val || better(*val, *best_pair_val, maxopt)) {
                            best_pair_val = val;
                            pa = a;
                            pb = b;
                        }
                    }
                }
                if (!best_pair_val || !improves(best_pair_val, base_val, maxopt)) break;
                pieces[pa] = stats_merge(pieces[pa], pieces[pb]);
                pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(pb));
                for (auto& p : piece_of) {
                    if (p == pb) p = pa;
                    else if (p > pb) p -= 1;
                }
            }

            if (pieces.size() < 2) continue; // re-merged back to one: no split
            const auto val = compose_value(pieces, piece_of);
            if (!val) continue;
            if (!best || better(*val, best->value, maxopt)) {
                best = Candidate{*val, i, piece_of, pieces};
            }
        }

        if (!best || !improves(best->value, cur, maxopt)) break;

        // adopt: other clusters keep order, pieces appended
        std::vector<ClusterStats> stats;
        std::vector<std::size_t> cluster_pos(k, npos);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == best->cluster) continue;
            cluster_pos[j] = stats.size();
            stats.push_back(icvi.clusters()[j]);
        }
        const std::size_t base = stats.size();
        for (const auto& p : best->pieces) stats.push_back(p);

        std::vector<std::size_t> member_pos(mf.rows(), npos);
        for (std::size_t m = 0; m < members[best->cluster].size(); ++m) {
            member_pos[members[best->cluster][m]] = m;
        }
        std::vector<std::size_t> mapping(mf.rows());
        for (std::size_t j = 0; j < mf.rows(); ++j) {
            mapping[j] = member_pos[j] == npos ? cluster_pos[mf.cluster_of(j)]
                                               : base + best->piece_of[member_pos[j]];
        }
        apply_partition(art, mf, icvi, mapping, std::move(stats));
        any = true;
    }
    return any;
}

bool split_partial(TopoFuzzyArt& art, MapField& mf, IcviState& icvi) {
    const bool maxopt = icvi.max_optimal();
    const std::size_t k = mf.clusters();
    const auto members = mf.members();

    struct Candidate {
        double value;
        std::size_t cluster;
        std::vector<bool> in_new; // per member position
    };
    std::optional<Candidate> best;

    for (std::size_t i = 0; i < k; ++i) {
        const auto& mem = members[i];
        if (mem.size() < 2) continue;

        auto side_value = [&](const ClusterStats& old_side, const ClusterStats& new_side,
                              const std::vector<bool>& in_new) {
            std::vector<ClusterStats> stats;
            std::vector<std::size_t> cluster_pos(k, npos);
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                cluster_pos[j] = stats.size();
                stats.push_back(icvi.clusters()[j]);
            }
            const std::size_t old_pos = stats.size();
            stats.push_back(old_side);
            stats.push_back(new_side);

            std::vector<std::size_t> member_pos(mf.rows(), npos);
            for (std::size_t m = 0; m < mem.size(); ++m) member_pos[mem[m]] = m;
            std::vector<std::size_t> mapping(mf.rows());
            for (std::size_t j = 0; j < mf.rows(); ++j) {
                if (member_pos[j] == npos) {
                    mapping[j] = cluster_pos[mf.cluster_of(j)];
                } else {
                    mapping[j] = in_new[member_pos[j]] ? old_pos + 1 : old_pos;
                }
            }
            return eval_partition(icvi, art.conn(), stats, mapping);
        };

        // step 1: seed = the detachment with the best temporary value
        std::optional<double> seed_val;
        std::size_t seed = 0;
        for (std::size_t m = 0; m < mem.size(); ++m) {
            const ClusterStats& part = art.category(mem[m]).stats;
            const ClusterStats rest = stats_split(icvi.clusters()[i], part);
            std::vector<bool> in_new(mem.size(), false);
            in_new[m] = true;
            const auto val = side_value(rest, part, in_new);
            if (!val) continue;
            if (!seed_val || better(*val, *seed_val, maxopt)) {
                seed_val = val;
                seed = m;
            }
        }
        if (!seed_val) continue;

        std::vector<bool> in_new(mem.size(), false);
        in_new[seed] = true;
        ClusterStats new_side = art.category(mem[seed]).stats;
        ClusterStats old_side = stats_split(icvi.clusters()[i], new_side);

        // step 2: swap the remaining members between the two sides
        while (true) {
            const auto base_val = side_value(old_side, new_side, in_new);
            std::optional<double> best_val;
            std::size_t best_m = 0;
            for (std::size_t m = 0; m < mem.size(); ++m) {
                if (m == seed) continue;
                const ClusterStats& part = art.category(mem[m]).stats;
                ClusterStats o = old_side, nw = new_side;
                std::size_t old_count = 0;
                for (std::size_t q = 0; q < mem.size(); ++q) {
                    if (!in_new[q]) ++old_count;
                }
                if (!in_new[m]) {
                    if (old_count == 1) continue; // old side may not empty
                    o = stats_split(o, part);
                    nw = stats_merge(nw, part);
                } else {
                    nw = stats_split(nw, part);
                    o = stats_merge(o, part);
                }
                auto flipped = in_new;
                flipped[m] = !flipped[m];
                const auto val = side_value(o, nw, flipped);
                if (!val) continue;
                if (!best_val || better(*val, *best_val, maxopt)) {
                    best_val = val;
                    best_m = m;
                }
            }
            if (!best_val || !improves(best_val, base_val, maxopt)) break;
            const ClusterStats& part = art.category(mem[best_m]).stats;
            if (!in_new[best_m]) {
                old_side = stats_split(old_side, part);
                new_side = stats_merge(new_side, part);
            } else {
                new_side = stats_split(new_side, part);
                old_side = stats_merge(old_side, part);
            }
            in_new[best_m] = !in_new[best_m];
        }

        const auto val = side_value(old_side, new_side, in_new);
        if (!val) continue;
        if (!best || better(*val, best->value, maxopt)) {
            best = Candidate{*val, i, in_new};
        }
    }

    if (!best) return false;

    // adopt the best cluster's two-way split
    const auto& mem = members[best->cluster];
    ClusterStats new_side;
    for (std::size_t m = 0; m < mem.size(); ++m) {
        if (best->in_new[m]) new_side = stats_merge(new_side, art.category(mem[m]).stats);
    }
    ClusterStats old_side = stats_split(icvi.clusters()[best->cluster], new_side);

    std::vector<ClusterStats> stats;
    std::vector<std::size_t> cluster_pos(k, npos);
    for (std::size_t j = 0; j < k; ++j) {
        if (j == best->cluster) continue;
        cluster_pos[j] = stats.size();
        stats.push_back(icvi.clusters()[j]);
    }
    const std::size_t old_pos = stats.size();
    stats.push_back(old_side);
    stats.push_back(new_side);

    std::vector<std::size_t> member_pos(mf.rows(), npos);
    for (std::size_t m = 0; m < mem.size(); ++m) member_pos[mem[m]] = m;
    std::vector<std::size_t> mapping(mf.rows());
    for (std::size_t j = 0; j < mf.rows(); ++j) {
        if (member_pos[j] == npos) {
            mapping[j] = cluster_pos[mf.cluster_of(j)];
        } else {
            mapping[j] = best->in_new[member_pos[j]] ? old_pos + 1 : old_pos;
        }
    }
    apply_partition(art, mf, icvi, mapping, std::move(stats));
    return true;
}

} // namespace

bool run_split(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg) {
    if (icvi.tracker() <= cfg.tau) return false;
    switch (cfg.s_type) {
    case SplitType::activity:
        return split_activity(art, mf, icvi);
    case SplitType::full_decomposition:
        return split_full(art, mf, icvi);
    case SplitType::partial_decomposition:
        return split_partial(art, mf, icvi);
    }
    return false;
}

namespace {

struct InnerCategory {
    Vec wa;
    Vec wab;
    bool frozen; // copied from the active set; may not learn or resonate
};

} // namespace

CompressOutcome run_compress(TopoFuzzyArt& art, MapField& mf, IcviState& icvi,
                             const Config& cfg, Warnings* warnings) {
    CompressOutcome out;
    const std::size_t p_old = art.size();

    std::vector<std::size_t> inactive; // H
    std::vector<std::size_t> active;   // complement
    for (std::size_t j = 0; j < p_old; ++j) {
        (art.category(j).inactivity >= cfg.xi ? inactive : active).push_back(j);
    }
    if (inactive.empty()) return out;

    const double d = static_cast<double>(art.dim());
    std::vector<InnerCategory> inner;
    inner.reserve(active.size());
    for (std::size_t j : active) {
        inner.push_back({art.category(j).w, mf.row(j), true});
    }

    std::vector<std::size_t> assignment(inactive.size(), npos);
    bool converged = false;
    constexpr int max_epochs = 100;

    for (int epoch = 0; epoch < max_epochs; ++epoch) {
        const auto snapshot = inner;
        for (std::size_t idx = 0; idx < inactive.size(); ++idx) {
            const Vec& xa = art.category(inactive[idx]).w;
            const Vec& yab = mf.row(inactive[idx]);
            const double norm_y = std::accumulate(yab.begin(), yab.end(), 0.0);
            double rho_work = cfg.rho_c;

            std::vector<std::size_t> order(inner.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::vector<double> act(inner.size());
            for (std::size_t j = 0; j < inner.size(); ++j) {
                act[j] = fuzzy_activation(xa, inner[j].wa, cfg.alpha);
            }
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return act[a] > act[b]; });

            bool resonated = false;
            for (std::size_t j : order) {
                if (inner[j].frozen) continue;
                const double m_a = fuzzy_and_l1(xa, inner[j].wa) / d;
                if (m_a < rho_work) continue;
                const double m_ab =
                    norm_y > 0.0 ? fuzzy_and_l1(yab, inner[j].wab) / norm_y : 0.0;
                if (m_ab < cfg.rho_ab) {
                    const double eps = cfg.mt_sign == MtSign::plus ? cfg.epsilon : -cfg.epsilon;
                    rho_work = std::max(std::min(m_a + eps, 1.0), 0.0);
                    continue;
                }
                auto& w = inner[j].wa;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    w[i] = (1.0 - cfg.beta_1) * w[i] + cfg.beta_1 * std::min(xa[i], w[i]);
                }
                assignment[idx] = j;
                resonated = true;
                break;
            }
            if (!resonated) {
                inner.push_back({xa, yab, false});
                assignment[idx] = inner.size() - 1;
            }
        }
        if (inner.size() == snapshot.size()) {
            bool same = true;
            for (std::size_t j = 0; same && j < inner.size(); ++j) {
                same = inner[j].wa == snapshot[j].wa;
            }
            if (same) {
                converged = true;
                break;
            }
        }
    }

    if (!converged) {
        if (warnings) warnings->add("compression did not converge; kept original categories");
        return out;
    }

    // member groups per inner category; created-and-abandoned ones vanish
    std::vector<std::vector<std::size_t>> groups(inner.size());
    for (std::size_t f = 0; f < active.size(); ++f) {
        groups[f].push_back(active[f]);
    }
    for (std::size_t idx = 0; idx < inactive.size(); ++idx) {
        groups[assignment[idx]].push_back(inactive[idx]);
    }
    std::vector<std::size_t> survivors;
    for (std::size_t j = 0; j < inner.size(); ++j) {
        if (!groups[j].empty()) survivors.push_back(j);
    }
    if (survivors.size() >= p_old) return out; // no shrink, no adoption

    std::vector<Category> categories;
    std::vector<Vec> rows;
    std::vector<std::vector<std::size_t>> adopted_groups;
    categories.reserve(survivors.size());
    for (std::size_t j : survivors) {
        auto& g = groups[j];
        std::sort(g.begin(), g.end());
        Category c;
        c.w = inner[j].wa;
        c.inactivity = std::numeric_limits<long long>::max();
        for (std::size_t member : g) {
            c.stats = stats_merge(c.stats, art.category(member).stats);
            c.inactivity = std::min(c.inactivity, art.category(member).inactivity);
        }
        categories.push_back(std::move(c));
        rows.push_back(inner[j].wab);
        adopted_groups.push_back(g);
    }

    ConnMatrix conn = art.conn();
    conn.remap_blocks(adopted_groups);

    std::vector<long long> pooled_freq;
    if (icvi.kind() == IcviKind::conn) {
        for (const auto& g : adopted_groups) {
            long long f = 0;
            for (std::size_t member : g) f += icvi.proto_freq().at(member);
            pooled_freq.push_back(f);
        }
    }

    art.adopt(std::move(categories), std::move(conn));
    mf.adopt_rows(std::move(rows), mf.clusters());

    if (icvi.kind() == IcviKind::conn) {
        icvi.reset_partition(icvi.clusters(), category_clusters(mf), std::move(pooled_freq),
                             &art.conn());
    } else if (cfg.rho_ab < 1.0) {
        // a relaxed map-field vigilance lets categories pool across
        // clusters; rebuild the per-cluster footprints from the new
        // membership so later split/merge algebra stays exact
        std::vector<ClusterStats> stats(mf.clusters());
        for (std::size_t j = 0; j < art.size(); ++j) {
            stats[mf.cluster_of(j)] = stats_merge(stats[mf.cluster_of(j)],
                                                  art.category(j).stats);
        }
        std::vector<ClusterStats> live;
        std::vector<std::size_t> old_to_new(stats.size(), npos);
        for (std::size_t i = 0; i < stats.size(); ++i) {
            if (stats[i].empty()) continue;
            old_to_new[i] = live.size();
            live.push_back(stats[i]);
        }
        if (live.size() != stats.size()) {
            mf.relabel_clusters(old_to_new, live.size());
        }
        icvi.reset_partition(std::move(live), category_clusters(mf), {}, &art.conn());
    }
    // with the default rho_ab = 1 the SS-based index state is untouched:
    // member pooling happens inside clusters, so the per-cluster
    // footprints are unchanged

    out.applied = true;
    out.groups = std::move(adopted_groups);
    return out;
}

bool run_prune_reassign(TopoFuzzyArt& art, MapField& mf, IcviState& icvi, const Config& cfg) {
    const std::size_t p = art.size();
    std::vector<bool> pruned(p, false);
    std::size_t n_pruned = 0;
    for (std::size_t j = 0; j < p; ++j) {
        const std::size_t cl = mf.cluster_of(j);
        if (art.category(j).inactivity >= cfg.xi && icvi.clusters()[cl].n < cfg.phi) {
            pruned[j] = true;
            ++n_pruned;
        }
    }
    if (n_pruned == 0 || n_pruned == p) return false;

    // nearest active category by activation on the weights
    auto mapping = category_clusters(mf);
    bool moved = false;
    std::vector<std::size_t> target(p);
    for (std::size_t c = 0; c < p; ++c) {
        target[c] = mapping[c];
        if (!pruned[c]) continue;
        double best_t = -1.0;
        std::size_t best_j = npos;
        for (std::size_t j = 0; j < p; ++j) {
            if (pruned[j]) continue;
            const double t = fuzzy_activation(art.category(c).w, art.category(j).w, cfg.alpha);
            if (t > best_t) {
                best_t = t;
                best_j = j;
            }
        }
        target[c] = mapping[best_j];
        if (target[c] != mapping[c]) moved = true;
    }
    if (!moved) return false;

    std::vector<ClusterStats> stats = icvi.clusters();
    for (std::size_t c = 0; c < p; ++c) {
        if (!pruned[c] || target[c] == mapping[c]) continue;
        const ClusterStats& part = art.category(c).stats;
        stats[mapping[c]] = stats_split(stats[mapping[c]], part);
        stats[target[c]] = stats_merge(stats[target[c]], part);
    }

    // compact away emptied clusters
    std::vector<std::size_t> old_to_new(stats.size(), npos);
    std::vector<ClusterStats> compact;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (stats[i].empty()) continue;
        old_to_new[i] = compact.size();
        compact.push_back(stats[i]);
    }
    std::vector<std::size_t> final_mapping(p);
    for (std::size_t c = 0; c < p; ++c) {
        final_mapping[c] = old_to_new[target[c]];
    }
    apply_partition(art, mf, icvi, final_mapping, std::move(compact));
    return true;
}

} // namespace icvistream
