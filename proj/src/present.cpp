#include "icvistream/present.hpp"

#include <stdexcept>

namespace icvistream {

LabelTarget LabelTarget::supervised(Vec y) {
    LabelTarget t;
    t.kind = Kind::supervised;
    t.y = std::move(y);
    return t;
}

LabelTarget LabelTarget::matrix(std::vector<Vec> rows) {
    if (rows.empty()) throw std::invalid_argument("LabelTarget::matrix: empty");
    LabelTarget t;
    t.kind = Kind::matrix;
    t.rows = std::move(rows);
    return t;
}

PresentOutcome present(TopoFuzzyArt& art, MapField& mf, std::span<const double> x_a,
                       std::span<const double> x_raw, const LabelTarget& target,
                       double rho_working, double baseline_rho) {
    std::size_t accepted_row = 0; // label-matrix row that produced the accepted match

    auto accept = [&](std::size_t j, double m_a) -> bool {
        switch (target.kind) {
        case LabelTarget::Kind::none:
            return true;
        case LabelTarget::Kind::supervised: {
            const double m_ab = mf.match_supervised(j, target.y);
            if (mf.vigilance_passes(m_ab)) return true;
            break;
        }
        case LabelTarget::Kind::matrix: {
            const auto r = mf.match(j, target.rows);
            if (mf.vigilance_passes(r.value)) {
                accepted_row = r.best_row;
                return true;
            }
            break;
        }
        }
        rho_working = mf.track(m_a, art.params().match);
        return false;
    };

    PresentOutcome out;
    const auto found = art.search(x_a, x_raw, &rho_working, accept);

    if (found) {
        out.j1 = found->j1;
        art.learn_first(out.j1, x_a, x_raw);
        switch (target.kind) {
        case LabelTarget::Kind::none:
            break; // learning against all-ones leaves the row unchanged
        case LabelTarget::Kind::supervised:
            mf.learn(out.j1, target.y);
            break;
        case LabelTarget::Kind::matrix:
            mf.learn(out.j1, target.rows[accepted_row]);
            break;
        }
    } else {
        out.created = true;
        out.j1 = art.create_category(x_a, x_raw);
        std::optional<Vec> supervised;
        std::optional<std::size_t> target_cluster;
        if (target.kind == LabelTarget::Kind::supervised) {
            supervised = target.y;
        } else if (target.kind == LabelTarget::Kind::matrix) {
            // fixed mode joins the (first) optimal cluster of the label matrix
            const Vec& r = target.rows.front();
            std::size_t c = 0;
            for (std::size_t i = 1; i < r.size(); ++i) {
                if (r[i] > r[c]) c = i;
            }
            target_cluster = c;
        }
        mf.expand_for_new_category(supervised, target_cluster);
    }

    out.j2 = art.second_resonant(x_a, x_raw, out.j1, out.created, baseline_rho);
    out.cluster = mf.cluster_of(out.j1);
    return out;
}

} // namespace icvistream
