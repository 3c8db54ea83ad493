#include "icvistream/trainer.hpp"

#include <algorithm>
#include <stdexcept>

#include "icvistream/postproc.hpp"
#include "icvistream/present.hpp"

namespace icvistream {

void Config::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    const double rho_hi = m_type == MatchKind::fuzzy ? 1.0 : 2.0;
    if (rho_a < 0.0 || rho_a > rho_hi) fail("rho_a out of range");
    if (beta_1 <= 0.0 || beta_1 > 1.0) fail("beta_1 must be in (0, 1]");
    if (beta_2 < 0.0 || beta_2 > beta_1) fail("beta_2 must be in [0, beta_1]");
    if (alpha <= 0.0) fail("alpha must be positive");
    if (rho_ab < 0.0 || rho_ab > 1.0) fail("rho_ab out of range");
    if (beta_ab <= 0.0 || beta_ab > 1.0) fail("beta_ab must be in (0, 1]");
    if (epsilon < 0.0) fail("epsilon must be nonnegative");
    if (rho_mt_icvi < 0.0 || rho_mt_icvi > rho_hi) fail("rho_mt_icvi out of range");
    if (epsilon_icvi && *epsilon_icvi < 0.0) fail("epsilon_icvi must be nonnegative");
    if (rho_c < 0.0 || rho_c > 1.0) fail("rho_c out of range");
    if (tau < 0) fail("tau must be nonnegative");
    if (phi < 0) fail("phi must be nonnegative");
    if (xi < 0) fail("xi must be nonnegative");
}

void Warnings::add(const std::string& msg) {
    if (messages.size() >= 16) return;
    if (std::find(messages.begin(), messages.end(), msg) != messages.end()) return;
    messages.push_back(msg);
}

IcviTopoArtMap::IcviTopoArtMap(Config cfg)
    : cfg_(std::move(cfg)),
      art_(cfg_.art_params()),
      mf_(cfg_.mapfield_params()),
      icvi_(cfg_.icvi),
      rho_a_(cfg_.rho_a) {
    cfg_.validate();
}

std::size_t IcviTopoArtMap::map_label(int label) {
    auto it = label_to_cluster_.find(label);
    if (it != label_to_cluster_.end()) return it->second;
    std::size_t cluster;
    if (mf_.rows() == 0) {
        cluster = 0; // first category will claim cluster 0
    } else {
        mf_.add_column();
        cluster = mf_.clusters() - 1;
        if (cfg_.l_type == ClusterMode::fixed && unsupervised_seen_) {
            warnings_.add("supervised label named an unseen cluster in fixed mode; grew k");
        }
    }
    label_to_cluster_.emplace(label, cluster);
    return cluster;
}

StepReport IcviTopoArtMap::make_report(std::size_t cluster, std::size_t j1, bool created) const {
    StepReport r;
    r.t = t_;
    r.cluster = cluster;
    r.k = mf_.clusters();
    r.p = art_.size();
    r.rho_a = rho_a_;
    r.v = icvi_.tracker();
    r.icvi_value = icvi_.value();
    r.category = j1;
    r.created_category = created;
    return r;
}

StepReport IcviTopoArtMap::step(std::span<const double> x, std::optional<int> label) {
    if (t_ > 0 && x.size() != art_.dim()) {
        throw std::invalid_argument("step: sample dimension drifted mid-stream");
    }
    t_ += 1;

    if (t_ == 1) {
        art_.observe(x);
        const Vec x_a = art_.encode(x);
        const std::size_t j = art_.create_category(x_a, x);
        std::size_t cluster = 0;
        if (label) cluster = map_label(*label);
        mf_.expand_for_new_category(std::nullopt, std::nullopt); // W^ab = [1]
        icvi_.commit({x, cluster, j, true, std::nullopt, &art_.conn()});
        return make_report(cluster, j, true);
    }

    const std::optional<double> value_start = icvi_.value();

    art_.observe(x); // weight re-scaling precedes everything else
    const Vec x_a = art_.encode(x);

    LabelTarget target = LabelTarget::none();
    if (label) {
        const std::size_t cluster = map_label(*label);
        target = LabelTarget::supervised(MapField::one_hot(mf_.clusters(), cluster));
    } else {
        unsupervised_seen_ = true;
        if (mf_.clusters() > 1) {
            const auto scores =
                icvi_.score_assignments(x, art_, mf_, rho_a_, cfg_.rho_a);
            target = LabelTarget::matrix(IcviState::label_matrix(scores));
            if (cfg_.en_mt_icvi) {
                rho_a_ = icvi_.match_tracking(rho_a_, cfg_.rho_a, cfg_.m_type,
                                              cfg_.effective_epsilon_icvi(),
                                              cfg_.rho_mt_icvi, cfg_.tau);
            }
        }
        // k == 1: map field vigilance test disabled for this step
    }

    const auto out = present(art_, mf_, x_a, x, target, rho_a_, cfg_.rho_a);
    icvi_.commit({x, out.cluster, out.j1, out.created, out.j2, &art_.conn()});
    if (icvi_.degenerate_warned()) {
        warnings_.add("duplicate cluster centroids; pair distances floored at 1e-12");
    }

    const std::size_t k_before_edits = mf_.clusters();
    if (cfg_.en_merge) run_merge(art_, mf_, icvi_, cfg_);
    if (cfg_.en_split) run_split(art_, mf_, icvi_, cfg_);
    if (cfg_.en_swap) run_swap(art_, mf_, icvi_, cfg_);
    if (cfg_.en_compress) {
        const auto c = run_compress(art_, mf_, icvi_, cfg_, &warnings_);
        if (c.applied && on_compress_) on_compress_(c.groups);
    }
    if (cfg_.en_prune_reassign) run_prune_reassign(art_, mf_, icvi_, cfg_);
    if (!label_to_cluster_.empty() && mf_.clusters() != k_before_edits) {
        warnings_.add("post-processing changed the cluster set; supervised label "
                      "bindings no longer apply");
    }

    const std::optional<double> value_end = icvi_.value();
    if (value_start && value_end) {
        icvi_.tracker_update(*value_start, *value_end);
    }
    return make_report(out.cluster, out.j1, out.created);
}

Vec IcviTopoArtMap::encode_for_predict(std::span<const double> x) const {
    // evaluation samples may fall outside the observed range; clamp so
    // complement coding stays valid
    const RangeState& r = art_.range();
    if (x.size() != r.dim()) throw std::invalid_argument("predict: dimension mismatch");
    Vec cc(2 * r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i) {
        const double t = std::clamp(normalize_component(r, i, x[i]), 0.0, 1.0);
        cc[i] = t;
        cc[r.dim() + i] = 1.0 - t;
    }
    return cc;
}

std::size_t IcviTopoArtMap::predict_one(std::span<const double> x) const {
    if (art_.size() == 0) throw std::logic_error("predict: empty model");
    const Vec x_a = encode_for_predict(x);
    const auto j = art_.winner(x_a, x, cfg_.rho_a);
    return mf_.cluster_of(j ? *j : art_.argmax_activation(x_a));
}

std::vector<int> IcviTopoArtMap::predict(const std::vector<Vec>& samples) const {
    std::vector<int> labels(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        labels[i] = static_cast<int>(predict_one(samples[i]));
    }
    return labels;
}

std::uint64_t IcviTopoArtMap::state_digest() const {
    // FNV-1a over the learned state
    std::uint64_t h = 1469598103934665603ull;
    auto mix_bytes = [&h](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    auto mix_d = [&](double v) { mix_bytes(&v, sizeof v); };
    auto mix_i = [&](long long v) { mix_bytes(&v, sizeof v); };

    mix_i(static_cast<long long>(art_.size()));
    for (std::size_t j = 0; j < art_.size(); ++j) {
        const auto& c = art_.category(j);
        for (double w : c.w) mix_d(w);
        mix_i(c.stats.n);
        for (double m : c.stats.mu) mix_d(m);
        mix_d(c.stats.cp);
        mix_i(c.inactivity);
        for (std::size_t l = 0; l < art_.size(); ++l) mix_i(art_.conn().at(j, l));
        for (double w : mf_.row(j)) mix_d(w);
    }
    for (const auto& cs : icvi_.clusters()) {
        mix_i(cs.n);
        for (double m : cs.mu) mix_d(m);
        mix_d(cs.cp);
    }
    mix_i(icvi_.tracker());
    mix_d(rho_a_);
    if (icvi_.value()) mix_d(*icvi_.value());
    return h;
}

std::vector<StepReport> run_stream(IcviTopoArtMap& model, const std::vector<Vec>& samples,
                                   const std::vector<std::optional<int>>* labels) {
    if (labels && labels->size() != samples.size()) {
        throw std::invalid_argument("run_stream: labels length mismatch");
    }
    std::vector<StepReport> trace;
    trace.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        trace.push_back(model.step(samples[i], labels ? (*labels)[i] : std::nullopt));
    }
    return trace;
}

} // namespace icvistream
