#include "icvistream/runner.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace icvistream {

namespace {

const std::set<std::string> kKnownKeys = {
    // run
    "model", "protocol", "dataset", "has_labels", "order", "seed", "trace_ari", "out_dir",
    // module A
    "rho", "rho_a", "beta_1", "beta_2", "alpha", "M_type", "EN_T_u",
    // map field
    "epsilon", "rho_ab", "beta_ab", "mt_sign", "L_type",
    // iCVI framework
    "icvi", "EN_MT_icvi", "epsilon_icvi", "rho_MT_icvi",
    // strategies
    "EN_swap", "EN_merge", "EN_split", "S_type", "EN_compress", "rho_c",
    "EN_prune_reassign", "tau", "phi", "xi",
    // baselines
    "k", "rho_ub", "rho_lb", "beta", "nn_metric",
};

[[noreturn]] void bad(const std::string& msg) { throw std::runtime_error(msg); }

} // namespace

RunSpec RunSpec::from_config(const KvConfig& kv) {
    for (const auto& [key, value] : kv.items()) {
        (void)value;
        if (!kKnownKeys.count(key)) bad("unknown config key '" + key + "'");
    }

    RunSpec s;
    if (auto v = kv.get_string("model")) s.model = *v;
    if (s.model != "icvi_topoartmap" && s.model != "skm" && s.model != "ws_dvfa" &&
        s.model != "ws_topofa" && s.model != "nn") {
        bad("unknown model '" + s.model + "'");
    }
    if (auto v = kv.get_string("protocol")) s.protocol = *v;
    if (s.protocol != "clustering" && s.protocol != "semi_supervised") {
        bad("unknown protocol '" + s.protocol + "'");
    }
    if (auto v = kv.get_string("dataset")) s.dataset = *v;
    if (auto v = kv.get_bool("has_labels")) s.has_labels = *v;
    if (auto v = kv.get_string("order")) {
        auto o = ordering_from_name(*v);
        if (!o) bad("unknown order '" + *v + "'");
        s.order = *o;
    }
    if (auto v = kv.get_int("seed")) s.seed = static_cast<std::uint64_t>(*v);
    if (auto v = kv.get_bool("trace_ari")) s.trace_ari = *v;

    Config& c = s.cfg;
    if (auto v = kv.get_number("rho")) c.rho_a = *v; // shared vigilance alias
    if (auto v = kv.get_number("rho_a")) c.rho_a = *v;
    if (auto v = kv.get_number("beta_1")) c.beta_1 = *v;
    if (auto v = kv.get_number("beta_2")) c.beta_2 = *v;
    if (auto v = kv.get_number("alpha")) c.alpha = *v;
    if (auto v = kv.get_string("M_type")) {
        if (*v == "fuzzy") c.m_type = MatchKind::fuzzy;
        else if (*v == "cosine") c.m_type = MatchKind::cosine;
        else bad("M_type must be fuzzy or cosine");
    }
    if (auto v = kv.get_bool("EN_T_u")) c.en_t_u = *v;
    if (auto v = kv.get_number("epsilon")) c.epsilon = *v;
    if (auto v = kv.get_number("rho_ab")) c.rho_ab = *v;
    if (auto v = kv.get_number("beta_ab")) c.beta_ab = *v;
    if (auto v = kv.get_string("mt_sign")) {
        if (*v == "MT+" || *v == "plus") c.mt_sign = MtSign::plus;
        else if (*v == "MT-" || *v == "minus") c.mt_sign = MtSign::minus;
        else bad("mt_sign must be MT+ or MT-");
    }
    if (auto v = kv.get_string("L_type")) {
        if (*v == "variable") c.l_type = ClusterMode::variable;
        else if (*v == "fixed") c.l_type = ClusterMode::fixed;
        else bad("L_type must be variable or fixed");
    }
    if (auto v = kv.get_string("icvi")) {
        auto k = icvi_from_name(*v);
        if (!k) bad("unknown icvi '" + *v + "'");
        c.icvi = *k;
    }
    if (auto v = kv.get_bool("EN_MT_icvi")) c.en_mt_icvi = *v;
    if (auto v = kv.get_number("epsilon_icvi")) c.epsilon_icvi = *v;
    if (auto v = kv.get_number("rho_MT_icvi")) c.rho_mt_icvi = *v;
    if (auto v = kv.get_bool("EN_swap")) c.en_swap = *v;
    if (auto v = kv.get_bool("EN_merge")) c.en_merge = *v;
    if (auto v = kv.get_bool("EN_split")) c.en_split = *v;
    if (auto v = kv.get_string("S_type")) {
        if (*v == "activity" || *v == "activity-based") c.s_type = SplitType::activity;
        else if (*v == "full" || *v == "full-cluster-decomposition")
            c.s_type = SplitType::full_decomposition;
        else if (*v == "partial" || *v == "partial-cluster-decomposition")
            c.s_type = SplitType::partial_decomposition;
        else bad("S_type must be activity, full, or partial");
    }
    if (auto v = kv.get_bool("EN_compress")) c.en_compress = *v;
    if (auto v = kv.get_number("rho_c")) c.rho_c = *v;
    if (auto v = kv.get_bool("EN_prune_reassign")) c.en_prune_reassign = *v;
    if (auto v = kv.get_int("tau")) c.tau = *v;
    if (auto v = kv.get_int("phi")) c.phi = *v;
    if (auto v = kv.get_int("xi")) c.xi = *v;

    if (auto v = kv.get_int("k")) s.skm_k = static_cast<std::size_t>(*v);
    if (auto v = kv.get_number("rho_ub")) {
        s.rho_ub = *v;
        // sweep-friendly default: the lower vigilance trails the upper
        if (!kv.has("rho_lb")) s.rho_lb = std::max(0.0, *v - 0.05);
    }
    if (auto v = kv.get_number("rho_lb")) s.rho_lb = *v;
    if (auto v = kv.get_number("beta")) s.baseline_beta = *v;
    if (auto v = kv.get_string("nn_metric")) {
        if (*v == "euclidean") s.nn_metric = NnMetric::euclidean;
        else if (*v == "cosine") s.nn_metric = NnMetric::cosine;
        else bad("nn_metric must be euclidean or cosine");
    }
    return s;
}

nlohmann::json RunSpec::resolved() const {
    nlohmann::json j;
    j["model"] = model;
    j["protocol"] = protocol;
    j["dataset"] = dataset;
    j["has_labels"] = has_labels;
    j["order"] = ordering_name(order);
    j["seed"] = seed;
    j["trace_ari"] = trace_ari;
    j["rho_a"] = cfg.rho_a;
    j["beta_1"] = cfg.beta_1;
    j["beta_2"] = cfg.beta_2;
    j["alpha"] = cfg.alpha;
    j["M_type"] = cfg.m_type == MatchKind::fuzzy ? "fuzzy" : "cosine";
    j["EN_T_u"] = cfg.en_t_u;
    j["epsilon"] = cfg.epsilon;
    j["rho_ab"] = cfg.rho_ab;
    j["beta_ab"] = cfg.beta_ab;
    j["mt_sign"] = cfg.mt_sign == MtSign::plus ? "MT+" : "MT-";
    j["L_type"] = cfg.l_type == ClusterMode::variable ? "variable" : "fixed";
    j["icvi"] = icvi_name(cfg.icvi);
    j["EN_MT_icvi"] = cfg.en_mt_icvi;
    j["epsilon_icvi"] = cfg.effective_epsilon_icvi();
    j["rho_MT_icvi"] = cfg.rho_mt_icvi;
    j["EN_swap"] = cfg.en_swap;
    j["EN_merge"] = cfg.en_merge;
    j["EN_split"] = cfg.en_split;
    j["S_type"] = cfg.s_type == SplitType::activity
                      ? "activity"
                      : (cfg.s_type == SplitType::full_decomposition ? "full" : "partial");
    j["EN_compress"] = cfg.en_compress;
    j["rho_c"] = cfg.rho_c;
    j["EN_prune_reassign"] = cfg.en_prune_reassign;
    j["tau"] = cfg.tau;
    j["phi"] = cfg.phi;
    j["xi"] = cfg.xi;
    if (model == "skm") j["k"] = skm_k;
    if (model == "ws_dvfa") {
        j["rho_ub"] = rho_ub;
        j["rho_lb"] = rho_lb;
        j["beta"] = baseline_beta;
    }
    if (model == "nn") j["nn_metric"] = nn_metric == NnMetric::euclidean ? "euclidean" : "cosine";
    return j;
}

Dataset load_ordered_dataset(const RunSpec& spec) {
    Dataset raw;
    if (spec.dataset == "synthetic") {
        raw = gen_synthetic(spec.seed, SyntheticSpec::default7());
    } else {
        raw = ingest_csv(spec.dataset, spec.has_labels);
    }
    if (raw.y.empty()) {
        if (spec.order != Ordering::random_order) {
            bad("ordering by class requires labels");
        }
        // unlabeled: plain seeded shuffle
        Dataset out;
        out.dim = raw.dim;
        std::vector<std::size_t> idx(raw.x.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        Rng rng(spec.seed);
        rng.shuffle(idx);
        for (std::size_t i : idx) out.x.push_back(raw.x[i]);
        return out;
    }
    return order_stream(raw, spec.order, spec.seed + 1);
}

namespace {

RunResult run_clustering(const RunSpec& spec, const Dataset& stream) {
    RunResult r;
    const bool labeled = !stream.y.empty();

    auto score = [&](const std::vector<int>& pred) {
        r.k_hat = std::set<int>(pred.begin(), pred.end()).size();
        if (labeled) r.ari = adjusted_rand_index(pred, stream.y);
    };

    if (spec.model == "icvi_topoartmap") {
        IcviTopoArtMap model(spec.cfg);
        std::vector<Vec> seen;
        std::vector<int> seen_truth;
        for (std::size_t i = 0; i < stream.x.size(); ++i) {
            r.trace.push_back(model.step(stream.x[i]));
            if (spec.trace_ari && labeled) {
                seen.push_back(stream.x[i]);
                seen_truth.push_back(stream.y[i]);
                if (seen.size() >= 2) {
                    r.ari_so_far.push_back(
                        adjusted_rand_index(model.predict(seen), seen_truth));
                } else {
                    r.ari_so_far.push_back(0.0);
                }
            }
        }
        const auto pred = model.predict(stream.x);
        score(pred);
        r.p = model.categories();
        r.warnings = model.warnings().messages;
        return r;
    }
    if (spec.model == "skm") {
        SequentialKMeans skm(spec.skm_k);
        for (std::size_t i = 0; i < stream.x.size(); ++i) {
            const std::size_t c = skm.step(stream.x[i]);
            StepReport rep;
            rep.t = static_cast<long long>(i + 1);
            rep.cluster = c;
            rep.k = skm.centroids().size();
            rep.p = skm.centroids().size();
            r.trace.push_back(rep);
        }
        score(skm.predict(stream.x));
        r.p = skm.centroids().size();
        return r;
    }
    if (spec.model == "ws_dvfa") {
        WsDualVigilanceArt dvfa(spec.rho_ub, spec.rho_lb, spec.cfg.alpha, spec.baseline_beta);
        for (std::size_t i = 0; i < stream.x.size(); ++i) {
            const std::size_t c = dvfa.step(stream.x[i]);
            StepReport rep;
            rep.t = static_cast<long long>(i + 1);
            rep.cluster = c;
            rep.k = dvfa.clusters();
            rep.p = dvfa.categories();
            r.trace.push_back(rep);
        }
        score(dvfa.predict(stream.x));
        r.p = dvfa.categories();
        return r;
    }
    if (spec.model == "ws_topofa") {
        WsTopoFuzzyArt topofa(spec.cfg.art_params(), spec.cfg.tau, spec.cfg.phi);
        for (std::size_t i = 0; i < stream.x.size(); ++i) {
            topofa.step(stream.x[i]);
            StepReport rep;
            rep.t = static_cast<long long>(i + 1);
            rep.k = topofa.clusters();
            rep.p = topofa.categories();
            r.trace.push_back(rep);
        }
        score(topofa.predict(stream.x));
        r.p = topofa.categories();
        return r;
    }
    bad("model '" + spec.model + "' does not support the clustering protocol");
}

RunResult run_semi_supervised(const RunSpec& spec, const Dataset& stream) {
    if (stream.y.empty()) bad("semi_supervised protocol requires labels");
    RunResult r;

    // registration: the first sample of each label, in appearance order
    std::vector<std::size_t> registration;
    std::set<int> seen;
    std::vector<bool> is_reg(stream.x.size(), false);
    for (std::size_t i = 0; i < stream.x.size(); ++i) {
        if (seen.insert(stream.y[i]).second) {
            registration.push_back(i);
            is_reg[i] = true;
        }
    }
    std::vector<Vec> reg_x;
    std::vector<int> reg_y;
    for (std::size_t i : registration) {
        reg_x.push_back(stream.x[i]);
        reg_y.push_back(stream.y[i]);
    }
    std::vector<Vec> test_x;
    std::vector<int> test_y;
    for (std::size_t i = 0; i < stream.x.size(); ++i) {
        if (!is_reg[i]) {
            test_x.push_back(stream.x[i]);
            test_y.push_back(stream.y[i]);
        }
    }

    if (spec.model == "nn") {
        std::vector<int> pred_test(test_x.size());
        for (std::size_t i = 0; i < test_x.size(); ++i) {
            pred_test[i] = nn_classify(reg_x, reg_y, spec.nn_metric, test_x[i]);
        }
        std::vector<int> pred_train(reg_x.size());
        for (std::size_t i = 0; i < reg_x.size(); ++i) {
            pred_train[i] = nn_classify(reg_x, reg_y, spec.nn_metric, reg_x[i]);
        }
        const auto tr = accuracy(pred_train, reg_y);
        const auto te = accuracy(pred_test, test_y);
        r.train_acc = tr.acc;
        r.n_mis_train = tr.n_mis;
        r.test_acc = te.acc;
        r.n_mis_test = te.n_mis;
        r.k_hat = seen.size();
        r.p = reg_x.size();
        return r;
    }
    if (spec.model != "icvi_topoartmap") {
        bad("model '" + spec.model + "' does not support the semi_supervised protocol");
    }

    IcviTopoArtMap model(spec.cfg);
    for (std::size_t i = 0; i < reg_x.size(); ++i) {
        r.trace.push_back(model.step(reg_x[i], reg_y[i]));
    }
    for (std::size_t i = 0; i < stream.x.size(); ++i) {
        if (!is_reg[i]) r.trace.push_back(model.step(stream.x[i]));
    }

    // translate predicted clusters back to external labels
    std::unordered_map<std::size_t, int> cluster_to_label;
    for (const auto& [label, cluster] : model.label_map()) {
        cluster_to_label[cluster] = label;
    }
    auto predict_labels = [&](const std::vector<Vec>& xs) {
        std::vector<int> out(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t c = model.predict_one(xs[i]);
            auto it = cluster_to_label.find(c);
            out[i] = it != cluster_to_label.end() ? it->second : -1;
        }
        return out;
    };
    const auto tr = accuracy(predict_labels(reg_x), reg_y);
    const auto te = accuracy(predict_labels(test_x), test_y);
    r.train_acc = tr.acc;
    r.n_mis_train = tr.n_mis;
    r.test_acc = te.acc;
    r.n_mis_test = te.n_mis;
    r.k_hat = model.clusters();
    r.p = model.categories();
    r.warnings = model.warnings().messages;
    return r;
}

} // namespace

RunResult execute_run(const RunSpec& spec) {
    spec.cfg.validate();
    const Dataset stream = load_ordered_dataset(spec);
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r = spec.protocol == "clustering" ? run_clustering(spec, stream)
                                                : run_semi_supervised(spec, stream);
    r.runtime_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

nlohmann::json results_json(const RunSpec& spec, const RunResult& result) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["config"] = spec.resolved();
    j["seed"] = spec.seed;
    j["runtime_sec"] = result.runtime_sec;
    j["k_hat"] = result.k_hat;
    j["P"] = result.p;
    if (result.ari) j["ari"] = *result.ari;
    if (result.train_acc) {
        j["train_acc"] = *result.train_acc;
        j["train_n_mis"] = result.n_mis_train;
    }
    if (result.test_acc) {
        j["test_acc"] = *result.test_acc;
        j["test_n_mis"] = result.n_mis_test;
    }
    if (!result.warnings.empty()) j["warnings"] = result.warnings;
    return j;
}

} // namespace icvistream
