#ifndef ICVISTREAM_RUNNER_HPP
#define ICVISTREAM_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icvistream/baselines.hpp"
#include "icvistream/bench.hpp"
#include "icvistream/configfile.hpp"
#include "icvistream/csvio.hpp"

namespace icvistream {

/// One fully-resolved experiment: model choice, protocol, data source,
/// presentation order, seed, and the model parameters.
struct RunSpec {
    std::string model = "icvi_topoartmap"; // skm | ws_dvfa | ws_topofa | nn
    std::string protocol = "clustering";   // clustering | semi_supervised
    std::string dataset = "synthetic";     // "synthetic" or a CSV path
    bool has_labels = true;
    Ordering order = Ordering::random_order;
    std::uint64_t seed = 1;
    bool trace_ari = false;

    Config cfg; // iCVI-TopoARTMAP parameters

    // baseline parameters
    std::size_t skm_k = 7;
    double rho_ub = 0.5;
    double rho_lb = 0.45;
    double baseline_beta = 1.0;
    NnMetric nn_metric = NnMetric::euclidean;

    /// Build from a key=value config; unknown keys are rejected.
    static RunSpec from_config(const KvConfig& kv);

    /// Full echo of every effective setting (reruns bit-identically).
    nlohmann::json resolved() const;
};

struct RunResult {
    std::optional<double> ari;
    std::size_t k_hat = 0;
    std::size_t p = 0;
    std::optional<double> train_acc;
    std::optional<double> test_acc;
    std::size_t n_mis_train = 0;
    std::size_t n_mis_test = 0;
    double runtime_sec = 0.0;
    std::vector<StepReport> trace;
    std::vector<double> ari_so_far; // filled when trace_ari
    std::vector<std::string> warnings;
};

RunResult execute_run(const RunSpec& spec);

nlohmann::json results_json(const RunSpec& spec, const RunResult& result);

/// Load the run's dataset (synthetic generation or CSV ingest) in
/// presentation order.
Dataset load_ordered_dataset(const RunSpec& spec);

} // namespace icvistream

#endif
