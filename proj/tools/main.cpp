#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "icvistream/runner.hpp"

namespace fs = std::filesystem;
using namespace icvistream;

namespace {

struct CliOptions {
    std::string config_path;
    std::string model;
    std::string icvi;
    std::string order;
    std::string dataset;
    std::string out_dir = ".";
    long long seed = -1;
    bool has_labels = false;
    bool no_labels = false;
    bool trace_ari = false;
};

KvConfig load_config(const CliOptions& opt) {
    KvConfig kv;
    if (!opt.config_path.empty()) kv = KvConfig::parse_file(opt.config_path);
    if (!opt.model.empty()) kv.set("model", opt.model);
    if (!opt.icvi.empty()) kv.set("icvi", opt.icvi);
    if (!opt.order.empty()) kv.set("order", opt.order);
    if (!opt.dataset.empty()) kv.set("dataset", opt.dataset);
    if (opt.seed >= 0) kv.set("seed", std::to_string(opt.seed));
    if (opt.has_labels) kv.set("has_labels", "true");
    if (opt.no_labels) kv.set("has_labels", "false");
    if (opt.trace_ari) kv.set("trace_ari", "true");
    return kv;
}

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key = value config file (or a results.json)");
    cmd->add_option("--model", opt.model, "icvi_topoartmap | skm | ws_dvfa | ws_topofa | nn");
    cmd->add_option("--icvi", opt.icvi, "iCH | iWB | iPBM | iXB | iDB | iconn");
    cmd->add_option("--order", opt.order, "class_incremental | mixed | random");
    cmd->add_option("--dataset", opt.dataset, "'synthetic' or a CSV path");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    cmd->add_flag("--has-labels", opt.has_labels, "CSV carries a trailing label column");
    cmd->add_flag("--no-labels", opt.no_labels, "CSV has no label column");
    cmd->add_flag("--trace-ari", opt.trace_ari, "add an ari_so_far column to trace.csv");
}

int cmd_run(const CliOptions& opt) {
    const RunSpec spec = RunSpec::from_config(load_config(opt));
    const RunResult result = execute_run(spec);

    fs::create_directories(opt.out_dir);
    write_text_atomic(fs::path(opt.out_dir) / "results.json",
                      results_json(spec, result).dump(2) + "\n");
    write_trace_csv(fs::path(opt.out_dir) / "trace.csv", result.trace,
                    result.ari_so_far.empty() ? nullptr : &result.ari_so_far);

    std::cout << "model=" << spec.model;
    if (result.ari) std::cout << " ARI=" << *result.ari;
    if (result.test_acc) std::cout << " test_ACC=" << *result.test_acc;
    std::cout << " k=" << result.k_hat << " P=" << result.p
              << " runtime=" << result.runtime_sec << "s\n";
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

std::size_t worker_count() {
    if (const char* env = std::getenv("ICVISTREAM_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

int cmd_sweep(const CliOptions& opt) {
    const KvConfig base = load_config(opt);
    std::vector<std::string> grid_keys;
    const auto points = expand_grids(base, &grid_keys);

    std::vector<RunSpec> specs;
    specs.reserve(points.size());
    for (const auto& kv : points) specs.push_back(RunSpec::from_config(kv));

    std::vector<RunResult> results(specs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors;
    std::mutex err_mutex;

    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) break;
            try {
                results[i] = execute_run(specs[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                errors.push_back("run " + std::to_string(i) + ": " + e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t workers = std::min(worker_count(), specs.size());
    for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << e << "\n";
        return 1;
    }

    fs::create_directories(opt.out_dir);
    std::ostringstream table;
    for (const auto& key : grid_keys) table << key << ',';
    table << "ari,k_hat,P,runtime_sec,seed\n";
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (const auto& key : grid_keys) {
            table << *points[i].get_string(key) << ',';
        }
        table << (results[i].ari ? format_double(*results[i].ari) : "") << ','
              << results[i].k_hat << ',' << results[i].p << ','
              << format_double(results[i].runtime_sec) << ',' << specs[i].seed << '\n';
        if (results[i].ari && (!best || *results[i].ari > *results[*best].ari)) {
            best = i;
        }
    }
    write_text_atomic(fs::path(opt.out_dir) / "sweep.csv", table.str());

    nlohmann::json summary;
    summary["runs"] = specs.size();
    summary["grid_keys"] = grid_keys;
    if (best) {
        summary["best"] = results_json(specs[*best], results[*best]);
    }
    write_text_atomic(fs::path(opt.out_dir) / "sweep_best.json", summary.dump(2) + "\n");

    std::cout << specs.size() << " runs";
    if (best && results[*best].ari) {
        std::cout << "; best ARI=" << *results[*best].ari;
    }
    std::cout << "; table written to " << (fs::path(opt.out_dir) / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_ingest(const CliOptions& opt) {
    if (opt.dataset.empty()) throw std::runtime_error("ingest: --dataset is required");
    const Dataset data = ingest_csv(opt.dataset, opt.has_labels);
    std::set<int> labels(data.y.begin(), data.y.end());
    std::cout << "rows=" << data.x.size() << " features=" << data.dim
              << " labels=" << (data.y.empty() ? 0 : labels.size()) << "\n";
    return 0;
}

// the trailing column of a CSV read as integer labels, so both bare
// prediction files and full labeled datasets score directly
std::vector<int> read_labels(const std::string& path) {
    const Dataset d = ingest_csv(path, false);
    std::vector<int> labels(d.x.size());
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        labels[i] = static_cast<int>(d.x[i].back());
    }
    return labels;
}

int cmd_score(const std::string& pred_path, const std::string& truth_path) {
    const auto pred = read_labels(pred_path);
    const auto truth = read_labels(truth_path);
    const double a = adjusted_rand_index(pred, truth);
    const auto acc = accuracy(pred, truth);
    std::cout << "ARI=" << a << " ACC=" << acc.acc << " n_mis=" << acc.n_mis << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming clustering experiment runner"};
    app.require_subcommand(1);

    CliOptions run_opt, sweep_opt, ingest_opt;
    std::string pred_path, truth_path;
    auto* run = app.add_subcommand("run", "single experiment: results.json + trace.csv");
    add_common_flags(run, run_opt);
    auto* sweep = app.add_subcommand("sweep", "grid sweep: sweep.csv + sweep_best.json");
    add_common_flags(sweep, sweep_opt);
    auto* ingest = app.add_subcommand("ingest", "validate a dataset CSV");
    ingest->add_option("--dataset", ingest_opt.dataset, "CSV path")->required();
    ingest->add_flag("--has-labels", ingest_opt.has_labels, "trailing label column");
    auto* score = app.add_subcommand("score", "ARI/ACC between two label CSVs");
    score->add_option("--pred", pred_path, "predicted labels (trailing column)")->required();
    score->add_option("--truth", truth_path, "ground truth labels (trailing column)")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (ingest->parsed()) return cmd_ingest(ingest_opt);
        if (score->parsed()) return cmd_score(pred_path, truth_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
