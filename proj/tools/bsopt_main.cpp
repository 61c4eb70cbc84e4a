#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "bsopt/harness.hpp"
#include "bsopt/rng.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0;
    std::string out_dir;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Path to key = value config file");
    cmd->add_option("--seed", opts.seed, "Master seed override")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "Trial count override");
    cmd->add_option("--out", opts.out_dir, "Output directory override");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
}

bsopt::ExperimentSpec load_spec(const CommonOpts& opts) {
    bsopt::ExperimentSpec spec;
    if (!opts.config_path.empty()) spec = bsopt::parse_config_file(opts.config_path);
    if (opts.seed_set) spec.master_seed = opts.seed;
    if (opts.trials > 0) spec.n_trials = opts.trials;
    if (!opts.out_dir.empty()) spec.out_dir = opts.out_dir;
    if (opts.threads > 0) spec.threads = opts.threads;
    return spec;
}

void write_outputs(const bsopt::AggregateResult& result, const std::string& out_dir) {
    bsopt::emit_plot_data(result, out_dir);
    for (const auto& [kind, csv] : result.trial0_traces) {
        std::ofstream os(std::filesystem::path(out_dir) /
                             (std::string("trace_") + bsopt::to_string(kind) + ".csv"),
                         std::ios::binary);
        os << csv;
    }
}

void print_summary(const bsopt::AggregateResult& result) {
    char buf[160];
    std::printf("strategy                final mean [Mbps]   std [Mbps]   trials\n");
    for (std::size_t s = 0; s < result.strategies.size(); ++s) {
        const auto& last = result.curves[s].back();
        std::snprintf(buf, sizeof(buf), "%-22s %14.3f %12.3f %8d\n",
                      bsopt::to_string(result.strategies[s]), last.mean / 1e6,
                      last.stddev / 1e6, result.completed[s]);
        std::fputs(buf, stdout);
    }
    for (const auto& [kind, rel] : result.improvement_vs_regular) {
        if (kind == bsopt::StrategyKind::regular_power) continue;
        std::snprintf(buf, sizeof(buf), "improvement vs regular_power: %-16s %+.1f%%\n",
                      bsopt::to_string(kind), 100.0 * rel);
        std::fputs(buf, stdout);
    }
    if (result.failed_runs > 0) std::printf("failed runs: %d\n", result.failed_runs);
}

void print_noise(const bsopt::AggregateResult& result) {
    std::printf("strategy                sigma [dB]   mean [Mbps]   std [Mbps]\n");
    for (const auto& row : result.noise)
        std::printf("%-22s %10.3g %13.3f %12.3f\n", bsopt::to_string(row.kind), row.sigma_db,
                    row.stat.mean / 1e6, row.stat.stddev / 1e6);
}

int run_dump_gainmap(const CommonOpts& opts, int tx_index) {
    bsopt::ExperimentSpec spec = load_spec(opts);
    spec.params.validate();
    const auto field =
        bsopt::ShadowingField::build(spec.params, spec.mode,
                                     bsopt::derive_seed(spec.master_seed, "shadow", 0));

    bsopt::Placement placement;
    if (spec.params.n_tx == 1 || spec.params.n_tx == 7 || spec.params.n_tx == 19) {
        placement = bsopt::regular_hex_layout(spec.params);
    } else {
        std::mt19937_64 rng = bsopt::make_rng(bsopt::derive_seed(spec.master_seed, "place", 0));
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i = 0; i < spec.params.n_tx; ++i) {
            const double x = u01(rng) * spec.params.area_side;
            const double y = spec.params.strip_lo(i) +
                             u01(rng) * (spec.params.strip_hi(i) - spec.params.strip_lo(i));
            placement.positions.emplace_back(x, y);
        }
    }
    const auto maps = bsopt::simulate_gain_maps(spec.params, field, placement,
                                                 bsopt::derive_seed(spec.master_seed, "sim", 0));
    if (tx_index < 0 || tx_index >= maps.n_tx()) {
        std::cerr << "dump-gainmap: tx index out of range\n";
        return 1;
    }
    std::filesystem::create_directories(spec.out_dir);
    std::ofstream os(std::filesystem::path(spec.out_dir) / "gainmap.csv", std::ios::binary);
    bsopt::write_gainmap_csv(os, maps, tx_index);
    std::printf("wrote %s/gainmap.csv (tx %d, %d cells)\n", spec.out_dir.c_str(), tx_index,
                maps.n_cells());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Channel-simulation-based base station placement and power design"};
    app.require_subcommand(1);

    CommonOpts run_opts, iter_opts, noise_opts, compare_opts, dump_opts;
    int dump_tx = 0;

    auto* cmd_run = app.add_subcommand("run", "Run the configured experiment");
    add_common(cmd_run, run_opts);
    auto* cmd_iter =
        app.add_subcommand("sweep-iterations", "Best-so-far vs iteration curves (curves.csv)");
    add_common(cmd_iter, iter_opts);
    auto* cmd_noise =
        app.add_subcommand("sweep-noise", "Throughput vs simulation-error sweep (noise.csv)");
    add_common(cmd_noise, noise_opts);
    auto* cmd_compare = app.add_subcommand("compare", "Run all five strategies");
    add_common(cmd_compare, compare_opts);
    auto* cmd_dump = app.add_subcommand("dump-gainmap", "Write one simulated gain map as CSV");
    add_common(cmd_dump, dump_opts);
    cmd_dump->add_option("--tx", dump_tx, "Transmitter index to dump");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_dump->parsed()) return run_dump_gainmap(dump_opts, dump_tx);

        if (cmd_noise->parsed()) {
            const bsopt::ExperimentSpec spec = load_spec(noise_opts);
            const bsopt::AggregateResult result = bsopt::sweep_noise(spec);
            write_outputs(result, spec.out_dir);
            print_noise(result);
            if (result.failed_runs > 0) {
                std::printf("failed runs: %d\n", result.failed_runs);
                return 2;
            }
            return 0;
        }

        const CommonOpts& opts = cmd_run->parsed()    ? run_opts
                                 : cmd_iter->parsed() ? iter_opts
                                                      : compare_opts;
        bsopt::ExperimentSpec spec = load_spec(opts);
        if (cmd_compare->parsed())
            spec.strategies = {bsopt::StrategyKind::nested, bsopt::StrategyKind::placement_only,
                               bsopt::StrategyKind::regular_power, bsopt::StrategyKind::pure_joint,
                               bsopt::StrategyKind::random_search};
        const bsopt::AggregateResult result = bsopt::run_experiment(spec);
        write_outputs(result, spec.out_dir);
        print_summary(result);
        return result.failed_runs > 0 ? 2 : 0;
    } catch (const bsopt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
