#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bsopt/baselines.hpp"
#include "bsopt/nested.hpp"

namespace bsopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
    ScenarioParams params;
    ShadowMode mode = ShadowMode::midpoint2d;
    std::vector<StrategyKind> strategies = {
        StrategyKind::nested, StrategyKind::placement_only, StrategyKind::regular_power,
        StrategyKind::pure_joint, StrategyKind::random_search};
    int n_trials = 20;
    int t_max = 50;
    int n_init = 8;
    int n_test = 256;
    int inner_n_init = 8;
    int inner_t_max = 30;
    int refine_iters = 100;
    std::vector<double> sigma_sweep;  // sigma_eps_m values for sweep_noise
    std::uint64_t master_seed = 1;
    std::string out_dir = "out";
    int threads = 0;  // 0 -> hardware concurrency

    void validate() const;  // throws ConfigError
};

// Flat key = value config (# comments). Unknown keys are errors.
ExperimentSpec parse_config_text(const std::string& text);
ExperimentSpec parse_config_file(const std::string& path);

struct CurveStat {
    double mean = 0.0;
    double stddev = 0.0;  // sample std over trials, 0 when < 2 trials
};

struct NoiseRow {
    StrategyKind kind;
    double sigma_db = 0.0;
    CurveStat stat;
};

struct AggregateResult {
    std::vector<StrategyKind> strategies;
    int t_max = 0;
    int n_trials = 0;
    // Observed best-so-far statistics per strategy and iteration (t = 0 is
    // the state after the initial design).
    std::vector<std::vector<CurveStat>> curves;
    // Noiseless re-evaluation of each strategy's final selected design;
    // equals the observed final value when sigma_eps_m = 0.
    std::vector<CurveStat> final_true;
    std::vector<int> completed;  // completed trials per strategy
    int failed_runs = 0;
    // (strategy, (mean - mean_regular) / mean_regular) at the final
    // iteration; empty unless regular_power was run.
    std::vector<std::pair<StrategyKind, double>> improvement_vs_regular;
    // Filled by sweep_noise: one row per (sigma, strategy) with the
    // noiseless re-evaluation statistics.
    std::vector<NoiseRow> noise;
    // Rendered per-evaluation trace CSVs for trial 0, one per strategy.
    std::vector<std::pair<StrategyKind, std::string>> trial0_traces;
};

// Runs every (trial, strategy) pair with seeds derived from
// (master_seed, trial, strategy). Trials sharing a trial index observe the
// same shadowing field across strategies. Deterministic given the spec;
// trials may execute on a worker pool without affecting any output.
AggregateResult run_experiment(const ExperimentSpec& spec);

// run_experiment once per sigma_eps_m in spec.sigma_sweep; noise rows
// report the noiseless re-evaluation of each method's selected design.
AggregateResult sweep_noise(const ExperimentSpec& spec);

// Writes curves.csv (strategy,t,mean_bps,std_bps) and noise.csv
// (strategy,sigma_db,mean_bps,std_bps) into dir, 9 significant digits.
void emit_plot_data(const AggregateResult& result, const std::string& dir);

}  // namespace bsopt
