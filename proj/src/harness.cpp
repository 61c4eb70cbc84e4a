#include "bsopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "bsopt/rng.hpp"

namespace bsopt {

namespace {

struct RunOutcome {
    std::vector<double> best_so_far;
    long sim_count = 0;
    double final_true = std::numeric_limits<double>::quiet_NaN();
    std::string error;
    std::string trace_csv;  // rendered only for trial 0
};

double clean_throughput(const ScenarioParams& params, const ShadowingField& field,
                        const Placement& placement, const PowerVector& powers) {
    ScenarioParams clean = params;
    clean.sigma_eps_m = 0.0;
    const GainMapSet maps = simulate_gain_maps(clean, field, placement, 0);
    return average_throughput(clean, maps, powers);
}

DesignPoint baseline_incumbent(StrategyKind kind, const ScenarioParams& params,
                               const BoTrace& trace) {
    const Eigen::VectorXd x = trace.data.physical_input(trace.t_best);
    const int n = params.n_tx;
    switch (kind) {
        case StrategyKind::placement_only:
            return {placement_from_flat(x, n),
                    PowerVector{Eigen::VectorXd::Constant(n, params.p_max)}};
        case StrategyKind::regular_power:
            return {regular_hex_layout(params), PowerVector{x}};
        case StrategyKind::pure_joint:
        case StrategyKind::random_search:
            return {placement_from_flat(x.head(2 * n), n), PowerVector{x.tail(n)}};
        default:
            throw std::logic_error("baseline_incumbent: not a baseline strategy");
    }
}

RunOutcome run_one(const ExperimentSpec& spec, StrategyKind kind, int trial, bool keep_trace) {
    StrategyConfig cfg;
    cfg.params = spec.params;
    cfg.mode = spec.mode;
    cfg.shadow_seed = derive_seed(spec.master_seed, "shadow", static_cast<std::uint64_t>(trial));
    cfg.seed = derive_seed(derive_seed(spec.master_seed, "trial", static_cast<std::uint64_t>(trial)),
                           to_string(kind));
    cfg.n_init = spec.n_init;
    cfg.n_test = spec.n_test;
    cfg.t_max = spec.t_max;
    cfg.inner_n_init = spec.inner_n_init;
    cfg.inner_t_max = spec.inner_t_max;
    cfg.refine_iters = spec.refine_iters;

    RunOutcome out;
    const bool noiseless = spec.params.sigma_eps_m == 0.0;
    try {
        if (kind == StrategyKind::nested) {
            const NestedTrace trace = run_nested(cfg);
            out.best_so_far = trace.best_so_far;
            out.sim_count = trace.simulation_count;
            out.error = trace.error;
            if (trace.ok()) {
                if (noiseless) {
                    out.final_true = trace.best_so_far.back();
                } else {
                    const ShadowingField field =
                        ShadowingField::build(cfg.params, cfg.mode, cfg.shadow_seed);
                    out.final_true = clean_throughput(cfg.params, field,
                                                      trace.incumbent.placement,
                                                      trace.incumbent.powers);
                }
                if (keep_trace) {
                    std::ostringstream os;
                    write_trace_csv(os, trace, cfg.n_init);
                    out.trace_csv = os.str();
                }
            }
        } else {
            BaselineRun run;
            switch (kind) {
                case StrategyKind::placement_only: run = run_placement_only(cfg); break;
                case StrategyKind::regular_power: run = run_regular_power(cfg); break;
                case StrategyKind::pure_joint: run = run_pure_joint(cfg); break;
                case StrategyKind::random_search: run = run_random_search(cfg); break;
                default: break;
            }
            out.best_so_far = run.trace.best_so_far;
            out.sim_count = run.sim_count;
            out.error = run.trace.error;
            if (run.trace.ok()) {
                if (noiseless) {
                    out.final_true = run.trace.best_so_far.back();
                } else {
                    const ShadowingField field =
                        ShadowingField::build(cfg.params, cfg.mode, cfg.shadow_seed);
                    const DesignPoint inc = baseline_incumbent(kind, cfg.params, run.trace);
                    out.final_true =
                        clean_throughput(cfg.params, field, inc.placement, inc.powers);
                }
                if (keep_trace) {
                    std::ostringstream os;
                    write_trace_csv(os, run.trace, cfg.n_init);
                    out.trace_csv = os.str();
                }
            }
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

CurveStat stat_over(const std::vector<double>& values) {
    CurveStat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) acc += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace

void ExperimentSpec::validate() const {
    try {
        params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
    if (t_max < 0) throw ConfigError("t_max must be >= 0");
    if (n_init < 1) throw ConfigError("n_init must be >= 1");
    if (n_test < 1) throw ConfigError("n_test must be >= 1");
    if (inner_n_init < 1) throw ConfigError("inner_n_init must be >= 1");
    if (inner_t_max < 0) throw ConfigError("inner_t_max must be >= 0");
    if (refine_iters < 0) throw ConfigError("refine_iters must be >= 0");
    if (strategies.empty()) throw ConfigError("strategy set must be non-empty");
    for (double s : sigma_sweep)
        if (s < 0) throw ConfigError("sweep values must be >= 0");
}

AggregateResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const int n_strategies = static_cast<int>(spec.strategies.size());
    std::vector<std::vector<RunOutcome>> outcomes(
        spec.n_trials, std::vector<RunOutcome>(n_strategies));

    std::atomic<int> next_trial{0};
    auto worker = [&] {
        for (;;) {
            const int trial = next_trial.fetch_add(1);
            if (trial >= spec.n_trials) return;
            for (int s = 0; s < n_strategies; ++s)
                outcomes[trial][s] = run_one(spec, spec.strategies[s], trial, trial == 0);
        }
    };

    int n_workers = spec.threads > 0 ? spec.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::max(1, std::min(n_workers, spec.n_trials));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    AggregateResult result;
    result.strategies = spec.strategies;
    result.t_max = spec.t_max;
    result.n_trials = spec.n_trials;
    result.curves.resize(n_strategies);
    result.final_true.resize(n_strategies);
    result.completed.resize(n_strategies, 0);

    for (int s = 0; s < n_strategies; ++s) {
        std::vector<std::vector<double>> curves_ok;
        std::vector<double> trues_ok;
        for (int trial = 0; trial < spec.n_trials; ++trial) {
            const RunOutcome& o = outcomes[trial][s];
            if (!o.error.empty() ||
                o.best_so_far.size() != static_cast<std::size_t>(spec.t_max) + 1) {
                ++result.failed_runs;
                continue;
            }
            curves_ok.push_back(o.best_so_far);
            trues_ok.push_back(o.final_true);
        }
        result.completed[s] = static_cast<int>(curves_ok.size());
        result.curves[s].resize(spec.t_max + 1);
        for (int t = 0; t <= spec.t_max; ++t) {
            std::vector<double> column;
            column.reserve(curves_ok.size());
            for (const auto& c : curves_ok) column.push_back(c[t]);
            result.curves[s][t] = stat_over(column);
        }
        result.final_true[s] = stat_over(trues_ok);
        if (!outcomes[0][s].trace_csv.empty())
            result.trial0_traces.emplace_back(spec.strategies[s], outcomes[0][s].trace_csv);
    }

    for (int s = 0; s < n_strategies; ++s) {
        if (spec.strategies[s] != StrategyKind::regular_power) continue;
        const double ref = result.curves[s][spec.t_max].mean;
        if (ref != 0.0)
            for (int k = 0; k < n_strategies; ++k)
                result.improvement_vs_regular.emplace_back(
                    spec.strategies[k], (result.curves[k][spec.t_max].mean - ref) / ref);
        break;
    }
    return result;
}

AggregateResult sweep_noise(const ExperimentSpec& spec) {
    spec.validate();
    AggregateResult out;
    out.strategies = spec.strategies;
    std::vector<NoiseRow> rows;
    bool have_base = false;
    for (double sigma : spec.sigma_sweep) {
        ExperimentSpec point = spec;
        point.params.sigma_eps_m = sigma;
        AggregateResult r = run_experiment(point);
        for (std::size_t s = 0; s < spec.strategies.size(); ++s)
            rows.push_back(NoiseRow{spec.strategies[s], sigma, r.final_true[s]});
        if (!have_base) {
            out = std::move(r);
            have_base = true;
        } else {
            out.failed_runs += r.failed_runs;
        }
    }
    out.noise = std::move(rows);
    return out;
}

void emit_plot_data(const AggregateResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    char buf[96];

    std::ofstream curves(std::filesystem::path(dir) / "curves.csv", std::ios::binary);
    curves << "strategy,t,mean_bps,std_bps\n";
    for (std::size_t s = 0; s < result.curves.size(); ++s) {
        for (std::size_t t = 0; t < result.curves[s].size(); ++t) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%.9g,%.9g\n",
                          to_string(result.strategies[s]), t, result.curves[s][t].mean,
                          result.curves[s][t].stddev);
            curves << buf;
        }
    }

    std::ofstream noise(std::filesystem::path(dir) / "noise.csv", std::ios::binary);
    noise << "strategy,sigma_db,mean_bps,std_bps\n";
    for (const auto& row : result.noise) {
        std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%.9g\n", to_string(row.kind), row.sigma_db,
                      row.stat.mean, row.stat.stddev);
        noise << buf;
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + v);
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for '" + key + "': " + v);
    }
}

}  // namespace

ExperimentSpec parse_config_text(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "area_side") spec.params.area_side = parse_double(key, value);
        else if (key == "grid_step") spec.params.grid_step = parse_double(key, value);
        else if (key == "eta") spec.params.eta = parse_double(key, value);
        else if (key == "d_cor") spec.params.d_cor = parse_double(key, value);
        else if (key == "sigma_s") spec.params.sigma_s = parse_double(key, value);
        else if (key == "p_max") spec.params.p_max = parse_double(key, value);
        else if (key == "n0_dbm_hz") spec.params.n0_dbm_hz = parse_double(key, value);
        else if (key == "bandwidth") spec.params.bandwidth = parse_double(key, value);
        else if (key == "n_tx") spec.params.n_tx = static_cast<int>(parse_int(key, value));
        else if (key == "sigma_eps_m") spec.params.sigma_eps_m = parse_double(key, value);
        else if (key == "shadowing_mode") {
            const auto mode = shadow_mode_from_string(value);
            if (!mode) throw ConfigError("unknown shadowing_mode: " + value);
            spec.mode = *mode;
        } else if (key == "strategies") {
            spec.strategies.clear();
            for (const auto& name : split_list(value)) {
                if (name == "all") {
                    spec.strategies = {StrategyKind::nested, StrategyKind::placement_only,
                                       StrategyKind::regular_power, StrategyKind::pure_joint,
                                       StrategyKind::random_search};
                    continue;
                }
                const auto kind = strategy_from_string(name);
                if (!kind) throw ConfigError("unknown strategy: " + name);
                spec.strategies.push_back(*kind);
            }
        } else if (key == "n_trials") spec.n_trials = static_cast<int>(parse_int(key, value));
        else if (key == "t_max") spec.t_max = static_cast<int>(parse_int(key, value));
        else if (key == "n_init") spec.n_init = static_cast<int>(parse_int(key, value));
        else if (key == "n_test") spec.n_test = static_cast<int>(parse_int(key, value));
        else if (key == "inner_n_init") spec.inner_n_init = static_cast<int>(parse_int(key, value));
        else if (key == "inner_t_max") spec.inner_t_max = static_cast<int>(parse_int(key, value));
        else if (key == "refine_iters") spec.refine_iters = static_cast<int>(parse_int(key, value));
        else if (key == "sweep") {
            spec.sigma_sweep.clear();
            for (const auto& v : split_list(value)) spec.sigma_sweep.push_back(parse_double(key, v));
        } else if (key == "master_seed")
            spec.master_seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "out_dir") spec.out_dir = value;
        else if (key == "threads") spec.threads = static_cast<int>(parse_int(key, value));
        else throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    }
    return spec;
}

ExperimentSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str());
}

}  // namespace bsopt
