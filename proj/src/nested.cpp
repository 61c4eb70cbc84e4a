#include "bsopt/nested.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bsopt/rng.hpp"

namespace bsopt {

std::pair<PowerVector, double> optimize_powers(const GainMapSet& maps,
                                               const ScenarioParams& params,
                                               const BoConfig& inner_cfg) {
    auto objective = [&](const Eigen::VectorXd& p) {
        return average_throughput(params, maps, PowerVector{p});
    };
    const BoTrace trace = run_bo(objective, inner_cfg);
    if (!trace.ok()) throw std::runtime_error("optimize_powers: " + trace.error);
    PowerVector best{trace.data.physical_input(trace.t_best)};
    return {std::move(best), trace.data.outputs()(trace.t_best)};
}

Eigen::VectorXd placement_to_vector(const ScenarioParams& params, const Placement& placement) {
    return placement_box(params).normalize(placement_to_flat(placement));
}

Placement vector_to_placement(const ScenarioParams& params, const Eigen::VectorXd& v) {
    return placement_from_flat(placement_box(params).denormalize(v), params.n_tx);
}

NestedTrace run_nested(const NestedConfig& cfg) {
    cfg.params.validate();
    NestedTrace trace;
    const ShadowingField field = ShadowingField::build(cfg.params, cfg.mode, cfg.shadow_seed);
    const Box outer_box = placement_box(cfg.params);

    BoConfig inner;
    inner.n_init = cfg.inner_n_init;
    inner.n_test = cfg.inner_n_test;
    inner.t_max = cfg.inner_t_max;
    inner.refine_iters = cfg.refine_iters;
    inner.box = power_box(cfg.params);
    inner.fit = cfg.inner_fit;

    std::mt19937_64 init_rng = make_rng(derive_seed(cfg.seed, "init"));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double best = -std::numeric_limits<double>::infinity();

    // One outer evaluation: a single channel simulation followed by the
    // inner power search on the resulting maps.
    auto evaluate = [&](const Placement& placement) {
        const std::uint64_t eval_idx = trace.records.size();
        const std::uint64_t sim_seed = derive_seed(cfg.seed, "sim", eval_idx);
        const GainMapSet maps = simulate_gain_maps(cfg.params, field, placement, sim_seed);
        ++trace.simulation_count;
        BoConfig ic = inner;
        ic.seed = derive_seed(cfg.seed, "inner", eval_idx);
        auto [powers, y] = optimize_powers(maps, cfg.params, ic);
        trace.records.push_back({placement, std::move(powers), sim_seed, y});
        best = std::max(best, y);
    };

    auto random_placement = [&] {
        Eigen::VectorXd x(outer_box.dim());
        for (int d = 0; d < outer_box.dim(); ++d)
            x(d) = outer_box.lo(d) + u01(init_rng) * (outer_box.hi(d) - outer_box.lo(d));
        return placement_from_flat(x, cfg.params.n_tx);
    };

    try {
        for (int t = 0; t < cfg.n_init; ++t) evaluate(random_placement());
        trace.best_so_far.push_back(best);

        for (int t = 1; t <= cfg.t_max; ++t) {
            Dataset data{outer_box};
            for (const auto& rec : trace.records)
                data.add(placement_to_flat(rec.placement), rec.y);

            FitConfig fc = cfg.fit;
            fc.seed = derive_seed(cfg.seed, "mle", static_cast<std::uint64_t>(t));
            const FitResult fit = fit_mle(data, fc);
            const GpModel model(data, fit.hp);

            // EI over fresh uniform candidate placements (feasible per strip
            // by construction).
            BoConfig outer;
            outer.n_test = cfg.n_test;
            outer.refine_iters = cfg.refine_iters;
            outer.box = outer_box;
            std::mt19937_64 cand_rng =
                make_rng(derive_seed(cfg.seed, "cand", static_cast<std::uint64_t>(t)));
            const Eigen::VectorXd next = propose_next(model, data, outer, cand_rng);
            evaluate(placement_from_flat(next, cfg.params.n_tx));
            trace.best_so_far.push_back(best);
        }
    } catch (const std::exception& e) {
        trace.error = e.what();
    }

    if (!trace.records.empty()) {
        int tb = 0;
        for (int i = 1; i < static_cast<int>(trace.records.size()); ++i)
            if (trace.records[i].y > trace.records[tb].y) tb = i;
        trace.t_best = tb;
        trace.incumbent = DesignPoint{trace.records[tb].placement, trace.records[tb].powers};
    }
    return trace;
}

void write_trace_csv(std::ostream& os, const NestedTrace& trace, int n_init) {
    const int n_tx = trace.records.empty() ? 0 : trace.records[0].placement.size();
    os << "t,y,best_so_far,sim_count";
    for (int i = 0; i < n_tx; ++i) os << ",x" << i << ",y" << i;
    for (int i = 0; i < n_tx; ++i) os << ",p" << i;
    os << "\n";
    char buf[64];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const auto& rec = trace.records[k];
        best = std::max(best, rec.y);
        const int t = k < static_cast<std::size_t>(n_init) ? 0 : static_cast<int>(k) - n_init + 1;
        os << t;
        std::snprintf(buf, sizeof(buf), ",%.9g", rec.y);
        os << buf;
        std::snprintf(buf, sizeof(buf), ",%.9g", best);
        os << buf;
        os << "," << (k + 1);
        for (int i = 0; i < n_tx; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.9g,%.9g", rec.placement.positions[i].x(),
                          rec.placement.positions[i].y());
            os << buf;
        }
        for (int i = 0; i < n_tx; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.9g", rec.powers.mw(i));
            os << buf;
        }
        os << "\n";
    }
}

}  // namespace bsopt
