#include "bsopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsopt/rng.hpp"

namespace bsopt {

Placement regular_hex_layout(const ScenarioParams& params) {
    int n_rings = -1;
    if (params.n_tx == 1) n_rings = 0;
    if (params.n_tx == 7) n_rings = 1;
    if (params.n_tx == 19) n_rings = 2;
    if (n_rings < 0)
        throw std::invalid_argument("regular_hex_layout: n_tx must be 1, 7 or 19, got " +
                                    std::to_string(params.n_tx));

    const double pitch = params.area_side / (2.0 * n_rings + 1.0);
    const double cx = 0.5 * params.area_side;
    const double cy = 0.5 * params.area_side;
    const double sqrt3_2 = std::sqrt(3.0) / 2.0;

    // Hex lattice points within n_rings of the origin, axial coordinates.
    std::vector<Eigen::Vector2d> sites;
    for (int a = -n_rings; a <= n_rings; ++a) {
        for (int b = -n_rings; b <= n_rings; ++b) {
            const int ring = (std::abs(a) + std::abs(b) + std::abs(a + b)) / 2;
            if (ring > n_rings) continue;
            sites.emplace_back(pitch * (a + 0.5 * b), pitch * (sqrt3_2 * b));
        }
    }
    std::sort(sites.begin(), sites.end(), [&](const auto& p, const auto& q) {
        const double rp = p.norm(), rq = q.norm();
        if (std::abs(rp - rq) > 1e-9 * pitch) return rp < rq;
        return std::atan2(p.y(), p.x()) < std::atan2(q.y(), q.x());
    });

    Placement placement;
    for (const auto& s : sites) placement.positions.emplace_back(cx + s.x(), cy + s.y());
    return placement;
}

namespace {

struct SimContext {
    ScenarioParams params;
    ShadowingField field;
    std::uint64_t seed;
    long sims = 0;

    SimContext(const StrategyConfig& cfg)
        : params(cfg.params),
          field(ShadowingField::build(cfg.params, cfg.mode, cfg.shadow_seed)),
          seed(cfg.seed) {}

    GainMapSet simulate(const Placement& placement) {
        const std::uint64_t sim_seed =
            derive_seed(seed, "sim", static_cast<std::uint64_t>(sims));
        GainMapSet maps = simulate_gain_maps(params, field, placement, sim_seed);
        ++sims;
        return maps;
    }
};

BoConfig make_bo_config(const StrategyConfig& cfg, Box box) {
    BoConfig bc;
    bc.n_init = cfg.n_init;
    bc.n_test = cfg.n_test;
    bc.t_max = cfg.t_max;
    bc.refine_iters = cfg.refine_iters;
    bc.box = std::move(box);
    bc.seed = derive_seed(cfg.seed, "bo");
    bc.fit = cfg.fit;
    return bc;
}

}  // namespace

BaselineRun run_placement_only(const StrategyConfig& cfg) {
    cfg.params.validate();
    SimContext ctx(cfg);
    const PowerVector pmax{Eigen::VectorXd::Constant(cfg.params.n_tx, cfg.params.p_max)};
    auto objective = [&](const Eigen::VectorXd& x) {
        const GainMapSet maps = ctx.simulate(placement_from_flat(x, cfg.params.n_tx));
        return average_throughput(cfg.params, maps, pmax);
    };
    BoTrace trace = run_bo(objective, make_bo_config(cfg, placement_box(cfg.params)));
    return {std::move(trace), ctx.sims};
}

BaselineRun run_regular_power(const StrategyConfig& cfg) {
    cfg.params.validate();
    SimContext ctx(cfg);
    const Placement hex = regular_hex_layout(cfg.params);
    auto objective = [&](const Eigen::VectorXd& p) {
        const GainMapSet maps = ctx.simulate(hex);
        return average_throughput(cfg.params, maps, PowerVector{p});
    };
    BoTrace trace = run_bo(objective, make_bo_config(cfg, power_box(cfg.params)));
    return {std::move(trace), ctx.sims};
}

BaselineRun run_pure_joint(const StrategyConfig& cfg) {
    cfg.params.validate();
    SimContext ctx(cfg);
    const int n = cfg.params.n_tx;
    auto objective = [&](const Eigen::VectorXd& x) {
        const GainMapSet maps = ctx.simulate(placement_from_flat(x.head(2 * n), n));
        return average_throughput(cfg.params, maps, PowerVector{x.tail(n)});
    };
    BoTrace trace = run_bo(objective, make_bo_config(cfg, joint_box(cfg.params)));
    return {std::move(trace), ctx.sims};
}

BaselineRun run_random_search(const StrategyConfig& cfg) {
    cfg.params.validate();
    SimContext ctx(cfg);
    const int n = cfg.params.n_tx;
    const Box box = joint_box(cfg.params);
    BoTrace trace(box);
    std::mt19937_64 rng = make_rng(derive_seed(cfg.seed, "rand"));
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double best = -std::numeric_limits<double>::infinity();
    try {
        for (int k = 0; k < cfg.n_init + cfg.t_max; ++k) {
            Eigen::VectorXd x(box.dim());
            for (int d = 0; d < box.dim(); ++d)
                x(d) = box.lo(d) + u01(rng) * (box.hi(d) - box.lo(d));
            const GainMapSet maps = ctx.simulate(placement_from_flat(x.head(2 * n), n));
            const double y = average_throughput(cfg.params, maps, PowerVector{x.tail(n)});
            trace.data.add(x, y);
            best = std::max(best, y);
            if (k >= cfg.n_init - 1) trace.best_so_far.push_back(best);
        }
    } catch (const std::exception& e) {
        trace.error = e.what();
    }
    if (trace.data.size() > 0) {
        int tb = 0;
        for (int i = 1; i < trace.data.size(); ++i)
            if (trace.data.outputs()(i) > trace.data.outputs()(tb)) tb = i;
        trace.t_best = tb;
    }
    return {std::move(trace), ctx.sims};
}

}  // namespace bsopt
