#pragma once

#include "bsopt/objective.hpp"
#include "bsopt/strategy.hpp"

namespace bsopt {

// Deterministic hexagonal reference layout centered on the area:
// the center site plus 0, 1 or 2 concentric rings (n_tx = 1, 7, 19),
// lattice pitch area_side / (2 n_rings + 1), sites sorted by radius then
// angle. Throws for other transmitter counts.
Placement regular_hex_layout(const ScenarioParams& params);

struct BaselineRun {
    BoTrace trace;
    long sim_count = 0;
};

// BO over placements with every transmitter at maximum power.
BaselineRun run_placement_only(const StrategyConfig& cfg);

// Fixed hexagonal placement, BO over transmission powers; maps are
// re-simulated for every observation (fresh simulation error draw).
BaselineRun run_regular_power(const StrategyConfig& cfg);

// Plain BO over the joint placement + power box.
BaselineRun run_pure_joint(const StrategyConfig& cfg);

// Uniform random joint designs, incumbent = running max.
BaselineRun run_random_search(const StrategyConfig& cfg);

}  // namespace bsopt
