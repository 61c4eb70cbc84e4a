#pragma once

#include <iosfwd>

#include "bsopt/objective.hpp"
#include "bsopt/strategy.hpp"

namespace bsopt {

using NestedConfig = StrategyConfig;

struct NestedRecord {
    Placement placement;
    PowerVector powers;
    std::uint64_t sim_seed = 0;
    double y = 0.0;
};

struct NestedTrace {
    std::vector<NestedRecord> records;
    std::vector<double> best_so_far;  // [0] after init, then per outer round
    DesignPoint incumbent;
    int t_best = -1;
    long simulation_count = 0;
    std::string error;

    bool ok() const { return error.empty(); }
};

// Inner loop: BO over the power box against fixed gain maps. The maps are
// never re-simulated here; the returned y is exactly the throughput of the
// returned powers on these maps.
std::pair<PowerVector, double> optimize_powers(const GainMapSet& maps,
                                               const ScenarioParams& params,
                                               const BoConfig& inner_cfg);

// Placement <-> GP input vector, normalized per dimension by each
// transmitter's strip bounds (so the outer GP always works on [0,1]^2n).
Eigen::VectorXd placement_to_vector(const ScenarioParams& params, const Placement& placement);
Placement vector_to_placement(const ScenarioParams& params, const Eigen::VectorXd& v);

// Outer loop over placements: one channel simulation per outer evaluation,
// each followed by an inner power optimization that reuses the simulated
// maps.
NestedTrace run_nested(const NestedConfig& cfg);

// CSV: t,y,best_so_far,sim_count plus flattened placement and power columns.
void write_trace_csv(std::ostream& os, const NestedTrace& trace, int n_init);

}  // namespace bsopt
