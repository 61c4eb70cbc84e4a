#pragma once

#include <Eigen/Dense>

#include "bsopt/gainmap.hpp"
#include "bsopt/scenario.hpp"

namespace bsopt {

// Shannon capacity of transmitter i at one receiver location:
//   B log2(1 + P_i g_i / (sum_{j != i} P_j g_j + B N0))
// with gains given in dB and converted to linear internally.
double capacity_at_cell(const ScenarioParams& params, const Eigen::VectorXd& gains_db_at_cell,
                        const PowerVector& powers, int i);

// Area-averaged aggregate throughput in bps: the mean over all grid-cell
// centers of the per-cell sum of transmitter capacities.
double average_throughput(const ScenarioParams& params, const GainMapSet& maps,
                          const PowerVector& powers);

}  // namespace bsopt
