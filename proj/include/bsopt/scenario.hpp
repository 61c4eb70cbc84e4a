#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsopt {

// Physical constants of the deployment scenario. Defaults follow the
// reference setup: 1 km x 1 km area, 20 m simulation grid, eta = 4,
// 200 m shadowing correlation distance, 6 dB shadowing std, 10 mW max
// transmission power, -174 dBm/Hz noise density, 20 MHz bandwidth.
struct ScenarioParams {
    double area_side = 1000.0;   // m
    double grid_step = 20.0;     // m
    double eta = 4.0;            // path-loss exponent
    double d_cor = 200.0;        // m
    double sigma_s = 6.0;        // dB
    double p_max = 10.0;         // mW
    double n0_dbm_hz = -174.0;   // dBm/Hz
    double bandwidth = 2.0e7;    // Hz
    int n_tx = 7;
    double sigma_eps_m = 0.0;    // dB, channel-simulation error std

    void validate() const;

    int cells_per_side() const { return static_cast<int>(std::llround(area_side / grid_step)); }
    int n_cells() const { return cells_per_side() * cells_per_side(); }
    double cell_center(int k) const { return (k + 0.5) * grid_step; }

    // Distance floor resolving the transmitter-on-cell singularity.
    double min_distance() const { return 0.5 * grid_step; }

    // B * N0 in mW.
    double noise_floor_mw() const { return bandwidth * std::pow(10.0, n0_dbm_hz / 10.0); }

    // y-strip of transmitter i (0-based); strips tile [0, area_side].
    double strip_lo(int i) const { return area_side * static_cast<double>(i) / n_tx; }
    double strip_hi(int i) const { return area_side * static_cast<double>(i + 1) / n_tx; }
};

struct Placement {
    std::vector<Eigen::Vector2d> positions;

    int size() const { return static_cast<int>(positions.size()); }
};

struct PowerVector {
    Eigen::VectorXd mw;

    int size() const { return static_cast<int>(mw.size()); }
};

struct DesignPoint {
    Placement placement;
    PowerVector powers;
};

struct FeasibilityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Violations of the per-transmitter strip constraint (x in [0, area_side],
// y_i in strip i). Empty means feasible.
std::vector<std::string> placement_violations(const ScenarioParams& params,
                                              const Placement& placement);

// Violations of the physical bound only (every transmitter inside the
// area). The channel simulator accepts any in-area placement; the strip
// tiling is an optimization-problem constraint, not a physical one (the
// regular hexagonal reference layout does not respect it).
std::vector<std::string> area_violations(const ScenarioParams& params,
                                         const Placement& placement);

// Violations of the power box 0 <= P_i <= p_max.
std::vector<std::string> power_violations(const ScenarioParams& params,
                                          const PowerVector& powers);

// Validates both constraint sets; the report names every violated constraint.
FeasibilityReport check_feasible(const ScenarioParams& params, const DesignPoint& point);

}  // namespace bsopt
