#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>

#include "bsopt/scenario.hpp"
#include "bsopt/shadowing.hpp"

namespace bsopt {

// Simulated channel-gain grids, one per transmitter, over the receiver
// grid (cell centers). gains_db(c, i) is the gain in dB from transmitter i
// to cell c; cell index c = row * cells_per_side + col with x = center(col),
// y = center(row). The linear-domain copy is cached at construction.
// Immutable after construction.
struct GainMapSet {
    Eigen::MatrixXd gains_db;   // n_cells x n_tx
    Eigen::MatrixXd gains_lin;  // 10^(gains_db / 10)
    std::vector<Eigen::Vector2d> tx_positions;
    int cells_per_side = 0;
    double grid_step = 0.0;

    int n_tx() const { return static_cast<int>(gains_db.cols()); }
    int n_cells() const { return static_cast<int>(gains_db.rows()); }
    Eigen::Vector2d cell_center(int c) const {
        const int row = c / cells_per_side;
        const int col = c % cells_per_side;
        return {(col + 0.5) * grid_step, (row + 0.5) * grid_step};
    }
};

// Path loss plus shadowing in dB (transmission power excluded):
//   -10 eta log10(max(||tx - rx||, d_min)) + w_db(tx, rx)
double channel_gain_db(const ScenarioParams& params, const ShadowingField& field,
                       const Eigen::Vector2d& tx, const Eigen::Vector2d& rx);

// One channel simulation: per-transmitter gain grids with additive
// simulation error eps_M ~ N(0, sigma_eps_m^2) dB drawn i.i.d. per
// (transmitter, cell). sigma_eps_m = 0 reproduces the noiseless map
// exactly. Throws std::invalid_argument naming the offending transmitter
// if the placement is infeasible.
GainMapSet simulate_gain_maps(const ScenarioParams& params, const ShadowingField& field,
                              const Placement& placement, std::uint64_t seed);

// Debug dump: header `x_m,y_m,gain_db`, row-major over cells.
void write_gainmap_csv(std::ostream& os, const GainMapSet& maps, int tx_index);

}  // namespace bsopt
