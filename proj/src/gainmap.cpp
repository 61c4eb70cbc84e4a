#include "bsopt/gainmap.hpp"

#include <cstdio>
#include <ostream>
#include <random>

#include "bsopt/rng.hpp"

namespace bsopt {

double channel_gain_db(const ScenarioParams& params, const ShadowingField& field,
                       const Eigen::Vector2d& tx, const Eigen::Vector2d& rx) {
    const double d = std::max((tx - rx).norm(), params.min_distance());
    return -10.0 * params.eta * std::log10(d) + field.query_db(tx, rx);
}

GainMapSet simulate_gain_maps(const ScenarioParams& params, const ShadowingField& field,
                              const Placement& placement, std::uint64_t seed) {
    const auto violations = area_violations(params, placement);
    if (!violations.empty())
        throw std::invalid_argument("simulate_gain_maps: infeasible placement: " + violations[0]);

    GainMapSet maps;
    maps.cells_per_side = params.cells_per_side();
    maps.grid_step = params.grid_step;
    maps.tx_positions = placement.positions;
    const int n_cells = params.n_cells();
    maps.gains_db.resize(n_cells, params.n_tx);

    std::mt19937_64 rng = make_rng(seed);
    std::normal_distribution<double> sim_err(0.0, params.sigma_eps_m > 0 ? params.sigma_eps_m : 1.0);

    for (int i = 0; i < params.n_tx; ++i) {
        const Eigen::Vector2d& tx = placement.positions[i];
        for (int c = 0; c < n_cells; ++c) {
            double g = channel_gain_db(params, field, tx, maps.cell_center(c));
            if (params.sigma_eps_m > 0.0) g += sim_err(rng);
            maps.gains_db(c, i) = g;
        }
    }

    const double ln10_over_10 = std::log(10.0) / 10.0;
    maps.gains_lin = (maps.gains_db.array() * ln10_over_10).exp();
    return maps;
}

void write_gainmap_csv(std::ostream& os, const GainMapSet& maps, int tx_index) {
    os << "x_m,y_m,gain_db\n";
    char buf[96];
    for (int c = 0; c < maps.n_cells(); ++c) {
        const Eigen::Vector2d x = maps.cell_center(c);
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", x.x(), x.y(),
                      maps.gains_db(c, tx_index));
        os << buf;
    }
}

}  // namespace bsopt
