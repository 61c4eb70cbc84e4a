#include "bsopt/objective.hpp"

#include <cmath>

namespace bsopt {

double capacity_at_cell(const ScenarioParams& params, const Eigen::VectorXd& gains_db_at_cell,
                        const PowerVector& powers, int i) {
    const int n = static_cast<int>(gains_db_at_cell.size());
    double interference = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        interference += powers.mw(j) * std::pow(10.0, gains_db_at_cell(j) / 10.0);
    }
    const double signal = powers.mw(i) * std::pow(10.0, gains_db_at_cell(i) / 10.0);
    const double sinr = signal / (interference + params.noise_floor_mw());
    return params.bandwidth * std::log2(1.0 + sinr);
}

double average_throughput(const ScenarioParams& params, const GainMapSet& maps,
                          const PowerVector& powers) {
    const Eigen::ArrayXXd received =
        maps.gains_lin.array().rowwise() * powers.mw.transpose().array();
    const Eigen::ArrayXd total = received.rowwise().sum();
    const double bn0 = params.noise_floor_mw();

    const Eigen::ArrayXXd denom = ((-received).colwise() + total) + bn0;
    const Eigen::ArrayXXd sinr = received / denom;
    const double inv_ln2 = 1.0 / std::log(2.0);
    const Eigen::ArrayXd cell_bps = (1.0 + sinr).log().rowwise().sum() * (params.bandwidth * inv_ln2);
    return cell_bps.mean();
}

}  // namespace bsopt
