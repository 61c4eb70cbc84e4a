#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace bsopt {

// Bounded derivative-free maximization. Bounds are handled by clipping
// proposed vertices, not by penalty.
struct NmConfig {
    double reflect = 1.0;
    double expand = 2.0;
    double contract = 0.5;
    double shrink = 0.5;
    int max_iters = 0;      // 0 -> 200 * dim
    double f_tol = 1e-8;    // stop when best - worst simplex value < f_tol
    int n_starts = 8;
    Eigen::MatrixXd bounds;  // dim x 2, column 0 = lo, column 1 = hi
    std::uint64_t seed = 0;

    int dim() const { return static_cast<int>(bounds.rows()); }
};

struct NmResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double f_start = 0.0;  // objective at the start point x0
    int iterations = 0;
};

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

// Single Nelder-Mead run from x0 (must lie within bounds). Non-finite
// objective values are treated as -inf so the vertex is rejected.
// If f_history is given, the best simplex value after each iteration is
// appended to it.
NmResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0, const NmConfig& cfg,
                     std::vector<double>* f_history = nullptr);

// n_starts runs from uniform-random interior points (seeded by cfg.seed);
// returns the best. If runs is given, each run's result is appended.
NmResult multi_start(const ObjectiveFn& f, const NmConfig& cfg,
                     std::vector<NmResult>* runs = nullptr);

}  // namespace bsopt
