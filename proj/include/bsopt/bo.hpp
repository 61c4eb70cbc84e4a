#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "bsopt/gp.hpp"
#include "bsopt/nelder_mead.hpp"

namespace bsopt {

struct BoConfig {
    int n_init = 8;
    int n_test = 256;
    int t_max = 0;
    // Nelder-Mead polish of the winning candidate on the EI surface
    // (iteration cap; 0 disables). Keeps the acquisition argmax from being
    // limited to the random candidate set, which matters once corners of
    // the box are where improvements live.
    int refine_iters = 0;
    Box box;
    std::uint64_t seed = 0;
    FitConfig fit;
};

struct BoTrace {
    Dataset data;
    // best_so_far[0] is the incumbent after the initial design,
    // best_so_far[t] after t adaptive rounds.
    std::vector<double> best_so_far;
    int t_best = -1;  // evaluation index of the incumbent
    std::string error;

    BoTrace() : data(Box{}) {}
    explicit BoTrace(Box box) : data(std::move(box)) {}
    bool ok() const { return error.empty(); }
};

// Expected improvement over the incumbent y_plus:
//   (mu - y+) Phi(z) + sigma phi(z),  z = (mu - y+) / sigma
// and max(mu - y+, 0) when sigma = 0. Always >= 0.
double expected_improvement(const GpPosterior& post, double y_plus);

// Draws cfg.n_test uniform candidates in the feasible box from rng,
// evaluates EI against the dataset incumbent, and returns the physical
// candidate with maximal EI (ties resolved to the lowest index).
Eigen::VectorXd propose_next(const GpModel& model, const Dataset& data, const BoConfig& cfg,
                             std::mt19937_64& rng);

// Adaptive experimental design: n_init random evaluations, then t_max
// rounds of {hyperparameter MLE, EI proposal, observation, append}.
// If the objective throws, the partial trace is returned with the error
// recorded.
BoTrace run_bo(const ObjectiveFn& objective, const BoConfig& cfg);

// CSV: t,y,best_so_far followed by the physical input columns; one row
// per evaluation (t = 0 for the initial design).
void write_trace_csv(std::ostream& os, const BoTrace& trace, int n_init);

}  // namespace bsopt
