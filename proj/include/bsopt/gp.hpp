#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bsopt {

struct NumericalDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Axis-aligned feasible box; the normalization record for GP inputs.
struct Box {
    Eigen::VectorXd lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    static Box unit(int d) {
        return Box{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d)};
    }
    Eigen::VectorXd normalize(const Eigen::VectorXd& x) const {
        return (x - lo).cwiseQuotient(hi - lo);
    }
    Eigen::VectorXd denormalize(const Eigen::VectorXd& u) const {
        return lo + u.cwiseProduct(hi - lo);
    }
};

struct Hyperparams {
    double signal_std = 1.0;    // sigma_f
    double length_scale = 0.5;  // ell, in normalized input units
    double noise_std = 0.1;     // sigma_eps
};

// Observation pairs driving the regression. Inputs are kept both in
// physical units and normalized to [0,1]^d by the feasible box.
class Dataset {
  public:
    explicit Dataset(Box box) : box_(std::move(box)) {}

    void add(const Eigen::VectorXd& x_physical, double y);
    int size() const { return static_cast<int>(y_.size()); }
    int dim() const { return box_.dim(); }
    const Eigen::MatrixXd& inputs() const { return X_norm_; }  // n x d, in [0,1]^d
    const Eigen::VectorXd& outputs() const { return y_; }
    const Box& box() const { return box_; }
    Eigen::VectorXd physical_input(int i) const { return X_phys_.row(i).transpose(); }

  private:
    Box box_;
    Eigen::MatrixXd X_norm_;
    Eigen::MatrixXd X_phys_;
    Eigen::VectorXd y_;
};

struct GpPosterior {
    double mean = 0.0;
    double variance = 0.0;
};

// sigma_f^2 exp(-||a - b||^2 / (2 ell^2))
double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparams& hp);

// Log-marginal likelihood of the data under an RBF GP with constant prior
// mean equal to the dataset output mean. Throws NumericalDegeneracy if the
// Gram matrix cannot be factorized even after jitter escalation
// (1e-10 to 1e-4, x10 steps).
double log_marginal_likelihood(const Dataset& data, const Hyperparams& hp);

struct FitConfig {
    int n_starts = 8;
    int max_iters = 0;    // 0 -> Nelder-Mead default (200 * dim)
    double f_tol = 1e-8;
    std::uint64_t seed = 0;
};

struct FitResult {
    Hyperparams hp;
    double lml = 0.0;            // log-marginal likelihood of hp on the raw data
    double start_best_lml = 0.0; // best LML among the multi-start initial points
    bool fallback = false;       // true if every start failed and defaults were returned
};

// Hyperparameter MLE: Nelder-Mead multi-start in log-hyperparameter space,
// with outputs standardized internally and the returned hyperparameters
// expressed in raw output units. Search bounds (standardized units):
//   log sigma_f in [log 1e-3, log 1e3]
//   log ell     in [log 0.01, log 10]
//   log sigma_e in [log 1e-6, log 10]
// |data| < 2 returns the start-point defaults.
FitResult fit_mle(const Dataset& data, const FitConfig& cfg);

// Fitted posterior with a cached factorization. Queries are normalized
// inputs; outputs are in raw units. Internally works on standardized
// outputs so the jitter scale stays meaningful for any output magnitude.
class GpModel {
  public:
    GpModel(const Dataset& data, const Hyperparams& hp);

    GpPosterior predict_one(const Eigen::VectorXd& x_norm) const;
    std::vector<GpPosterior> predict(const Eigen::MatrixXd& queries_norm) const;  // m x d

    const Hyperparams& hyperparams() const { return hp_raw_; }
    double output_mean() const { return out_mean_; }
    double output_std() const { return out_std_; }

  private:
    Hyperparams hp_raw_;
    double sf2_std_ = 1.0;       // standardized signal variance
    double inv_two_ell2_ = 1.0;
    double out_mean_ = 0.0, out_std_ = 1.0;
    double prior_mean_std_ = 0.0;  // prior mean in standardized units
    Eigen::MatrixXd X_;            // n x d
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

// Stateless posterior at query points (Eqs. of exact GPR with constant
// prior mean = dataset output mean); equivalent to GpModel but rebuilt
// per call.
std::vector<GpPosterior> predict(const Dataset& data, const Hyperparams& hp,
                                 const Eigen::MatrixXd& queries_norm);

}  // namespace bsopt
