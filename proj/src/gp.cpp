#include "bsopt/gp.hpp"

#include <cmath>
#include <limits>

#include "bsopt/nelder_mead.hpp"

namespace bsopt {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

Eigen::MatrixXd pairwise_sqdist(const Eigen::MatrixXd& X) {
    const Eigen::VectorXd sq = X.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * X * X.transpose());
    d2.colwise() += sq;
    d2.rowwise() += sq.transpose();
    return d2.cwiseMax(0.0);
}

// LLT of K + sigma_e^2 I with jitter escalation. Returns false if every
// jitter level fails. The matrix a is used as scratch.
bool factor_with_jitter(Eigen::MatrixXd& a, double noise_var,
                        Eigen::LLT<Eigen::MatrixXd>& llt) {
    a.diagonal().array() += noise_var;
    llt.compute(a);
    if (llt.info() == Eigen::Success) return true;
    double applied = 0.0;
    for (double jitter = 1e-10; jitter <= 1e-4 * 1.0000001; jitter *= 10.0) {
        a.diagonal().array() += jitter - applied;
        applied = jitter;
        llt.compute(a);
        if (llt.info() == Eigen::Success) return true;
    }
    return false;
}

// Reusable buffers for repeated LML evaluations on a fixed dataset (the
// hot path of the hyperparameter search).
struct LmlWorkspace {
    Eigen::MatrixXd gram;
    Eigen::LLT<Eigen::MatrixXd> llt;
    Eigen::VectorXd alpha;

    // Centered LML; yc must already have the prior mean subtracted.
    // NaN on factorization failure.
    double eval(const Eigen::MatrixXd& sqdist, const Eigen::VectorXd& yc,
                const Hyperparams& hp) {
        const double sf2 = hp.signal_std * hp.signal_std;
        gram.resize(sqdist.rows(), sqdist.cols());
        gram.array() = (sqdist.array() * (-0.5 / (hp.length_scale * hp.length_scale))).exp() * sf2;
        if (!factor_with_jitter(gram, hp.noise_std * hp.noise_std, llt))
            return std::numeric_limits<double>::quiet_NaN();
        alpha = llt.solve(yc);
        const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
        const double n = static_cast<double>(yc.size());
        return -0.5 * yc.dot(alpha) - 0.5 * logdet - 0.5 * n * kLog2Pi;
    }
};

double lml_from_sqdist(const Eigen::MatrixXd& sqdist, const Eigen::VectorXd& yc,
                       const Hyperparams& hp) {
    LmlWorkspace ws;
    return ws.eval(sqdist, yc, hp);
}

struct Standardization {
    double mean = 0.0;
    double stddev = 1.0;
};

Standardization standardize_stats(const Eigen::VectorXd& y) {
    Standardization s;
    s.mean = y.mean();
    if (y.size() > 1) {
        const double var = (y.array() - s.mean).square().sum() / static_cast<double>(y.size());
        s.stddev = std::sqrt(var);
    }
    if (!(s.stddev > 1e-300)) s.stddev = 1.0;
    return s;
}

}  // namespace

void Dataset::add(const Eigen::VectorXd& x_physical, double y) {
    const int n = size();
    X_phys_.conservativeResize(n + 1, box_.dim());
    X_norm_.conservativeResize(n + 1, box_.dim());
    X_phys_.row(n) = x_physical.transpose();
    X_norm_.row(n) = box_.normalize(x_physical).transpose();
    y_.conservativeResize(n + 1);
    y_(n) = y;
}

double rbf_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparams& hp) {
    const double d2 = (a - b).squaredNorm();
    return hp.signal_std * hp.signal_std *
           std::exp(-0.5 * d2 / (hp.length_scale * hp.length_scale));
}

double log_marginal_likelihood(const Dataset& data, const Hyperparams& hp) {
    if (data.size() < 1) throw std::invalid_argument("log_marginal_likelihood: empty dataset");
    const Eigen::VectorXd yc = data.outputs().array() - data.outputs().mean();
    const double v = lml_from_sqdist(pairwise_sqdist(data.inputs()), yc, hp);
    if (std::isnan(v))
        throw NumericalDegeneracy("log_marginal_likelihood: factorization failed after jitter");
    return v;
}

FitResult fit_mle(const Dataset& data, const FitConfig& cfg) {
    FitResult out;
    if (data.size() < 2) {
        out.hp = Hyperparams{};
        out.lml = 0.0;
        return out;
    }

    const Standardization st = standardize_stats(data.outputs());
    const Eigen::VectorXd yc = (data.outputs().array() - st.mean) / st.stddev;
    const Eigen::MatrixXd sqdist = pairwise_sqdist(data.inputs());
    const double n = static_cast<double>(data.size());

    NmConfig nm;
    nm.bounds.resize(3, 2);
    nm.bounds << std::log(1e-3), std::log(1e3),   // log sigma_f
                 std::log(1e-2), std::log(10.0),  // log ell
                 std::log(1e-6), std::log(10.0);  // log sigma_e
    nm.n_starts = cfg.n_starts;
    nm.max_iters = cfg.max_iters;
    nm.f_tol = cfg.f_tol;
    nm.seed = cfg.seed;

    LmlWorkspace ws;
    auto objective = [&](const Eigen::VectorXd& log_hp) {
        Hyperparams hp{std::exp(log_hp(0)), std::exp(log_hp(1)), std::exp(log_hp(2))};
        return ws.eval(sqdist, yc, hp);
    };

    std::vector<NmResult> runs;
    const NmResult best = multi_start(objective, nm, &runs);

    // The LML shift between standardized and raw outputs is the constant
    // -n log s, so the argmax is unchanged.
    const double shift = -n * std::log(st.stddev);
    out.start_best_lml = -std::numeric_limits<double>::infinity();
    for (const auto& r : runs)
        out.start_best_lml = std::max(out.start_best_lml, r.f_start + shift);

    if (!std::isfinite(best.f)) {
        out.hp = Hyperparams{};
        out.hp.signal_std *= st.stddev;
        out.hp.noise_std *= st.stddev;
        out.fallback = true;
        out.lml = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    out.hp.signal_std = std::exp(best.x(0)) * st.stddev;
    out.hp.length_scale = std::exp(best.x(1));
    out.hp.noise_std = std::exp(best.x(2)) * st.stddev;
    out.lml = best.f + shift;
    return out;
}

GpModel::GpModel(const Dataset& data, const Hyperparams& hp) : hp_raw_(hp) {
    if (data.size() < 1) throw std::invalid_argument("GpModel: empty dataset");
    const Standardization st = standardize_stats(data.outputs());
    out_mean_ = st.mean;
    out_std_ = st.stddev;

    const double sf_std = hp.signal_std / out_std_;
    const double sn_std = hp.noise_std / out_std_;
    sf2_std_ = sf_std * sf_std;
    inv_two_ell2_ = 0.5 / (hp.length_scale * hp.length_scale);

    X_ = data.inputs();
    // Prior mean is the dataset output mean, which is zero after centering.
    prior_mean_std_ = 0.0;
    const Eigen::VectorXd yc = (data.outputs().array() - out_mean_) / out_std_;

    Eigen::MatrixXd gram =
        (pairwise_sqdist(X_).array() * (-inv_two_ell2_)).exp().matrix() * sf2_std_;
    if (!factor_with_jitter(gram, sn_std * sn_std, llt_))
        throw NumericalDegeneracy("GpModel: factorization failed after jitter escalation");
    alpha_ = llt_.solve(yc);
}

GpPosterior GpModel::predict_one(const Eigen::VectorXd& x_norm) const {
    const Eigen::VectorXd kstar =
        ((X_.rowwise() - x_norm.transpose()).rowwise().squaredNorm().array() * (-inv_two_ell2_))
            .exp()
            .matrix() *
        sf2_std_;
    const double mu_std = prior_mean_std_ + kstar.dot(alpha_);
    const Eigen::VectorXd v = llt_.matrixL().solve(kstar);
    const double var_std = std::max(sf2_std_ - v.squaredNorm(), 0.0);
    return GpPosterior{out_mean_ + out_std_ * mu_std, out_std_ * out_std_ * var_std};
}

std::vector<GpPosterior> GpModel::predict(const Eigen::MatrixXd& queries_norm) const {
    std::vector<GpPosterior> out;
    out.reserve(queries_norm.rows());
    for (int i = 0; i < queries_norm.rows(); ++i)
        out.push_back(predict_one(queries_norm.row(i).transpose()));
    return out;
}

std::vector<GpPosterior> predict(const Dataset& data, const Hyperparams& hp,
                                 const Eigen::MatrixXd& queries_norm) {
    return GpModel(data, hp).predict(queries_norm);
}

}  // namespace bsopt
