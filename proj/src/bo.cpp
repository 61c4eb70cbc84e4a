#include "bsopt/bo.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bsopt/rng.hpp"

namespace bsopt {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
}

Eigen::VectorXd draw_uniform(const Box& box, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Eigen::VectorXd x(box.dim());
    for (int d = 0; d < box.dim(); ++d) x(d) = box.lo(d) + u01(rng) * (box.hi(d) - box.lo(d));
    return x;
}

int argmax_index(const Eigen::VectorXd& y) {
    int best = 0;
    for (int i = 1; i < y.size(); ++i)
        if (y(i) > y(best)) best = i;
    return best;
}

}  // namespace

double expected_improvement(const GpPosterior& post, double y_plus) {
    const double sigma = std::sqrt(std::max(post.variance, 0.0));
    const double delta = post.mean - y_plus;
    if (sigma <= 0.0) return std::max(delta, 0.0);
    const double z = delta / sigma;
    return std::max(delta * normal_cdf(z) + sigma * normal_pdf(z), 0.0);
}

Eigen::VectorXd propose_next(const GpModel& model, const Dataset& data, const BoConfig& cfg,
                             std::mt19937_64& rng) {
    const double y_plus = data.outputs().maxCoeff();
    Eigen::VectorXd best_x;
    double best_ei = -1.0;
    for (int i = 0; i < cfg.n_test; ++i) {
        const Eigen::VectorXd x = draw_uniform(cfg.box, rng);
        const GpPosterior post = model.predict_one(data.box().normalize(x));
        const double ei = expected_improvement(post, y_plus);
        if (ei > best_ei) {
            best_ei = ei;
            best_x = x;
        }
    }
    if (cfg.refine_iters > 0 && best_ei > 0.0) {
        NmConfig nm;
        nm.bounds.resize(cfg.box.dim(), 2);
        nm.bounds.col(0) = cfg.box.lo;
        nm.bounds.col(1) = cfg.box.hi;
        nm.max_iters = cfg.refine_iters;
        auto acquisition = [&](const Eigen::VectorXd& x) {
            return expected_improvement(model.predict_one(data.box().normalize(x)), y_plus);
        };
        const NmResult polished = nelder_mead(acquisition, best_x, nm);
        if (polished.f > best_ei) best_x = polished.x;
    }
    return best_x;
}

BoTrace run_bo(const ObjectiveFn& objective, const BoConfig& cfg) {
    BoTrace trace(cfg.box);
    std::mt19937_64 init_rng = make_rng(derive_seed(cfg.seed, "init"));

    double best = -std::numeric_limits<double>::infinity();
    auto observe = [&](const Eigen::VectorXd& x) {
        const double y = objective(x);
        trace.data.add(x, y);
        best = std::max(best, y);
    };

    try {
        for (int t = 0; t < cfg.n_init; ++t) observe(draw_uniform(cfg.box, init_rng));
        trace.best_so_far.push_back(best);

        for (int t = 1; t <= cfg.t_max; ++t) {
            FitConfig fc = cfg.fit;
            fc.seed = derive_seed(cfg.seed, "mle", static_cast<std::uint64_t>(t));
            const FitResult fit = fit_mle(trace.data, fc);
            const GpModel model(trace.data, fit.hp);
            std::mt19937_64 cand_rng =
                make_rng(derive_seed(cfg.seed, "cand", static_cast<std::uint64_t>(t)));
            observe(propose_next(model, trace.data, cfg, cand_rng));
            trace.best_so_far.push_back(best);
        }
    } catch (const std::exception& e) {
        trace.error = e.what();
    }

    if (trace.data.size() > 0) trace.t_best = argmax_index(trace.data.outputs());
    return trace;
}

void write_trace_csv(std::ostream& os, const BoTrace& trace, int n_init) {
    os << "t,y,best_so_far";
    for (int d = 0; d < trace.data.dim(); ++d) os << ",x" << d;
    os << "\n";
    char buf[64];
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < trace.data.size(); ++i) {
        best = std::max(best, trace.data.outputs()(i));
        const int t = i < n_init ? 0 : i - n_init + 1;
        os << t;
        std::snprintf(buf, sizeof(buf), ",%.9g", trace.data.outputs()(i));
        os << buf;
        std::snprintf(buf, sizeof(buf), ",%.9g", best);
        os << buf;
        const Eigen::VectorXd x = trace.data.physical_input(i);
        for (int d = 0; d < x.size(); ++d) {
            std::snprintf(buf, sizeof(buf), ",%.9g", x(d));
            os << buf;
        }
        os << "\n";
    }
}

}  // namespace bsopt
