#include "bsopt/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bsopt/rng.hpp"

namespace bsopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_eval(const ObjectiveFn& f, const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kNegInf;
}

Eigen::VectorXd clip(const Eigen::VectorXd& x, const Eigen::MatrixXd& bounds) {
    Eigen::VectorXd out = x;
    for (int d = 0; d < x.size(); ++d)
        out(d) = std::min(std::max(out(d), bounds(d, 0)), bounds(d, 1));
    return out;
}

}  // namespace

NmResult nelder_mead(const ObjectiveFn& f, const Eigen::VectorXd& x0, const NmConfig& cfg,
                     std::vector<double>* f_history) {
    const int d = cfg.dim();
    if (x0.size() != d) throw std::invalid_argument("nelder_mead: x0 dimension mismatch");
    for (int j = 0; j < d; ++j) {
        if (!(cfg.bounds(j, 0) < cfg.bounds(j, 1)))
            throw std::invalid_argument("nelder_mead: bounds must satisfy lo < hi");
        if (x0(j) < cfg.bounds(j, 0) || x0(j) > cfg.bounds(j, 1))
            throw std::invalid_argument("nelder_mead: x0 outside bounds");
    }
    const int max_iters = cfg.max_iters > 0 ? cfg.max_iters : 200 * d;

    // Initial simplex: x0 plus one vertex per dimension offset by 5% of the
    // bound range (flipped if that would leave the box).
    std::vector<Eigen::VectorXd> xs(d + 1, x0);
    for (int j = 0; j < d; ++j) {
        const double step = 0.05 * (cfg.bounds(j, 1) - cfg.bounds(j, 0));
        double v = x0(j) + step;
        if (v > cfg.bounds(j, 1)) v = x0(j) - step;
        xs[j + 1](j) = v;
    }
    std::vector<double> fs(d + 1);
    for (int k = 0; k <= d; ++k) fs[k] = safe_eval(f, xs[k]);
    const double f_at_x0 = fs[0];

    std::vector<int> order(d + 1);
    auto sort_desc = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] > fs[b]; });
    };

    int iter = 0;
    for (; iter < max_iters; ++iter) {
        sort_desc();
        const int best = order[0];
        const int second_worst = order[d - 1];
        const int worst = order[d];
        if (f_history) f_history->push_back(fs[best]);

        const double spread = fs[best] - fs[worst];
        if (!(spread > cfg.f_tol) && std::isfinite(fs[worst])) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (int k = 0; k <= d; ++k)
            if (k != worst) centroid += xs[k];
        centroid /= static_cast<double>(d);

        const Eigen::VectorXd xr = clip(centroid + cfg.reflect * (centroid - xs[worst]), cfg.bounds);
        const double fr = safe_eval(f, xr);

        if (fr > fs[best]) {
            const Eigen::VectorXd xe = clip(centroid + cfg.expand * (xr - centroid), cfg.bounds);
            const double fe = safe_eval(f, xe);
            if (fe > fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr > fs[second_worst]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr > fs[worst];
            const Eigen::VectorXd base = outside ? xr : xs[worst];
            const Eigen::VectorXd xc = clip(centroid + cfg.contract * (base - centroid), cfg.bounds);
            const double fc = safe_eval(f, xc);
            if (fc > (outside ? fr : fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (int k = 0; k <= d; ++k) {
                    if (k == best) continue;
                    xs[k] = clip(xs[best] + cfg.shrink * (xs[k] - xs[best]), cfg.bounds);
                    fs[k] = safe_eval(f, xs[k]);
                }
            }
        }
    }

    sort_desc();
    NmResult result;
    result.x = xs[order[0]];
    result.f = fs[order[0]];
    result.f_start = f_at_x0;
    result.iterations = iter;
    return result;
}

NmResult multi_start(const ObjectiveFn& f, const NmConfig& cfg, std::vector<NmResult>* runs) {
    if (cfg.n_starts < 1) throw std::invalid_argument("multi_start: n_starts must be >= 1");
    const int d = cfg.dim();
    std::mt19937_64 rng = make_rng(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    NmResult best;
    best.f = kNegInf;
    for (int s = 0; s < cfg.n_starts; ++s) {
        Eigen::VectorXd x0(d);
        for (int j = 0; j < d; ++j)
            x0(j) = cfg.bounds(j, 0) + u01(rng) * (cfg.bounds(j, 1) - cfg.bounds(j, 0));
        NmResult r = nelder_mead(f, x0, cfg);
        if (runs) runs->push_back(r);
        if (r.f > best.f || best.x.size() == 0) best = r;
    }
    return best;
}

}  // namespace bsopt
