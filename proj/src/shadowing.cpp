#include "bsopt/shadowing.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "bsopt/rng.hpp"

namespace bsopt {

const char* to_string(ShadowMode mode) {
    switch (mode) {
        case ShadowMode::midpoint2d: return "midpoint-2d";
        case ShadowMode::receiver2d: return "receiver-2d";
        case ShadowMode::endpoint4d: return "endpoint-4d";
    }
    return "?";
}

std::optional<ShadowMode> shadow_mode_from_string(const std::string& s) {
    if (s == "midpoint-2d") return ShadowMode::midpoint2d;
    if (s == "receiver-2d") return ShadowMode::receiver2d;
    if (s == "endpoint-4d") return ShadowMode::endpoint4d;
    return std::nullopt;
}

double ppp_intensity(int dim, double d_cor) {
    if (dim == 2) return 1.0 / (4.0 * d_cor * d_cor);
    if (dim == 4) {
        const double g = std::tgamma(1.25);
        const double pi = 3.14159265358979323846;
        return std::pow(g / d_cor, 4.0) * 2.0 / (pi * pi);
    }
    throw std::invalid_argument("ppp_intensity: dim must be 2 or 4");
}

ShadowingField ShadowingField::build(const ScenarioParams& params, ShadowMode mode,
                                     std::uint64_t seed) {
    params.validate();
    const int dim = (mode == ShadowMode::endpoint4d) ? 4 : 2;
    const double lambda = ppp_intensity(dim, params.d_cor);
    const double volume = std::pow(params.area_side, dim);

    std::mt19937_64 rng = make_rng(seed);
    std::poisson_distribution<long> count(lambda * volume);

    ShadowingField field;
    field.mode_ = mode;
    field.seed_ = seed;

    long n = count(rng);
    while (n == 0) {
        n = count(rng);
        ++field.redraws_;
    }

    std::uniform_real_distribution<double> coord(0.0, params.area_side);
    field.points_.resize(n, dim);
    for (long i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d) field.points_(i, d) = coord(rng);

    field.values_.resize(n);
    if (params.sigma_s > 0.0) {
        std::normal_distribution<double> shadow(0.0, params.sigma_s);
        for (long i = 0; i < n; ++i) field.values_(i) = shadow(rng);
    } else {
        field.values_.setZero();
    }
    return field;
}

double ShadowingField::query_db(const Eigen::Vector2d& tx, const Eigen::Vector2d& rx) const {
    double key[4];
    int dim = 2;
    switch (mode_) {
        case ShadowMode::midpoint2d:
            key[0] = 0.5 * (tx.x() + rx.x());
            key[1] = 0.5 * (tx.y() + rx.y());
            break;
        case ShadowMode::receiver2d:
            key[0] = rx.x();
            key[1] = rx.y();
            break;
        case ShadowMode::endpoint4d: {
            // Order endpoints lexicographically so (tx, rx) and (rx, tx)
            // map to the same key.
            const bool tx_first =
                (tx.x() < rx.x()) || (tx.x() == rx.x() && tx.y() <= rx.y());
            const Eigen::Vector2d& a = tx_first ? tx : rx;
            const Eigen::Vector2d& b = tx_first ? rx : tx;
            key[0] = a.x();
            key[1] = a.y();
            key[2] = b.x();
            key[3] = b.y();
            dim = 4;
            break;
        }
    }

    const long n = points_.rows();
    long best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            const double diff = points_(i, d) - key[d];
            d2 += diff * diff;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return values_(best);
}

}  // namespace bsopt
