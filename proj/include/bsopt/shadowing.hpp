#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "bsopt/scenario.hpp"

namespace bsopt {

// Which point of the (tx, rx) pair keys the nearest-neighbor lookup.
enum class ShadowMode { midpoint2d, receiver2d, endpoint4d };

const char* to_string(ShadowMode mode);
std::optional<ShadowMode> shadow_mode_from_string(const std::string& s);

// PPP intensity such that the expected nearest-neighbor distance in
// dim dimensions equals d_cor:
//   2-d: lambda = 1 / (4 d_cor^2)
//   4-d: lambda = (Gamma(5/4) / d_cor)^4 * 2 / pi^2
double ppp_intensity(int dim, double d_cor);

// Spatially correlated log-normal shadowing, realized as a Poisson point
// set carrying i.i.d. N(0, sigma_s^2) dB values and answered by
// nearest-neighbor lookup. Immutable after construction.
class ShadowingField {
  public:
    static ShadowingField build(const ScenarioParams& params, ShadowMode mode,
                                std::uint64_t seed);

    // Shadowing value in dB for the (tx, rx) link. Symmetric in (tx, rx)
    // for midpoint2d and endpoint4d modes.
    double query_db(const Eigen::Vector2d& tx, const Eigen::Vector2d& rx) const;

    ShadowMode mode() const { return mode_; }
    std::uint64_t seed() const { return seed_; }
    int point_count() const { return static_cast<int>(points_.rows()); }
    int redraws() const { return redraws_; }
    const Eigen::MatrixXd& points() const { return points_; }
    const Eigen::VectorXd& values_db() const { return values_; }

  private:
    ShadowingField() = default;

    ShadowMode mode_ = ShadowMode::midpoint2d;
    std::uint64_t seed_ = 0;
    int redraws_ = 0;
    Eigen::MatrixXd points_;  // n x (2 or 4)
    Eigen::VectorXd values_;  // dB
};

}  // namespace bsopt
