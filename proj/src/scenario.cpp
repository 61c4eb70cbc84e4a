#include "bsopt/scenario.hpp"

#include <sstream>

namespace bsopt {

void ScenarioParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("scenario: " + msg); };
    if (!(area_side > 0)) fail("area_side must be > 0");
    if (!(grid_step > 0)) fail("grid_step must be > 0");
    const double ratio = area_side / grid_step;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9)
        fail("area_side must be divisible by grid_step");
    if (!(eta > 0)) fail("eta must be > 0");
    if (sigma_s < 0) fail("sigma_s must be >= 0");
    if (!(p_max > 0)) fail("p_max must be > 0");
    if (!(bandwidth > 0)) fail("bandwidth must be > 0");
    if (sigma_eps_m < 0) fail("sigma_eps_m must be >= 0");
    if (n_tx < 1) fail("n_tx must be >= 1");
    if (d_cor <= 0) fail("d_cor must be > 0");
}

std::vector<std::string> placement_violations(const ScenarioParams& params,
                                              const Placement& placement) {
    std::vector<std::string> out;
    if (placement.size() != params.n_tx) {
        out.push_back("placement has " + std::to_string(placement.size()) +
                      " positions, expected " + std::to_string(params.n_tx));
        return out;
    }
    for (int i = 0; i < placement.size(); ++i) {
        const auto& p = placement.positions[i];
        if (p.x() < 0.0 || p.x() > params.area_side) {
            std::ostringstream os;
            os << "x out of range for tx " << i << " (x=" << p.x() << ")";
            out.push_back(os.str());
        }
        if (p.y() < params.strip_lo(i) || p.y() > params.strip_hi(i)) {
            std::ostringstream os;
            os << "strip violation for tx " << i << " (y=" << p.y() << ", strip=["
               << params.strip_lo(i) << "," << params.strip_hi(i) << "])";
            out.push_back(os.str());
        }
    }
    return out;
}

std::vector<std::string> area_violations(const ScenarioParams& params,
                                         const Placement& placement) {
    std::vector<std::string> out;
    if (placement.size() != params.n_tx) {
        out.push_back("placement has " + std::to_string(placement.size()) +
                      " positions, expected " + std::to_string(params.n_tx));
        return out;
    }
    for (int i = 0; i < placement.size(); ++i) {
        const auto& p = placement.positions[i];
        if (p.x() < 0.0 || p.x() > params.area_side || p.y() < 0.0 ||
            p.y() > params.area_side) {
            std::ostringstream os;
            os << "tx " << i << " outside the area (" << p.x() << "," << p.y() << ")";
            out.push_back(os.str());
        }
    }
    return out;
}

std::vector<std::string> power_violations(const ScenarioParams& params,
                                          const PowerVector& powers) {
    std::vector<std::string> out;
    if (powers.size() != params.n_tx) {
        out.push_back("power vector has " + std::to_string(powers.size()) +
                      " entries, expected " + std::to_string(params.n_tx));
        return out;
    }
    for (int i = 0; i < powers.size(); ++i) {
        const double p = powers.mw(i);
        if (!(p >= 0.0) || p > params.p_max) {
            std::ostringstream os;
            os << "power violation for tx " << i << " (P=" << p << " mW, max=" << params.p_max
               << ")";
            out.push_back(os.str());
        }
    }
    return out;
}

FeasibilityReport check_feasible(const ScenarioParams& params, const DesignPoint& point) {
    FeasibilityReport report;
    for (auto& v : placement_violations(params, point.placement)) report.violations.push_back(v);
    for (auto& v : power_violations(params, point.powers)) report.violations.push_back(v);
    report.ok = report.violations.empty();
    return report;
}

}  // namespace bsopt
