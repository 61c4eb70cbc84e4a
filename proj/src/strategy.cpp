#include "bsopt/strategy.hpp"

namespace bsopt {

const char* to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::nested: return "nested";
        case StrategyKind::placement_only: return "placement_only";
        case StrategyKind::regular_power: return "regular_power";
        case StrategyKind::pure_joint: return "pure_joint";
        case StrategyKind::random_search: return "random_search";
    }
    return "?";
}

std::optional<StrategyKind> strategy_from_string(const std::string& s) {
    if (s == "nested") return StrategyKind::nested;
    if (s == "placement_only") return StrategyKind::placement_only;
    if (s == "regular_power") return StrategyKind::regular_power;
    if (s == "pure_joint") return StrategyKind::pure_joint;
    if (s == "random_search") return StrategyKind::random_search;
    return std::nullopt;
}

Box placement_box(const ScenarioParams& params) {
    Box box;
    box.lo.resize(2 * params.n_tx);
    box.hi.resize(2 * params.n_tx);
    for (int i = 0; i < params.n_tx; ++i) {
        box.lo(2 * i) = 0.0;
        box.hi(2 * i) = params.area_side;
        box.lo(2 * i + 1) = params.strip_lo(i);
        box.hi(2 * i + 1) = params.strip_hi(i);
    }
    return box;
}

Box power_box(const ScenarioParams& params) {
    Box box;
    box.lo = Eigen::VectorXd::Zero(params.n_tx);
    box.hi = Eigen::VectorXd::Constant(params.n_tx, params.p_max);
    return box;
}

Box joint_box(const ScenarioParams& params) {
    const Box p = placement_box(params);
    const Box w = power_box(params);
    Box box;
    box.lo.resize(3 * params.n_tx);
    box.hi.resize(3 * params.n_tx);
    box.lo << p.lo, w.lo;
    box.hi << p.hi, w.hi;
    return box;
}

Placement placement_from_flat(const Eigen::VectorXd& x, int n_tx) {
    Placement placement;
    placement.positions.reserve(n_tx);
    for (int i = 0; i < n_tx; ++i)
        placement.positions.emplace_back(x(2 * i), x(2 * i + 1));
    return placement;
}

Eigen::VectorXd placement_to_flat(const Placement& placement) {
    Eigen::VectorXd x(2 * placement.size());
    for (int i = 0; i < placement.size(); ++i) {
        x(2 * i) = placement.positions[i].x();
        x(2 * i + 1) = placement.positions[i].y();
    }
    return x;
}

}  // namespace bsopt
