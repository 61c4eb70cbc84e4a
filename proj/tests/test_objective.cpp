#include <doctest.h>

#include <cmath>
#include <random>

#include "bsopt/objective.hpp"
#include "bsopt/rng.hpp"

using namespace bsopt;

namespace {

// Manual map set with prescribed dB gains (cells x n_tx).
GainMapSet make_maps(const Eigen::MatrixXd& gains_db, int cells_per_side, double grid_step) {
    GainMapSet maps;
    maps.gains_db = gains_db;
    maps.gains_lin = (gains_db.array() * (std::log(10.0) / 10.0)).exp();
    maps.cells_per_side = cells_per_side;
    maps.grid_step = grid_step;
    return maps;
}

// Cell-by-cell summation oracle built on capacity_at_cell.
double brute_force_throughput(const ScenarioParams& params, const GainMapSet& maps,
                              const PowerVector& powers) {
    double total = 0.0;
    for (int c = 0; c < maps.n_cells(); ++c) {
        const Eigen::VectorXd g = maps.gains_db.row(c).transpose();
        for (int i = 0; i < maps.n_tx(); ++i) total += capacity_at_cell(params, g, powers, i);
    }
    return total / maps.n_cells();
}

}  // namespace

TEST_CASE("single-transmitter capacity matches the dB arithmetic oracle") {
    ScenarioParams params;
    params.n_tx = 2;
    Eigen::VectorXd gains(2);
    gains << -40.0, -200.0;  // second tx effectively silent
    PowerVector powers{Eigen::VectorXd::Zero(2)};
    powers.mw(0) = 10.0;

    // P_Rx = 10 mW * 1e-4 = 1e-3 mW against B*N0 = 2e7 * 10^-17.4 mW
    const double bn0 = 2.0e7 * std::pow(10.0, -17.4);
    const double expected = 2.0e7 * std::log2(1.0 + 1e-3 / bn0);
    const double got = capacity_at_cell(params, gains, powers, 0);
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    CHECK(got == doctest::Approx(4.717e8).epsilon(1e-3));
}

TEST_CASE("zero power means zero capacity") {
    ScenarioParams params;
    params.n_tx = 2;
    Eigen::VectorXd gains(2);
    gains << -40.0, -50.0;
    PowerVector powers{Eigen::VectorXd::Zero(2)};
    powers.mw(1) = 10.0;
    CHECK(capacity_at_cell(params, gains, powers, 0) == 0.0);
}

TEST_CASE("two equal received powers well above noise give C close to B") {
    ScenarioParams params;
    params.n_tx = 2;
    Eigen::VectorXd gains(2);
    gains << -40.0, -40.0;
    PowerVector powers{Eigen::VectorXd::Constant(2, 10.0)};
    // SINR ~ 1 so C ~ B log2(2) = 2e7 bps
    CHECK(capacity_at_cell(params, gains, powers, 0) == doctest::Approx(2.0e7).epsilon(1e-6));
}

TEST_CASE("capacity scales exactly linearly in bandwidth at fixed SINR") {
    ScenarioParams params;
    params.n_tx = 3;
    params.p_max = 100.0;
    Eigen::VectorXd gains(3);
    gains << -52.0, -61.0, -87.5;
    PowerVector powers{Eigen::VectorXd::Constant(3, 5.0)};

    // Doubling B doubles B*N0; doubling every power restores the exact same
    // SINR bits, so the capacity must exactly double.
    ScenarioParams doubled = params;
    doubled.bandwidth = 2.0 * params.bandwidth;
    PowerVector powers2{2.0 * powers.mw};
    for (int i = 0; i < 3; ++i) {
        const double c1 = capacity_at_cell(params, gains, powers, i);
        const double c2 = capacity_at_cell(doubled, gains, powers2, i);
        CHECK(c2 == 2.0 * c1);
    }

    // The B*N0-constant variant (scaling N0 down) holds to rounding.
    ScenarioParams alt = params;
    alt.bandwidth = 2.0 * params.bandwidth;
    alt.n0_dbm_hz = params.n0_dbm_hz - 10.0 * std::log10(2.0);
    for (int i = 0; i < 3; ++i) {
        const double c1 = capacity_at_cell(params, gains, powers, i);
        const double c2 = capacity_at_cell(alt, gains, powers, i);
        CHECK(c2 == doctest::Approx(2.0 * c1).epsilon(1e-12));
    }
}

TEST_CASE("all powers zero gives zero average throughput") {
    ScenarioParams params;
    params.n_tx = 3;
    const GainMapSet maps = make_maps(Eigen::MatrixXd::Constant(16, 3, -60.0), 4, 20.0);
    CHECK(average_throughput(params, maps, PowerVector{Eigen::VectorXd::Zero(3)}) == 0.0);
}

TEST_CASE("uniform gains collapse the average to one cell") {
    ScenarioParams params;
    params.n_tx = 3;
    const GainMapSet maps = make_maps(Eigen::MatrixXd::Constant(16, 3, -60.0), 4, 20.0);
    PowerVector powers{Eigen::VectorXd::Constant(3, 4.0)};
    double one_cell = 0.0;
    for (int i = 0; i < 3; ++i)
        one_cell += capacity_at_cell(params, maps.gains_db.row(0).transpose(), powers, i);
    CHECK(average_throughput(params, maps, powers) ==
          doctest::Approx(one_cell).epsilon(1e-12));
}

TEST_CASE("vectorized throughput matches the brute-force oracle to 1e-9") {
    std::mt19937_64 rng = make_rng(17);
    std::uniform_real_distribution<double> gain_db(-120.0, -30.0);
    std::uniform_real_distribution<double> power(0.0, 10.0);
    for (int rep = 0; rep < 50; ++rep) {
        ScenarioParams params;
        params.n_tx = 1 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd g(16, params.n_tx);
        for (int c = 0; c < 16; ++c)
            for (int i = 0; i < params.n_tx; ++i) g(c, i) = gain_db(rng);
        const GainMapSet maps = make_maps(g, 4, 20.0);
        Eigen::VectorXd p(params.n_tx);
        for (int i = 0; i < params.n_tx; ++i) p(i) = power(rng);
        const PowerVector powers{p};
        const double fast = average_throughput(params, maps, powers);
        const double oracle = brute_force_throughput(params, maps, powers);
        CHECK(fast == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("single-transmitter throughput is non-decreasing in power") {
    ScenarioParams params;
    params.n_tx = 1;
    std::mt19937_64 rng = make_rng(18);
    std::uniform_real_distribution<double> gain_db(-110.0, -40.0);
    Eigen::MatrixXd g(25, 1);
    for (int c = 0; c < 25; ++c) g(c, 0) = gain_db(rng);
    const GainMapSet maps = make_maps(g, 5, 20.0);
    double prev = -1.0;
    for (double p = 0.0; p <= 10.0; p += 0.5) {
        const double f =
            average_throughput(params, maps, PowerVector{Eigen::VectorXd::Constant(1, p)});
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("turning on an interferer never helps the victim") {
    ScenarioParams params;
    params.n_tx = 2;
    Eigen::VectorXd gains(2);
    gains << -70.0, -75.0;
    PowerVector alone{Eigen::VectorXd::Zero(2)};
    alone.mw(0) = 8.0;
    for (double p2 : {0.1, 1.0, 5.0, 10.0}) {
        PowerVector both = alone;
        both.mw(1) = p2;
        CHECK(capacity_at_cell(params, gains, both, 0) <
              capacity_at_cell(params, gains, alone, 0));
    }
}
