#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bsopt/rng.hpp"
#include "bsopt/shadowing.hpp"

using namespace bsopt;

namespace {

// Monte-Carlo estimate of the expected distance from a fixed location to the
// nearest point of a homogeneous PPP with the given intensity (dim 2 or 4).
double mc_nearest_neighbor_distance(int dim, double lambda, double window, int reps,
                                    std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    std::poisson_distribution<long> count(lambda * std::pow(window, dim));
    std::uniform_real_distribution<double> coord(0.0, window);
    const double center = 0.5 * window;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        long n = count(rng);
        while (n == 0) n = count(rng);
        double best = std::numeric_limits<double>::infinity();
        for (long i = 0; i < n; ++i) {
            double d2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double diff = coord(rng) - center;
                d2 += diff * diff;
            }
            best = std::min(best, d2);
        }
        sum += std::sqrt(best);
    }
    return sum / reps;
}

}  // namespace

TEST_CASE("PPP intensity formulas match their closed forms") {
    // 2-d: lambda = 1 / (4 d_cor^2)
    CHECK(ppp_intensity(2, 200.0) == doctest::Approx(6.25e-6).epsilon(1e-12));
    // 4-d: (Gamma(5/4)/d_cor)^4 * 2/pi^2
    CHECK(ppp_intensity(4, 200.0) == doctest::Approx(8.546e-11).epsilon(0.01));
}

TEST_CASE("PPP intensities reproduce E[nearest-neighbor distance] = d_cor (Monte-Carlo)") {
    const double d_cor = 200.0;
    const double r2 = mc_nearest_neighbor_distance(2, ppp_intensity(2, d_cor), 2000.0, 2000, 42);
    CHECK(r2 == doctest::Approx(d_cor).epsilon(0.05));
    const double r4 = mc_nearest_neighbor_distance(4, ppp_intensity(4, d_cor), 1200.0, 500, 43);
    CHECK(r4 == doctest::Approx(d_cor).epsilon(0.05));
}

TEST_CASE("expected point counts match intensity times volume") {
    ScenarioParams params;
    double sum2 = 0.0;
    for (int s = 0; s < 400; ++s)
        sum2 += ShadowingField::build(params, ShadowMode::midpoint2d, 1000 + s).point_count();
    CHECK(sum2 / 400.0 == doctest::Approx(6.25).epsilon(0.08));

    double sum4 = 0.0;
    for (int s = 0; s < 60; ++s)
        sum4 += ShadowingField::build(params, ShadowMode::endpoint4d, 2000 + s).point_count();
    CHECK(sum4 / 60.0 == doctest::Approx(85.5).epsilon(0.08));
}

TEST_CASE("sigma_s = 0 gives an identically zero field") {
    ScenarioParams params;
    params.sigma_s = 0.0;
    const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, 7);
    CHECK(field.values_db().cwiseAbs().maxCoeff() == 0.0);
    CHECK(field.query_db({100, 100}, {900, 200}) == 0.0);
}

TEST_CASE("query at a stored point returns that point's value") {
    ScenarioParams params;
    const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, 11);
    for (int i = 0; i < field.point_count(); ++i) {
        const Eigen::Vector2d p = field.points().row(i).transpose();
        CHECK(field.query_db(p, p) == field.values_db()(i));
    }
}

TEST_CASE("midpoint mode is symmetric in (tx, rx)") {
    ScenarioParams params;
    const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, 12);
    std::mt19937_64 rng = make_rng(5);
    std::uniform_real_distribution<double> u(0.0, params.area_side);
    for (int k = 0; k < 50; ++k) {
        const Eigen::Vector2d a{u(rng), u(rng)}, b{u(rng), u(rng)};
        CHECK(field.query_db(a, b) == field.query_db(b, a));
    }
}

TEST_CASE("endpoint-4d mode is symmetric in (tx, rx)") {
    ScenarioParams params;
    const auto field = ShadowingField::build(params, ShadowMode::endpoint4d, 13);
    std::mt19937_64 rng = make_rng(6);
    std::uniform_real_distribution<double> u(0.0, params.area_side);
    for (int k = 0; k < 50; ++k) {
        const Eigen::Vector2d a{u(rng), u(rng)}, b{u(rng), u(rng)};
        CHECK(field.query_db(a, b) == field.query_db(b, a));
    }
}

TEST_CASE("single-point field answers every query with its one value") {
    ScenarioParams params;
    params.area_side = 200.0;  // lambda * |S| = 0.25, so single-point draws are common
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, seed);
        if (field.point_count() != 1) continue;
        const double v = field.values_db()(0);
        CHECK(field.query_db({0, 0}, {10, 10}) == v);
        CHECK(field.query_db({150, 40}, {20, 190}) == v);
        return;
    }
    FAIL("no single-point field found in 200 seeds");
}

TEST_CASE("zero-point draws are redrawn and recorded") {
    ScenarioParams params;
    params.area_side = 200.0;  // P(N = 0) = exp(-0.25) = 0.78
    bool saw_redraw = false;
    for (std::uint64_t seed = 0; seed < 50 && !saw_redraw; ++seed) {
        const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, seed);
        CHECK(field.point_count() >= 1);
        saw_redraw = field.redraws() > 0;
    }
    CHECK(saw_redraw);
}

TEST_CASE("queries are pure and fields are reproducible from their seed") {
    ScenarioParams params;
    const auto f1 = ShadowingField::build(params, ShadowMode::midpoint2d, 99);
    const auto f2 = ShadowingField::build(params, ShadowMode::midpoint2d, 99);
    CHECK(f1.points() == f2.points());
    CHECK(f1.values_db() == f2.values_db());
    const Eigen::Vector2d a{123.0, 456.0}, b{789.0, 321.0};
    CHECK(f1.query_db(a, b) == f1.query_db(a, b));
    CHECK(f1.query_db(a, b) == f2.query_db(a, b));
}

TEST_CASE("shadow value std over pooled field points is close to sigma_s") {
    ScenarioParams params;
    std::vector<double> values;
    std::uint64_t seed = 0;
    while (values.size() < 10000) {
        const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, 31000 + seed++);
        for (int i = 0; i < field.point_count(); ++i) values.push_back(field.values_db()(i));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= (values.size() - 1);
    const double stddev = std::sqrt(var);
    CHECK(stddev > 5.5);
    CHECK(stddev < 6.5);
}

TEST_CASE("mean squared dB difference grows with midpoint lag") {
    ScenarioParams params;
    // Link A has midpoint (300, 500); link B (350, 500), lag 50 m;
    // link C (700, 500), lag 400 m.
    const Eigen::Vector2d a1{250, 500}, a2{350, 500};
    const Eigen::Vector2d b1{300, 500}, b2{400, 500};
    const Eigen::Vector2d c1{650, 500}, c2{750, 500};
    double ms_50 = 0.0, ms_400 = 0.0;
    const int n_fields = 1000;
    for (int s = 0; s < n_fields; ++s) {
        const auto field = ShadowingField::build(params, ShadowMode::midpoint2d, 52000 + s);
        const double wa = field.query_db(a1, a2);
        const double wb = field.query_db(b1, b2);
        const double wc = field.query_db(c1, c2);
        ms_50 += (wa - wb) * (wa - wb);
        ms_400 += (wa - wc) * (wa - wc);
    }
    CHECK(ms_50 / n_fields < ms_400 / n_fields);
}
