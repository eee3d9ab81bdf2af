#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lipkit/cone_approx.hpp"
#include "lipkit/lip_analysis.hpp"
#include "test_support.hpp"

using namespace lipkit;
using namespace lipkit::testing;

namespace {

/// Random function rescaled into the unit ball of the snowflaked metric.
SampledFunction unit_ball_function(const SpacePtr& space, double alpha,
                                   std::uint64_t seed) {
    auto snow = space->snowflake(alpha);
    std::vector<double> values = random_function(space, seed).values();
    for (int pass = 0; pass < 8; ++pass) {
        const double c =
            lipschitz_constant(SampledFunction::create(snow, values));
        if (c <= 1.0) break;
        for (double& v : values) v /= c;
        values[space->base_index()] = 0.0;
    }
    return SampledFunction::create(space, std::move(values));
}

}  // namespace

TEST_SUITE_BEGIN("cone_approx");

TEST_CASE("a single center yields gamma 1 and rho 0") {
    auto space = random_planar_space(6, 1);
    auto f = random_function(space, 2);
    const std::size_t centers[] = {3};
    const ConeParams p = cone_params(space, f, centers, 0.5, 2);
    CHECK(p.gamma == 1.0);
    CHECK(p.rho == 0.0);
    double max_abs = 0.0;
    for (double v : f.values()) max_abs = std::max(max_abs, std::abs(v));
    CHECK(p.shift == max_abs);
}

TEST_CASE("a diameter pair at n=1, alpha=0.5 clamps gamma at 1") {
    // e*ln(2) is about 1.88, so alpha + e*ln(2)*d/diam = 0.5 + 1.88 caps at 1
    auto space = PointedMetricSpace::create({"a", "b"}, {{0, 1}, {1, 0}}, 0);
    auto f = SampledFunction::create(space, {0.0, 0.5});
    const std::size_t centers[] = {0, 1};
    const ConeParams p = cone_params(space, f, centers, 0.5, 1);
    CHECK(p.gamma == 1.0);
    CHECK(p.rho == doctest::Approx(0.5 + 0.5).epsilon(0).scale(1e-15));
}

TEST_CASE("gamma and rho match the direct pair-enumeration oracle") {
    auto space = random_planar_space(12, 20240903);
    auto f = random_function(space, 5);
    const std::vector<std::size_t> centers{0, 2, 5, 7, 11};
    const double alpha = 0.35;
    const int n = 3;
    const ConeParams p = cone_params(space, f, centers, alpha, n);

    double shift = 0.0;
    for (double v : f.values()) shift = std::max(shift, std::abs(v));
    const double diam = space->diameter();
    double gamma = 1.0;
    for (std::size_t a : centers)
        for (std::size_t b : centers) {
            if (a == b) continue;
            gamma = std::min(gamma,
                             alpha + std::numbers::e * std::log(1.0 + 1.0 / n) /
                                         diam * space->distance(a, b));
        }
    double rho = 0.0;
    for (std::size_t a : centers)
        for (std::size_t b : centers) {
            if (a == b) continue;
            rho = std::max(rho, std::abs((f.value(a) + shift) -
                                         (f.value(b) + shift)) /
                                    std::pow(space->distance(a, b), gamma));
        }
    CHECK(p.gamma == doctest::Approx(gamma).epsilon(0).scale(1e-12));
    CHECK(p.rho == doctest::Approx(rho).epsilon(0).scale(1e-12));
    CHECK(p.gamma > alpha);
    CHECK(p.gamma <= 1.0);
}

TEST_CASE("cone params reject degenerate inputs") {
    auto singleton = PointedMetricSpace::create({"a"}, {{0}}, 0);
    auto f0 = SampledFunction::zero(singleton);
    const std::size_t one[] = {0};
    CHECK_THROWS_AS(cone_params(singleton, f0, one, 0.5, 1),
                    std::invalid_argument);

    auto space = random_planar_space(5, 9);
    auto f = random_function(space, 9);
    CHECK_THROWS_AS(cone_params(space, f, one, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(cone_params(space, f, one, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(cone_params(space, f, one, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(cone_params(space, f, {}, 0.5, 1), std::invalid_argument);
    const std::size_t bad[] = {17};
    CHECK_THROWS_AS(cone_params(space, f, bad, 0.5, 1), std::invalid_argument);
}

TEST_CASE("interpolant through the base alone is identically zero") {
    auto space = random_planar_space(7, 12);
    auto f = unit_ball_function(space, 0.5, 13);
    const std::size_t centers[] = {space->base_index()};
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.5, 1);
    for (std::size_t i = 0; i < space->size(); ++i)
        CHECK(h.evaluate_at(i) == 0.0);
}

TEST_CASE("interpolating on every point reproduces f") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto space = random_planar_space(10, 100 + seed);
        auto f = unit_ball_function(space, 0.5, 200 + seed);
        std::vector<std::size_t> all(space->size());
        std::iota(all.begin(), all.end(), 0);
        const ConeApproximant h = cone_interpolant(space, f, all, 0.5, 2);
        for (std::size_t i = 0; i < space->size(); ++i)
            CHECK(h.evaluate_at(i) == f.value(i));
    }
}

TEST_CASE("interpolation is exact on the centers") {
    auto space = random_planar_space(20, 20240904);
    auto f = unit_ball_function(space, 0.5, 77);
    const std::vector<std::size_t> centers{0, 3, 6, 9, 12, 19};
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.5, 3);
    for (std::size_t c : centers)
        CHECK(std::abs(h.evaluate_at(c) - f.value(c)) <= kExactTolerance);
}

TEST_CASE("certified Holder constant on a unit-ball function") {
    auto space = random_planar_space(20, 20240905);
    auto f = unit_ball_function(space, 0.5, 78);
    const std::vector<std::size_t> centers{0, 2, 5, 9, 14, 18};
    const int n = 3;
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.5, n);
    std::vector<double> values = h.sample_all();
    const double lip = lipschitz_constant(
        SampledFunction::create(space->snowflake(0.5), values));
    CHECK(lip <= 1.0 + 1.0 / n + kCertificateTolerance);
}

TEST_CASE("per-center cones obey the slope bound") {
    auto space = random_planar_space(15, 20240906);
    auto f = unit_ball_function(space, 0.4, 21);
    const std::vector<std::size_t> centers{0, 4, 8, 12};
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.4, 2);
    const ConeParams& p = h.params();
    auto snow = space->snowflake(0.4);

    const double limit =
        p.rho * std::pow(space->diameter(), p.gamma - p.alpha) +
        kCertificateTolerance;
    for (std::size_t j = 0; j < centers.size(); ++j) {
        // g_j(x) = max{ value_j - rho d(x_j, x)^gamma, 0 }, rebuilt from the
        // public fields
        std::vector<double> cone(space->size());
        for (std::size_t i = 0; i < space->size(); ++i)
            cone[i] = std::max(
                h.center_values()[j] -
                    p.rho * std::pow(space->distance(centers[j], i), p.gamma),
                0.0);
        double lip = 0.0;
        for (std::size_t i = 0; i < space->size(); ++i)
            for (std::size_t k = i + 1; k < space->size(); ++k)
                lip = std::max(lip, std::abs(cone[i] - cone[k]) /
                                        snow->distance(i, k));
        CHECK(lip <= limit);
    }
}

TEST_CASE("the interpolant is Lipschitz for the cone exponent with constant rho") {
    auto space = random_planar_space(14, 20240907);
    auto f = unit_ball_function(space, 0.3, 31);
    const std::vector<std::size_t> centers{0, 1, 5, 9, 13};
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.3, 4);
    const double lip_gamma = lipschitz_constant(SampledFunction::create(
        space->snowflake(h.params().gamma), h.sample_all()));
    CHECK(lip_gamma <= h.params().rho + kCertificateTolerance);
}

TEST_CASE("permuting the centers leaves the interpolant unchanged") {
    auto space = random_planar_space(13, 20240908);
    auto f = unit_ball_function(space, 0.5, 41);
    const std::vector<std::size_t> centers{0, 7, 2, 11, 5};
    std::vector<std::size_t> shuffled{5, 2, 11, 0, 7};
    const ConeApproximant a = cone_interpolant(space, f, centers, 0.5, 2);
    const ConeApproximant b = cone_interpolant(space, f, shuffled, 0.5, 2);
    for (std::size_t i = 0; i < space->size(); ++i)
        CHECK(a.evaluate_at(i) == b.evaluate_at(i));
}

TEST_CASE("duplicate centers are dropped") {
    auto space = random_planar_space(8, 3);
    auto f = unit_ball_function(space, 0.5, 4);
    const std::vector<std::size_t> dup{0, 3, 3, 0, 5};
    const ConeApproximant h = cone_interpolant(space, f, dup, 0.5, 1);
    CHECK(h.centers() == std::vector<std::size_t>{0, 3, 5});
}

TEST_CASE("evaluation by explicit distances matches evaluation by index") {
    auto space = random_planar_space(9, 6);
    auto f = unit_ball_function(space, 0.5, 7);
    const std::vector<std::size_t> centers{0, 2, 6};
    const ConeApproximant h = cone_interpolant(space, f, centers, 0.5, 2);
    for (std::size_t i = 0; i < space->size(); ++i) {
        std::vector<double> dists;
        for (std::size_t c : centers) dists.push_back(space->distance(c, i));
        CHECK(h.evaluate_with_distances(dists) == h.evaluate_at(i));
    }
    CHECK_THROWS_AS(h.evaluate_with_distances(std::vector<double>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        h.evaluate_with_distances(std::vector<double>{1.0, -0.5, 1.0}),
        std::invalid_argument);
}

TEST_CASE("power map minimum has the closed form") {
    const auto m1 = power_map_minimum(std::numbers::e, 1);
    CHECK(m1.argmin == doctest::Approx(1.0).epsilon(0).scale(1e-15));
    CHECK(m1.value == 0.5);

    const auto m4 = power_map_minimum(1.0, 4);
    CHECK(m4.argmin == doctest::Approx(1.0 / std::numbers::e).epsilon(0).scale(1e-15));
    CHECK(m4.value == 0.8);

    CHECK_THROWS_AS(power_map_minimum(0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(power_map_minimum(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(power_map_value(1.0, 1, 0.0), std::invalid_argument);
}

TEST_CASE("grid scan of the power map attains the closed-form minimum") {
    for (const double diam : {0.5, 2.0}) {
        for (const int n : {1, 5}) {
            double best = power_map_value(diam, n, 10.0 * diam / 200000);
            double best_t = 10.0 * diam / 200000;
            for (int i = 2; i <= 200000; ++i) {
                const double t = 10.0 * diam * i / 200000;
                const double v = power_map_value(diam, n, t);
                if (v < best) {
                    best = v;
                    best_t = t;
                }
            }
            const auto closed = power_map_minimum(diam, n);
            CHECK(std::abs(best - closed.value) <= 1e-6);
            CHECK(std::abs(best_t - closed.argmin) <= 1e-3 * diam);
        }
    }
}

TEST_CASE("sequence on the zero function is identically zero") {
    auto space = random_planar_space(10, 15);
    auto result =
        little_holder_sequence(space, SampledFunction::zero(space), 0.5, 4);
    for (const auto& step : result.steps) {
        CHECK(step.row.sup_error == 0.0);
        for (double v : step.normalized.values()) CHECK(v == 0.0);
    }
}

TEST_CASE("sequence of the interval identity meets the error bound") {
    auto space = interval_space(32);
    std::vector<double> values(32);
    for (std::size_t i = 0; i < 32; ++i) values[i] = static_cast<double>(i) / 31;
    auto f = SampledFunction::create(space, values);
    auto result = little_holder_sequence(space, f, 0.5, 8);
    CHECK(result.lip_alpha_f <= 1.0);

    auto snow = space->snowflake(0.5);
    for (const auto& step : result.steps) {
        const int n = step.n;
        // exhaustive per-point scan against the recorded sup error
        double scan = 0.0;
        for (std::size_t i = 0; i < space->size(); ++i)
            scan = std::max(scan, std::abs(f.value(i) - step.h_values[i]));
        CHECK(scan == step.row.sup_error);
        CHECK(step.row.sup_error <= (2.0 + 1.0 / n) / n + kCertificateTolerance);
        CHECK(step.row.r >= 1.0);
        CHECK(lipschitz_constant(SampledFunction::create(
                  snow, step.normalized.values())) <= 1.0);
        CHECK(step.normalized.value(space->base_index()) == 0.0);
    }
}

TEST_CASE("a net finer than the minimum gap returns f itself") {
    auto space = random_planar_space(9, 16);
    auto f = unit_ball_function(space, 0.5, 17);
    auto snow = space->snowflake(0.5);
    // choose n with 1/n below the smallest snowflaked distance
    const int n = static_cast<int>(1.0 / snow->min_positive_distance()) + 1;
    auto result = little_holder_sequence(space, f, 0.5, n);
    const auto& last = result.steps.back();
    CHECK(last.net.centers.size() == space->size());
    CHECK(last.row.sup_error == 0.0);
}

TEST_SUITE_END();
