#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lipkit/lip_analysis.hpp"
#include "test_support.hpp"

using namespace lipkit;
using namespace lipkit::testing;

namespace {

// independent pair-scan oracle
double brute_force_lip(const SampledFunction& f) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            best = std::max(best, std::abs(f.value(i) - f.value(j)) /
                                      f.space()->distance(i, j));
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("lip_analysis");

TEST_CASE("sampled functions must vanish at the base point") {
    auto space = interval_space(3);
    CHECK_THROWS_AS(SampledFunction::create(space, {0.1, 0.2, 0.3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction::create(space, {0.0, 0.2}),
                    std::invalid_argument);
    CHECK_NOTHROW(SampledFunction::create(space, {0.0, 0.2, 0.3}));
}

TEST_CASE("zero function has constant 0") {
    CHECK(lipschitz_constant(SampledFunction::zero(interval_space(5))) == 0.0);
}

TEST_CASE("identity on three interval points has constant 1") {
    auto space = PointedMetricSpace::create(
        {"0", "0.5", "1"}, {{0, 0.5, 1}, {0.5, 0, 0.5}, {1, 0.5, 0}}, 0);
    CHECK(lipschitz_constant(SampledFunction::create(space, {0, 0.5, 1})) == 1.0);
}

TEST_CASE("snowflaked two point space halves the quotient") {
    auto space = PointedMetricSpace::create({"a", "b"}, {{0, 4}, {4, 0}}, 0);
    auto f = SampledFunction::create(space->snowflake(0.5), {0.0, 1.0});
    CHECK(lipschitz_constant(f) == 0.5);
}

TEST_CASE("difference quotients are antisymmetric and attain the constant") {
    auto space = random_planar_space(16, 20240902);
    auto f = random_function(space, 11);
    DifferenceQuotients phi(f);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        CHECK(phi(i, i) == 0.0);
        for (std::size_t j = 0; j < phi.size(); ++j)
            CHECK(phi(i, j) == -phi(j, i));
    }
    // isometry: same pairs, same arithmetic, bit for bit
    CHECK(phi.sup_norm() == lipschitz_constant(f));
    CHECK(phi.sup_norm() == brute_force_lip(f));
}

TEST_CASE("zero function maps to identically zero quotients") {
    DifferenceQuotients phi(SampledFunction::zero(interval_space(6)));
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < phi.size(); ++j) CHECK(phi(i, j) == 0.0);
}

TEST_CASE("constant is absolutely homogeneous and subadditive") {
    auto space = random_planar_space(12, 4242);
    auto f = random_function(space, 1);
    auto g = random_function(space, 2);

    std::vector<double> scaled(f.size()), sum(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        scaled[i] = -2.5 * f.value(i);
        sum[i] = f.value(i) + g.value(i);
    }
    CHECK(lipschitz_constant(SampledFunction::create(space, scaled)) ==
          doctest::Approx(2.5 * lipschitz_constant(f)).epsilon(0).scale(1e-12));
    CHECK(lipschitz_constant(SampledFunction::create(space, sum)) <=
          lipschitz_constant(f) + lipschitz_constant(g) + 1e-12);
}

TEST_CASE("snowflake comparison bounds the Holder constant") {
    auto space = random_planar_space(14, 555);
    auto f = random_function(space, 3);
    const double alpha = 0.4, gamma = 0.9;
    const double lip_alpha = lipschitz_constant(
        SampledFunction::create(space->snowflake(alpha), f.values()));
    const double lip_gamma = lipschitz_constant(
        SampledFunction::create(space->snowflake(gamma), f.values()));
    CHECK(lip_alpha <=
          lip_gamma * std::pow(space->diameter(), gamma - alpha) + 1e-9);
}

TEST_CASE("flatness profile matches a brute-force restricted scan") {
    auto space = interval_space(64)->snowflake(0.5);
    std::vector<double> values(64);
    for (std::size_t i = 0; i < 64; ++i) values[i] = static_cast<double>(i) / 63;
    auto f = SampledFunction::create(space, values);

    std::vector<double> thresholds;
    for (int k = 6; k >= 0; --k) thresholds.push_back(std::pow(2.0, -k));
    auto profile = flatness_profile(f, thresholds);

    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        double expected = 0.0;  // oracle: scan pairs below the threshold
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                const double d = space->distance(i, j);
                if (d < thresholds[k])
                    expected = std::max(expected,
                                        std::abs(f.value(i) - f.value(j)) / d);
            }
        CHECK(profile.sups[k] == expected);
        // restricted sup of sqrt-type quotients decays with the threshold
        CHECK(profile.sups[k] <= thresholds[k]);
        if (k > 0) CHECK(profile.sups[k] >= profile.sups[k - 1]);
    }
    CHECK(profile.sups.back() == lipschitz_constant(f));
}

TEST_CASE("flatness profile edge thresholds") {
    auto space = random_planar_space(10, 77);
    auto f = random_function(space, 8);
    auto below = flatness_profile(f, {0.5 * space->min_positive_distance()});
    CHECK(below.sups[0] == 0.0);
    auto above = flatness_profile(f, {2.0 * space->diameter()});
    CHECK(above.sups[0] == lipschitz_constant(f));

    CHECK_THROWS_AS(flatness_profile(f, {}), std::invalid_argument);
    CHECK_THROWS_AS(flatness_profile(f, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(flatness_profile(f, {-0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("sup distance") {
    auto space = random_planar_space(11, 13);
    auto f = random_function(space, 21);
    CHECK(sup_distance(f, f) == 0.0);

    double expected = 0.0;
    for (double v : f.values()) expected = std::max(expected, std::abs(v));
    CHECK(sup_distance(f, SampledFunction::zero(space)) == expected);

    auto g = random_function(space, 22);
    double scan = 0.0;  // elementwise oracle
    for (std::size_t i = 0; i < f.size(); ++i)
        scan = std::max(scan, std::abs(f.value(i) - g.value(i)));
    CHECK(sup_distance(f, g) == scan);

    auto other = random_planar_space(12, 14);
    CHECK_THROWS_AS(sup_distance(f, random_function(other, 1)),
                    std::invalid_argument);
}

TEST_CASE("de Leeuw isometry holds across a seeded corpus") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto space = random_planar_space(8 + seed % 9, 1000 + seed);
        auto f = random_function(space, 2000 + seed);
        DifferenceQuotients phi(f);
        CHECK(phi.sup_norm() == lipschitz_constant(f));
        CHECK(lipschitz_constant(f) == brute_force_lip(f));
    }
}

TEST_SUITE_END();
