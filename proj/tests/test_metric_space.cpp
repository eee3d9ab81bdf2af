#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lipkit/metric_space.hpp"
#include "test_support.hpp"

using namespace lipkit;
using namespace lipkit::testing;

TEST_SUITE_BEGIN("metric_space");

TEST_CASE("two point space validates and has diameter 1") {
    auto space = PointedMetricSpace::create({"a", "b"}, {{0, 1}, {1, 0}}, 0);
    CHECK(space->size() == 2);
    CHECK(space->diameter() == 1.0);
    CHECK(space->distance(0, 1) == 1.0);
    CHECK(space->index_of("b") == 1);
}

TEST_CASE("singleton space has diameter 0") {
    auto space = PointedMetricSpace::create({"a"}, {{0}}, 0);
    CHECK(space->diameter() == 0.0);
}

TEST_CASE("construction rejects malformed matrices") {
    CHECK_THROWS_WITH_AS(
        PointedMetricSpace::create({"a", "b", "c"},
                                   {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, 0),
        doctest::Contains("triangle inequality violated at (0,2,1)"),
        std::invalid_argument);
    // asymmetric
    CHECK_THROWS_AS(
        PointedMetricSpace::create({"a", "b"}, {{0, 1}, {2, 0}}, 0),
        std::invalid_argument);
    // negative entry
    CHECK_THROWS_AS(
        PointedMetricSpace::create({"a", "b"}, {{0, -1}, {-1, 0}}, 0),
        std::invalid_argument);
    // coincident points
    CHECK_THROWS_AS(PointedMetricSpace::create({"a", "b"}, {{0, 0}, {0, 0}}, 0),
                    std::invalid_argument);
    // nonzero diagonal
    CHECK_THROWS_AS(PointedMetricSpace::create({"a", "b"}, {{1, 1}, {1, 0}}, 0),
                    std::invalid_argument);
    // base out of range
    CHECK_THROWS_AS(PointedMetricSpace::create({"a", "b"}, {{0, 1}, {1, 0}}, 2),
                    std::invalid_argument);
    // ragged matrix
    CHECK_THROWS_AS(PointedMetricSpace::create({"a", "b"}, {{0, 1}}, 0),
                    std::invalid_argument);
}

TEST_CASE("snowflake raises distances to the power alpha") {
    auto space = PointedMetricSpace::create({"a", "b"}, {{0, 4}, {4, 0}}, 0);
    CHECK(space->snowflake(0.5)->distance(0, 1) == 2.0);

    auto same = space->snowflake(1.0);
    CHECK(same->distance(0, 1) == space->distance(0, 1));

    CHECK_THROWS_AS(space->snowflake(0.0), std::invalid_argument);
    CHECK_THROWS_AS(space->snowflake(1.5), std::invalid_argument);
    CHECK_THROWS_AS(space->snowflake(-0.5), std::invalid_argument);
}

TEST_CASE("snowflaked random space passes the exhaustive triangle check") {
    auto space = random_planar_space(8, 20240901);
    auto snow = space->snowflake(0.3);  // create() already validated; re-check
    const std::size_t n = snow->size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                CHECK(snow->distance(i, j) <=
                      snow->distance(i, k) + snow->distance(k, j) +
                          1e-9 * snow->diameter());
}

TEST_CASE("snowflake composes multiplicatively") {
    auto space = random_planar_space(10, 7);
    auto twice = space->snowflake(0.6)->snowflake(0.5);
    auto once = space->snowflake(0.3);
    for (std::size_t i = 0; i < space->size(); ++i)
        for (std::size_t j = 0; j < space->size(); ++j)
            CHECK(twice->distance(i, j) ==
                  doctest::Approx(once->distance(i, j)).epsilon(0).scale(1e-12));
}

TEST_CASE("diameter of a snowflake is the snowflaked diameter") {
    auto space = random_planar_space(12, 99);
    CHECK(space->snowflake(0.4)->diameter() ==
          doctest::Approx(std::pow(space->diameter(), 0.4))
              .epsilon(0)
              .scale(1e-12));
}

TEST_CASE("diameter equals the brute-force pair maximum") {
    auto space = random_planar_space(16, 31337);
    double expected = 0.0;  // independent scan
    for (std::size_t i = 0; i < space->size(); ++i)
        for (std::size_t j = 0; j < space->size(); ++j)
            expected = std::max(expected, space->distance(i, j));
    CHECK(space->diameter() == expected);
}

TEST_CASE("greedy net with a huge radius is the base point alone") {
    auto space = random_planar_space(9, 5);
    auto cover = greedy_net(space, 2.0 * space->diameter());
    CHECK(cover.centers == std::vector<std::size_t>{space->base_index()});
    CHECK(covers(cover));
}

TEST_CASE("greedy net below the minimum distance needs every point") {
    auto space = random_planar_space(9, 5);
    auto cover = greedy_net(space, 0.5 * space->min_positive_distance());
    CHECK(cover.centers.size() == space->size());
    CHECK(covers(cover));
}

TEST_CASE("greedy net covers ten evenly spaced points at radius 0.25") {
    auto space = interval_space(10);
    auto cover = greedy_net(space, 0.25);
    CHECK(covers(cover));
    // exhaustive coverage scan, independent of covers()
    for (std::size_t i = 0; i < space->size(); ++i) {
        bool hit = false;
        for (std::size_t c : cover.centers)
            hit = hit || space->distance(i, c) < 0.25;
        CHECK(hit);
    }
    CHECK(cover.centers.front() == space->base_index());

    auto rerun = greedy_net(space, 0.25);
    CHECK(rerun.centers == cover.centers);  // deterministic
}

TEST_CASE("greedy net rejects nonpositive radii") {
    auto space = interval_space(4);
    CHECK_THROWS_AS(greedy_net(space, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(greedy_net(space, -1.0), std::invalid_argument);
}

TEST_SUITE_END();
