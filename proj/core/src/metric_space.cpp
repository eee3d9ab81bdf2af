#include "lipkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lipkit/detail/format.hpp"

namespace lipkit {

namespace {

void validate_matrix(const std::vector<std::string>& labels,
                     const std::vector<double>& dist, std::size_t base_index) {
    const std::size_t n = labels.size();
    if (n == 0) throw std::invalid_argument("space must contain at least one point");
    if (base_index >= n)
        throw std::invalid_argument(detail::format(
            "base index %zu out of range for %zu points", base_index, n));

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist[i * n + j];
            if (!std::isfinite(d))
                throw std::invalid_argument(detail::format(
                    "non-finite distance at (%zu,%zu)", i, j));
            if (d < 0.0)
                throw std::invalid_argument(detail::format(
                    "negative distance %.17g at (%zu,%zu)", d, i, j));
            if (i == j && d != 0.0)
                throw std::invalid_argument(detail::format(
                    "nonzero diagonal entry %.17g at (%zu,%zu)", d, i, j));
            if (i != j && d == 0.0)
                throw std::invalid_argument(detail::format(
                    "zero distance between distinct points %zu and %zu", i, j));
            if (dist[i * n + j] != dist[j * n + i])
                throw std::invalid_argument(detail::format(
                    "asymmetric matrix at (%zu,%zu): %.17g vs %.17g", i, j,
                    dist[i * n + j], dist[j * n + i]));
            scale = std::max(scale, d);
        }
    }

    const double tol = kTriangleTolerance * scale;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = dist[i * n + j];
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                if (dij > dist[i * n + k] + dist[k * n + j] + tol)
                    throw std::invalid_argument(detail::format(
                        "triangle inequality violated at (%zu,%zu,%zu): "
                        "d(%zu,%zu)=%.17g > %.17g + %.17g",
                        i, j, k, i, j, dij, dist[i * n + k], dist[k * n + j]));
            }
        }
    }
}

}  // namespace

PointedMetricSpace::PointedMetricSpace(std::vector<std::string> labels,
                                       std::vector<double> flat,
                                       std::size_t base_index)
    : labels_(std::move(labels)), dist_(std::move(flat)), base_(base_index) {
    const std::size_t n = labels_.size();
    diameter_ = 0.0;
    min_positive_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist_[i * n + j];
            diameter_ = std::max(diameter_, d);
            min_positive_ = std::min(min_positive_, d);
        }
    }
}

SpacePtr PointedMetricSpace::create(std::vector<std::string> labels,
                                    const std::vector<std::vector<double>>& dist,
                                    std::size_t base_index) {
    const std::size_t n = labels.size();
    if (dist.size() != n)
        throw std::invalid_argument(detail::format(
            "distance matrix has %zu rows for %zu labels", dist.size(), n));
    std::vector<double> flat(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n)
            throw std::invalid_argument(detail::format(
                "distance matrix row %zu has %zu entries, expected %zu", i,
                dist[i].size(), n));
        for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = dist[i][j];
    }
    validate_matrix(labels, flat, base_index);
    return SpacePtr(new PointedMetricSpace(std::move(labels), std::move(flat),
                                           base_index));
}

std::size_t PointedMetricSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown point label: " + label);
}

SpacePtr PointedMetricSpace::snowflake(double alpha) const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument(detail::format(
            "snowflake exponent must lie in (0,1], got %.17g", alpha));
    const std::size_t n = labels_.size();
    std::vector<double> flat(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) flat[i * n + j] = std::pow(dist_[i * n + j], alpha);
    validate_matrix(labels_, flat, base_);
    return SpacePtr(new PointedMetricSpace(labels_, std::move(flat), base_));
}

NetCover greedy_net(const SpacePtr& space, double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument(detail::format(
            "net radius must be positive, got %.17g", radius));
    const std::size_t n = space->size();
    NetCover cover{space, {space->base_index()}, radius};
    std::vector<char> covered(n, 0);
    auto mark = [&](std::size_t center) {
        for (std::size_t i = 0; i < n; ++i)
            if (space->distance(i, center) < radius) covered[i] = 1;
    };
    mark(space->base_index());
    for (;;) {
        std::size_t next = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!covered[i]) { next = i; break; }
        if (next == n) break;
        cover.centers.push_back(next);
        mark(next);
    }
    return cover;
}

bool covers(const NetCover& cover) {
    const std::size_t n = cover.space->size();
    for (std::size_t i = 0; i < n; ++i) {
        bool hit = false;
        for (std::size_t c : cover.centers)
            if (cover.space->distance(i, c) < cover.radius) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

}  // namespace lipkit
