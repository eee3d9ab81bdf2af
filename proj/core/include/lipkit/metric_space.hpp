#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace lipkit {

class PointedMetricSpace;

/// Shared immutable handle; all operations on spaces are pure.
using SpacePtr = std::shared_ptr<const PointedMetricSpace>;

/// A finite metric space with a distinguished base point. The distance
/// matrix is validated on construction: symmetric, zero diagonal, positive
/// off-diagonal, and triangle inequality up to 1e-9 times the largest entry
/// (snowflaked matrices carry ulp-scale noise that must not be rejected).
class PointedMetricSpace {
public:
    /// Validates and wraps a distance matrix. Throws std::invalid_argument
    /// with a message naming the offending entry or triple.
    static SpacePtr create(std::vector<std::string> labels,
                           const std::vector<std::vector<double>>& dist,
                           std::size_t base_index);

    std::size_t size() const { return labels_.size(); }
    std::size_t base_index() const { return base_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    double distance(std::size_t i, std::size_t j) const {
        return dist_[i * labels_.size() + j];
    }

    /// Max pairwise distance; 0 for a singleton.
    double diameter() const { return diameter_; }

    /// Smallest off-diagonal distance; +inf for a singleton.
    double min_positive_distance() const { return min_positive_; }

    /// Index of the point carrying this label; throws if absent.
    std::size_t index_of(const std::string& label) const;

    /// The space with every distance raised to the power alpha in (0, 1].
    /// Subadditivity of t^alpha keeps the triangle inequality valid, so the
    /// result passes full validation again.
    SpacePtr snowflake(double alpha) const;

private:
    PointedMetricSpace(std::vector<std::string> labels, std::vector<double> flat,
                       std::size_t base_index);

    std::vector<std::string> labels_;
    std::vector<double> dist_;  // row-major n*n
    std::size_t base_;
    double diameter_;
    double min_positive_;
};

/// Relative tolerance for triangle-inequality validation.
inline constexpr double kTriangleTolerance = 1e-9;

/// A finite set of centers whose strict open balls of the given radius
/// cover the space. The base point is always a center.
struct NetCover {
    SpacePtr space;
    std::vector<std::size_t> centers;
    double radius = 0.0;
};

/// Deterministic greedy cover: start from the base point and repeatedly add
/// the lowest-index point not yet within strict distance `radius` of a
/// center. Throws std::invalid_argument for radius <= 0.
NetCover greedy_net(const SpacePtr& space, double radius);

/// True when every point lies strictly within `cover.radius` of a center.
bool covers(const NetCover& cover);

}  // namespace lipkit
