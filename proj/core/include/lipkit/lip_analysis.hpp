#pragma once

#include <cstddef>
#include <vector>

#include "lipkit/metric_space.hpp"

namespace lipkit {

/// A real-valued function sampled on a space, vanishing at the base point.
class SampledFunction {
public:
    /// Throws std::invalid_argument unless values matches the point count
    /// and values[base] == 0 exactly.
    static SampledFunction create(SpacePtr space, std::vector<double> values);

    static SampledFunction zero(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    SampledFunction(SpacePtr space, std::vector<double> values)
        : space_(std::move(space)), values_(std::move(values)) {}

    SpacePtr space_;
    std::vector<double> values_;
};

/// Largest difference quotient |f(x)-f(y)| / d(x,y) over distinct pairs;
/// 0 on a singleton. Exact max over all pairs, no sampling.
double lipschitz_constant(const SampledFunction& f);

/// The difference-quotient transform on the off-diagonal: pair (i,j) with
/// i != j maps to (f(i)-f(j)) / d(i,j). Antisymmetric, and its sup norm
/// equals lipschitz_constant(f) by the same arithmetic.
class DifferenceQuotients {
public:
    explicit DifferenceQuotients(const SampledFunction& f);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
    double sup_norm() const;

private:
    std::size_t n_;
    std::vector<double> q_;  // diagonal entries stay 0
};

/// The restricted difference-quotient sups at a ladder of distance
/// thresholds: sups[k] is the max of |f(x)-f(y)|/d(x,y) over pairs with
/// 0 < d(x,y) < thresholds[k], or 0 when no pair qualifies. Nondecreasing
/// in k, bounded by lipschitz_constant(f); the final entry equals it once
/// the threshold exceeds the diameter.
struct FlatnessProfile {
    std::vector<double> thresholds;
    std::vector<double> sups;
};

/// Throws std::invalid_argument for an empty or non-ascending ladder.
FlatnessProfile flatness_profile(const SampledFunction& f,
                                 std::vector<double> thresholds);

/// Max over points of |f - g|. Throws std::invalid_argument when the two
/// functions live on different spaces.
double sup_distance(const SampledFunction& f, const SampledFunction& g);

}  // namespace lipkit
