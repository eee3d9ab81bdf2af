#include "lipkit/lip_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipkit/detail/format.hpp"

namespace lipkit {

SampledFunction SampledFunction::create(SpacePtr space,
                                        std::vector<double> values) {
    if (!space) throw std::invalid_argument("sampled function needs a space");
    if (values.size() != space->size())
        throw std::invalid_argument(detail::format(
            "function has %zu values for %zu points", values.size(),
            space->size()));
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("function values must be finite");
    if (values[space->base_index()] != 0.0)
        throw std::invalid_argument(detail::format(
            "value at the base point must be 0, got %.17g",
            values[space->base_index()]));
    return SampledFunction(std::move(space), std::move(values));
}

SampledFunction SampledFunction::zero(SpacePtr space) {
    std::vector<double> v(space->size(), 0.0);
    return create(std::move(space), std::move(v));
}

double lipschitz_constant(const SampledFunction& f) {
    const auto& space = *f.space();
    const std::size_t n = space.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double q =
                std::abs(f.value(i) - f.value(j)) / space.distance(i, j);
            if (q > best) best = q;
        }
    return best;
}

DifferenceQuotients::DifferenceQuotients(const SampledFunction& f)
    : n_(f.size()), q_(n_ * n_, 0.0) {
    if (n_ < 2)
        throw std::invalid_argument(
            "difference quotients need at least two points");
    const auto& space = *f.space();
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j)
                q_[i * n_ + j] = (f.value(i) - f.value(j)) / space.distance(i, j);
}

double DifferenceQuotients::sup_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double q = std::abs(q_[i * n_ + j]);
            if (q > best) best = q;
        }
    return best;
}

FlatnessProfile flatness_profile(const SampledFunction& f,
                                 std::vector<double> thresholds) {
    if (thresholds.empty())
        throw std::invalid_argument("flatness profile needs thresholds");
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (!(thresholds[k] > 0.0))
            throw std::invalid_argument("thresholds must be positive");
        if (k > 0 && !(thresholds[k] > thresholds[k - 1]))
            throw std::invalid_argument("thresholds must be strictly ascending");
    }
    const auto& space = *f.space();
    const std::size_t n = space.size();
    std::vector<double> sups(thresholds.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = space.distance(i, j);
            const double q = std::abs(f.value(i) - f.value(j)) / d;
            // thresholds ascend, so the first one exceeding d bounds a
            // suffix of qualifying entries
            for (std::size_t k = 0; k < thresholds.size(); ++k)
                if (d < thresholds[k] && q > sups[k]) sups[k] = q;
        }
    return FlatnessProfile{std::move(thresholds), std::move(sups)};
}

double sup_distance(const SampledFunction& f, const SampledFunction& g) {
    const bool same_object = f.space() == g.space();
    if (!same_object &&
        (f.space()->size() != g.space()->size() ||
         f.space()->labels() != g.space()->labels()))
        throw std::invalid_argument(
            "sup distance requires functions on the same space");
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        best = std::max(best, std::abs(f.value(i) - g.value(i)));
    return best;
}

}  // namespace lipkit
