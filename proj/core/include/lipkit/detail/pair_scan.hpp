#pragma once

#include <cmath>
#include <span>

namespace lipkit::detail {

/// Max difference quotient |v_i - v_j| / d(x_i, x_j)^alpha over all node
/// pairs of a sampled grid. Pass alpha = 1 for the plain Lipschitz constant.
template <typename Dist>
double grid_quotient_max(std::span<const double> xs, std::span<const double> vs,
                         double alpha, Dist&& dist) {
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double d = dist(xs[i], xs[j]);
            const double q = std::abs(vs[i] - vs[j]) /
                             (alpha == 1.0 ? d : std::pow(d, alpha));
            if (q > best) best = q;
        }
    return best;
}

}  // namespace lipkit::detail
