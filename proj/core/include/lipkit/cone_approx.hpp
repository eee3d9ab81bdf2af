#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lipkit/convergence_trace.hpp"
#include "lipkit/lip_analysis.hpp"
#include "lipkit/metric_space.hpp"

namespace lipkit {

/// Parameters of a cone-max interpolant targeting the alpha-snowflaked
/// metric. Distances entering gamma and rho are taken in the base metric.
struct ConeParams {
    double alpha = 0.0;  // Holder target exponent, in (0,1)
    int n = 0;           // certificate index: constant bound (1+1/n)
    double gamma = 1.0;  // cone exponent, in (alpha, 1]
    double rho = 0.0;    // cone slope
    double shift = 0.0;  // nonnegativity shift, max |f| over the space
};

/// gamma = min over distinct center pairs of
///     alpha + e * ln(1+1/n) / diam(X) * d(x_j, x_k), capped at 1,
/// rho = max over distinct center pairs of |g(x_k)-g(x_j)| / d(x_k,x_j)^gamma
/// with g = f + shift. A single center yields gamma = 1, rho = 0.
/// Throws on a singleton space (diameter 0), alpha outside (0,1), n < 1,
/// empty or out-of-range center sets.
ConeParams cone_params(const SpacePtr& space, const SampledFunction& f,
                       std::span<const std::size_t> centers, double alpha,
                       int n);

/// The function h(x) = max_j max{ g(x_j) - rho * d(x_j, x)^gamma, 0 } - shift
/// built from shifted values g = f + shift on a center set. It interpolates
/// f on the centers and carries the Holder-constant certificate
///     Lip_{d^alpha}(h) <= (1+1/n) * max{1, Lip_{d^alpha}(f)}.
class ConeApproximant {
public:
    ConeApproximant(SpacePtr space, std::vector<std::size_t> centers,
                    std::vector<double> shifted_center_values,
                    std::vector<double> raw_center_values, ConeParams params);

    const SpacePtr& space() const { return space_; }
    const std::vector<std::size_t>& centers() const { return centers_; }
    /// Shifted values g = f + shift restricted to the centers.
    const std::vector<double>& center_values() const { return shifted_; }
    const ConeParams& params() const { return params_; }

    /// Value at a point of the space, by index. At a center this is the
    /// interpolated value itself: the max provably collapses to the
    /// center's own cone there, so the stored value is returned and the
    /// interpolation identity holds without rounding residue.
    double evaluate_at(std::size_t point_index) const;

    /// Value at an arbitrary query point given its base-metric distances to
    /// the centers (one per center, in order). A zero distance is read as
    /// "the query is that center".
    double evaluate_with_distances(std::span<const double> distances) const;

    /// All values over the space; values[base] == 0 whenever the base point
    /// is a center.
    std::vector<double> sample_all() const;

private:
    SpacePtr space_;
    std::vector<std::size_t> centers_;
    std::vector<double> shifted_;  // g = f + shift on the centers
    std::vector<double> raw_;      // original f on the centers
    ConeParams params_;
};

/// Builds the interpolant for f on the given centers. Duplicate center
/// indices are dropped. Preconditions as in cone_params.
ConeApproximant cone_interpolant(const SpacePtr& space, const SampledFunction& f,
                                 std::span<const std::size_t> centers,
                                 double alpha, int n);

/// The curve t -> (t/D)^(t * e * ln(1+1/n) / D) on t > 0 whose minimum
/// governs the cone exponent margin.
double power_map_value(double diam, int n, double t);

struct PowerMapMinimum {
    double argmin;  // D / e
    double value;   // 1 / (1 + 1/n)
};

/// Closed-form minimum of power_map_value: attained at t = D/e with value
/// 1/(1+1/n). Throws for D <= 0 or n < 1.
PowerMapMinimum power_map_minimum(double diam, int n);

/// One stage of the approximating sequence.
struct LittleHolderStep {
    int n = 0;
    NetCover net;                  // cover of the snowflaked space, radius 1/n
    std::vector<double> h_values;  // interpolant sampled over the space
    SampledFunction normalized;    // f_n = h_n / r_n, inside the unit ball
    TraceRow row;
};

struct LittleHolderResult {
    std::vector<LittleHolderStep> steps;
    ConvergenceTrace trace;
    double lip_alpha_f = 0.0;  // Holder constant of the input
};

/// Runs the full pipeline for n = 1..max_index: greedy 1/n-net of the
/// snowflaked space (base point included), cone interpolant on the net,
/// normalization by r_n = max{1, Lip_{d^alpha}(h_n)}. Every row records the
/// certified error bound max{1, Lip_{d^alpha}(f)} * (2 + 1/n) / n and its
/// verdict. The space argument carries the base metric d.
LittleHolderResult little_holder_sequence(const SpacePtr& space,
                                          const SampledFunction& f, double alpha,
                                          int max_index);

/// Tolerance for algebraic identities (interpolation, shift invariance).
inline constexpr double kExactTolerance = 1e-12;
/// Tolerance for inequality certificates involving powers and logs.
inline constexpr double kCertificateTolerance = 1e-9;

}  // namespace lipkit
