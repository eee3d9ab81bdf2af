#pragma once

#include <complex>
#include <span>
#include <vector>

#include "lipkit/convergence_trace.hpp"

namespace lipkit {

/// Angle folded into the fundamental domain [0, 2*pi). Applied at the
/// boundary of every torus operation.
double canonical_angle(double t);

/// Geodesic distance on the circle of circumference 2*pi:
/// min{|t-s|, |t-s-2pi|, |t-s+2pi|}, never above pi.
double torus_distance(double t, double s);

/// Uniform grid t_k = 2*pi*k/N on the torus; node 0 is the base point.
struct TorusGrid {
    int size = 0;

    explicit TorusGrid(int n);

    double node(int k) const;
    std::vector<double> nodes() const;
};

/// Nonnegative summability kernel of order n, evaluated by the closed
/// square form with the removable singularity at t == 0 mod 2*pi filled in
/// with the exact value n+1.
double fejer_kernel(int n, double t);

/// The same kernel as the explicit trigonometric sum
/// 1 + 2 * sum_{j=1..n} (1 - j/(n+1)) cos(jt); kept as a cross-check route.
double fejer_kernel_sum(int n, double t);

/// Discrete Fourier coefficients c(j) = (1/N) sum_k samples[k] e^{-i j t_k}
/// for j = -n..n, returned with index j+n. Real samples yield exactly
/// conjugate-symmetric coefficients. Throws when the grid is too small to
/// resolve the window (N < n+1).
std::vector<std::complex<double>> fourier_coefficients(
    std::span<const double> samples, int n);

/// Order-n smoothing mean: the triangular-weighted trigonometric sum
/// sum_{|j|<=n} (1-|j|/(n+1)) c(j) e^{ijt}. With recentering the value at
/// t = 0 is subtracted so the result vanishes at the base point.
class FejerMean {
public:
    FejerMean(std::vector<std::complex<double>> fourier_coeffs, int order,
              bool recenter);

    int order() const { return order_; }
    bool recentered() const { return recentered_; }
    const std::vector<std::complex<double>>& fourier_coeffs() const {
        return coeffs_;
    }

    /// Evaluates the mean at any angle. Pairs the +j and -j terms in
    /// ascending j, so real input leaves no imaginary residue; a residue
    /// above 1e-10 (complex input reaching a real surface) throws.
    double operator()(double t) const;

    std::vector<double> grid_values(const TorusGrid& grid) const;

private:
    double raw_value(double t) const;

    std::vector<std::complex<double>> coeffs_;
    int order_;
    bool recentered_;
    double center_offset_ = 0.0;  // value at t=0 when recentered
};

/// Builds the mean of the sampled function (samples on the uniform grid).
FejerMean fejer_mean(const TorusGrid& grid, std::span<const double> samples,
                     int order, bool recenter);

/// Per order: grid Holder constant of the mean in the snowflaked torus
/// metric (the contraction certificate), plain grid Lipschitz constant, and
/// sup grid error of the recentered mean against f. Throws when the grid
/// Holder constant of f exceeds 1 or alpha is outside (0,1).
ConvergenceTrace fejer_convergence_check(const TorusGrid& grid,
                                         std::span<const double> samples,
                                         double alpha,
                                         const std::vector<int>& orders);

}  // namespace lipkit
