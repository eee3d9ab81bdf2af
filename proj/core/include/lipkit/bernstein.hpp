#pragma once

#include <functional>
#include <vector>

#include "lipkit/convergence_trace.hpp"

namespace lipkit {

/// Degree-n Bernstein polynomial of a function on [0,1], held as the sample
/// coefficients f(k/n). Evaluation runs the convex-combination recurrence,
/// which stays stable where the closed binomial sum overflows (n around 60
/// and beyond); endpoint values reproduce f(0) and f(1) exactly.
class BernsteinPolynomial {
public:
    static BernsteinPolynomial from_function(
        const std::function<double(double)>& f, int degree);

    /// Wraps raw sample coefficients (size degree+1).
    static BernsteinPolynomial from_coefficients(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    /// Throws std::domain_error for x outside [0,1].
    double operator()(double x) const;

private:
    explicit BernsteinPolynomial(std::vector<double> coeffs)
        : coeffs_(std::move(coeffs)) {}

    std::vector<double> coeffs_;
};

/// Samples f and its Bernstein polynomials on a uniform grid over [0,1] and
/// records, per degree, the grid Holder constant in |x-y|^alpha (expected to
/// stay within the constant of f), the plain grid Lipschitz constant, and
/// the sup grid error. Throws when the grid has fewer than 8 points, alpha
/// is outside (0,1), or the grid Holder constant of f exceeds 1.
ConvergenceTrace bernstein_convergence_check(
    const std::function<double(double)>& f, double alpha, int grid_size,
    const std::vector<int>& degrees);

}  // namespace lipkit
