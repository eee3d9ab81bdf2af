#include "lipkit/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lipkit/cone_approx.hpp"
#include "lipkit/detail/format.hpp"
#include "lipkit/detail/pair_scan.hpp"

namespace lipkit {

BernsteinPolynomial BernsteinPolynomial::from_function(
    const std::function<double(double)>& f, int degree) {
    if (degree < 1)
        throw std::invalid_argument(detail::format(
            "polynomial degree must be >= 1, got %d", degree));
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k)
        coeffs[static_cast<std::size_t>(k)] =
            f(static_cast<double>(k) / degree);
    return BernsteinPolynomial(std::move(coeffs));
}

BernsteinPolynomial BernsteinPolynomial::from_coefficients(
    std::vector<double> coeffs) {
    if (coeffs.size() < 2)
        throw std::invalid_argument("need at least two coefficients");
    return BernsteinPolynomial(std::move(coeffs));
}

double BernsteinPolynomial::operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(detail::format(
            "evaluation point %.17g outside [0,1]", x));
    std::vector<double> b = coeffs_;
    const double one_minus = 1.0 - x;
    for (std::size_t level = b.size() - 1; level > 0; --level)
        for (std::size_t k = 0; k < level; ++k)
            b[k] = one_minus * b[k] + x * b[k + 1];
    return b[0];
}

ConvergenceTrace bernstein_convergence_check(
    const std::function<double(double)>& f, double alpha, int grid_size,
    const std::vector<int>& degrees) {
    if (grid_size < 8)
        throw std::invalid_argument(detail::format(
            "grid of %d points is too coarse, need >= 8", grid_size));
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument(detail::format(
            "Holder exponent must lie in (0,1), got %.17g", alpha));
    if (degrees.empty())
        throw std::invalid_argument("need at least one degree");

    const auto interval = [](double a, double b) { return std::abs(a - b); };

    std::vector<double> xs(static_cast<std::size_t>(grid_size));
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = static_cast<double>(i) / (grid_size - 1);
        fs[i] = f(xs[i]);
    }
    const double lip_alpha_f = detail::grid_quotient_max(xs, fs, alpha, interval);
    if (lip_alpha_f > 1.0 + kCertificateTolerance)
        throw std::invalid_argument(detail::format(
            "function has grid Holder constant %.17g, outside the unit ball",
            lip_alpha_f));

    ConvergenceTrace trace;
    trace.construction = "bernstein";
    std::vector<double> bs(xs.size());
    for (int degree : degrees) {
        const BernsteinPolynomial poly =
            BernsteinPolynomial::from_function(f, degree);
        double sup_err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            bs[i] = poly(xs[i]);
            sup_err = std::max(sup_err, std::abs(bs[i] - fs[i]));
        }
        TraceRow row;
        row.index = degree;
        row.size = degree;
        row.lip_alpha = detail::grid_quotient_max(xs, bs, alpha, interval);
        row.lip_base = detail::grid_quotient_max(xs, bs, 1.0, interval);
        row.sup_error = sup_err;
        row.pass = row.lip_alpha <= lip_alpha_f + kCertificateTolerance;
        trace.rows.push_back(row);
    }
    return trace;
}

}  // namespace lipkit
