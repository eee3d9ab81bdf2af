#include "lipkit/fejer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lipkit/cone_approx.hpp"
#include "lipkit/detail/format.hpp"
#include "lipkit/detail/pair_scan.hpp"

namespace lipkit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kImagResidueLimit = 1e-10;
}  // namespace

double canonical_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double torus_distance(double t, double s) {
    const double delta = std::abs(canonical_angle(t) - canonical_angle(s));
    return std::min(delta, kTwoPi - delta);
}

TorusGrid::TorusGrid(int n) : size(n) {
    if (n < 4)
        throw std::invalid_argument(detail::format(
            "torus grid needs at least 4 nodes, got %d", n));
}

double TorusGrid::node(int k) const { return kTwoPi * k / size; }

std::vector<double> TorusGrid::nodes() const {
    std::vector<double> out(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) out[static_cast<std::size_t>(k)] = node(k);
    return out;
}

double fejer_kernel(int n, double t) {
    if (n < 0) throw std::invalid_argument("kernel order must be >= 0");
    const double tc = canonical_angle(t);
    if (tc == 0.0) return static_cast<double>(n) + 1.0;
    const double ratio =
        std::sin((n + 1) * tc / 2.0) / std::sin(tc / 2.0);
    return ratio * ratio / (n + 1);
}

double fejer_kernel_sum(int n, double t) {
    if (n < 0) throw std::invalid_argument("kernel order must be >= 0");
    const double tc = canonical_angle(t);
    double sum = 1.0;
    for (int j = 1; j <= n; ++j)
        sum += 2.0 * (1.0 - static_cast<double>(j) / (n + 1)) * std::cos(j * tc);
    return sum;
}

std::vector<std::complex<double>> fourier_coefficients(
    std::span<const double> samples, int n) {
    if (n < 0) throw std::invalid_argument("coefficient order must be >= 0");
    const int N = static_cast<int>(samples.size());
    // With N > n the coefficient window -n..n contains no nonzero multiple
    // of N, which is exactly what the kernel-mean, contraction and
    // convolution identities on the grid need.
    if (N < n + 1)
        throw std::invalid_argument(detail::format(
            "grid of %d nodes cannot resolve coefficients up to order %d "
            "(need at least %d)",
            N, n, n + 1));

    std::vector<std::complex<double>> coeffs(2 * static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        std::complex<double> plus{0.0, 0.0};   // c(j)
        std::complex<double> minus{0.0, 0.0};  // c(-j)
        for (int k = 0; k < N; ++k) {
            const double ang = j * (kTwoPi * k / N);
            const double c = std::cos(ang);
            const double s = std::sin(ang);
            const double v = samples[static_cast<std::size_t>(k)];
            plus += std::complex<double>(v * c, -(v * s));
            minus += std::complex<double>(v * c, v * s);
        }
        coeffs[static_cast<std::size_t>(n + j)] = plus / static_cast<double>(N);
        coeffs[static_cast<std::size_t>(n - j)] = minus / static_cast<double>(N);
    }
    return coeffs;
}

FejerMean::FejerMean(std::vector<std::complex<double>> fourier_coeffs, int order,
                     bool recenter)
    : coeffs_(std::move(fourier_coeffs)), order_(order), recentered_(false) {
    if (order_ < 0) throw std::invalid_argument("mean order must be >= 0");
    if (coeffs_.size() != 2 * static_cast<std::size_t>(order_) + 1)
        throw std::invalid_argument(detail::format(
            "expected %zu coefficients for order %d, got %zu",
            2 * static_cast<std::size_t>(order_) + 1, order_, coeffs_.size()));
    if (recenter) {
        center_offset_ = raw_value(0.0);
        recentered_ = true;
    }
}

double FejerMean::raw_value(double t) const {
    const double tc = canonical_angle(t);
    const auto coeff = [&](int j) { return coeffs_[static_cast<std::size_t>(order_ + j)]; };
    std::complex<double> sum = coeff(0);
    for (int j = 1; j <= order_; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (order_ + 1);
        const double ang = j * tc;
        const std::complex<double> e{std::cos(ang), std::sin(ang)};
        sum += w * (coeff(j) * e + coeff(-j) * std::conj(e));
    }
    if (std::abs(sum.imag()) >= kImagResidueLimit)
        throw std::runtime_error(detail::format(
            "imaginary residue %.17g in a real evaluation", sum.imag()));
    return sum.real();
}

double FejerMean::operator()(double t) const {
    const double raw = raw_value(t);
    return recentered_ ? raw - center_offset_ : raw;
}

std::vector<double> FejerMean::grid_values(const TorusGrid& grid) const {
    std::vector<double> out(static_cast<std::size_t>(grid.size));
    for (int k = 0; k < grid.size; ++k)
        out[static_cast<std::size_t>(k)] = (*this)(grid.node(k));
    return out;
}

FejerMean fejer_mean(const TorusGrid& grid, std::span<const double> samples,
                     int order, bool recenter) {
    if (static_cast<int>(samples.size()) != grid.size)
        throw std::invalid_argument(detail::format(
            "expected %d samples on the grid, got %zu", grid.size,
            samples.size()));
    return FejerMean(fourier_coefficients(samples, order), order, recenter);
}

ConvergenceTrace fejer_convergence_check(const TorusGrid& grid,
                                         std::span<const double> samples,
                                         double alpha,
                                         const std::vector<int>& orders) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument(detail::format(
            "Holder exponent must lie in (0,1), got %.17g", alpha));
    if (orders.empty()) throw std::invalid_argument("need at least one order");

    const std::vector<double> xs = grid.nodes();
    const double lip_alpha_f =
        detail::grid_quotient_max(xs, samples, alpha, torus_distance);
    if (lip_alpha_f > 1.0 + kCertificateTolerance)
        throw std::invalid_argument(detail::format(
            "function has grid Holder constant %.17g, outside the unit ball",
            lip_alpha_f));

    ConvergenceTrace trace;
    trace.construction = "fejer";
    for (int order : orders) {
        const FejerMean sigma = fejer_mean(grid, samples, order, false);
        const FejerMean beta = fejer_mean(grid, samples, order, true);
        const std::vector<double> sigma_values = sigma.grid_values(grid);
        const std::vector<double> beta_values = beta.grid_values(grid);

        double sup_err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            sup_err = std::max(sup_err,
                               std::abs(beta_values[i] -
                                        samples[static_cast<std::size_t>(i)]));

        TraceRow row;
        row.index = order;
        row.size = order;
        row.lip_alpha =
            detail::grid_quotient_max(xs, sigma_values, alpha, torus_distance);
        row.lip_base =
            detail::grid_quotient_max(xs, sigma_values, 1.0, torus_distance);
        row.sup_error = sup_err;
        row.pass = row.lip_alpha <= lip_alpha_f + kCertificateTolerance;
        trace.rows.push_back(row);
    }
    return trace;
}

}  // namespace lipkit
