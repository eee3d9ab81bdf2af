#pragma once

#include <limits>
#include <string>
#include <vector>

namespace lipkit {

/// One row of a convergence experiment. The cone construction fills every
/// field; the polynomial and trigonometric checks leave radius at 0, r at 1
/// and bound at NaN (no pointwise error bound is claimed for them).
struct TraceRow {
    int index = 0;        // net parameter n, polynomial degree, or mean order
    int size = 0;         // net size, or degree/order again for the others
    double radius = 0.0;  // covering radius in the snowflaked metric
    double lip_alpha = 0.0;  // Holder constant of the approximant
    double lip_base = 0.0;   // base-metric Lipschitz constant (flatness witness)
    double gamma = 0.0;      // cone exponent (cone rows only)
    double rho = 0.0;        // cone slope (cone rows only)
    double r = 1.0;          // normalization max{1, lip_alpha}, cone rows only
    double sup_error = 0.0;  // sup |f - approximant| over the sample points
    double bound = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;        // per-row verdict
};

struct ConvergenceTrace {
    std::string construction;  // "cone", "bernstein" or "fejer"
    std::vector<TraceRow> rows;
};

}  // namespace lipkit
