#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipkit/cone_approx.hpp"
#include "lipkit/convergence_trace.hpp"
#include "lipkit/lip_analysis.hpp"
#include "lipkit/metric_space.hpp"

namespace lipkit {

/// A space read from JSON. When it was given through 1-d coordinates
/// (interval or torus metric) the coordinates are kept so named catalog
/// functions can be evaluated on the points.
struct LoadedSpace {
    SpacePtr space;
    std::string metric;  // "matrix", "euclidean", "interval" or "torus"
    std::optional<std::vector<double>> coords_1d;
};

/// Accepts {"labels":[...], "base":<label>, "dist":[[...]]} or
/// {"labels":[...], "base":<label>, "coords":[[...]], "metric":"euclidean"|
/// "torus"|"interval"}. Torus coordinates are folded into [0, 2*pi).
LoadedSpace load_space_json(const std::string& path);

/// CSV rows of (label, value); an optional "label,value" header is skipped.
/// Every point must receive exactly one value and the base label must carry
/// the value 0.
SampledFunction load_function_csv(const std::string& path, const SpacePtr& space);

/// CSV rows of (x, value) for functions sampled on a uniform 1-d grid.
std::vector<std::pair<double, double>> load_xy_csv(const std::string& path);

/// Fixed trace schema:
/// n,net_size_or_degree,lip_alpha,lip_base,sup_error,paper_bound,verdict
void write_trace_csv(const ConvergenceTrace& trace, const std::string& path);
ConvergenceTrace read_trace_csv(const std::string& path);

/// {alpha, n, gamma, rho, shift, centers (labels), center_values} with
/// center_values the shifted samples, as held by the approximant.
void write_cone_json(const ConeApproximant& approximant, const std::string& path);
ConeApproximant load_cone_json(const std::string& path, const SpacePtr& space);

}  // namespace lipkit
