#include "lipkit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "lipkit/bernstein.hpp"
#include "lipkit/cone_approx.hpp"
#include "lipkit/detail/format.hpp"
#include "lipkit/detail/pair_scan.hpp"
#include "lipkit/fejer.hpp"
#include "lipkit/io.hpp"
#include "lipkit/version.hpp"

namespace lipkit {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- rng

struct Rng {
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t m) { return static_cast<std::size_t>(eng() % m); }

    std::mt19937_64 eng;  // engine is fully specified; distributions are not,
                          // so the mappings above keep runs reproducible
};

// ----------------------------------------------------------- generators

std::vector<std::string> point_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    return labels;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

long parse_positive_int(const std::string& s, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || v <= 0)
        throw std::invalid_argument(detail::format(
            "%s must be a positive integer, got \"%s\"", what, s.c_str()));
    return v;
}

LoadedSpace generate_space_impl(const std::string& spec,
                                std::optional<std::uint64_t> seed) {
    const auto parts = split(spec, ':');
    const std::string& kind = parts[0];

    if (kind == "interval") {
        if (parts.size() != 2)
            throw std::invalid_argument("interval generator is interval:N");
        const std::size_t n =
            static_cast<std::size_t>(parse_positive_int(parts[1], "point count"));
        if (n > kMaxExactScanPoints)
            throw std::invalid_argument(detail::format(
                "%zu points exceed the exact-scan bound of %zu", n,
                kMaxExactScanPoints));
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                dist[i][j] = std::abs(xs[i] - xs[j]);
        return LoadedSpace{PointedMetricSpace::create(point_labels(n), dist, 0),
                           "interval", std::move(xs)};
    }

    if (kind == "euclidean") {
        if (parts.size() != 3)
            throw std::invalid_argument("euclidean generator is euclidean:k:N");
        if (!seed)
            throw std::invalid_argument(
                "seed: required for random generator \"" + spec + "\"");
        const std::size_t dim =
            static_cast<std::size_t>(parse_positive_int(parts[1], "dimension"));
        const std::size_t n =
            static_cast<std::size_t>(parse_positive_int(parts[2], "point count"));
        if (dim > 64) throw std::invalid_argument("dimension capped at 64");
        if (n > kMaxExactScanPoints)
            throw std::invalid_argument(detail::format(
                "%zu points exceed the exact-scan bound of %zu", n,
                kMaxExactScanPoints));
        Rng rng(*seed);
        for (int attempt = 0; attempt < 16; ++attempt) {
            std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
            for (auto& p : pts)
                for (double& x : p) x = rng.uniform();
            std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    double sq = 0.0;
                    for (std::size_t d = 0; d < dim; ++d) {
                        const double delta = pts[i][d] - pts[j][d];
                        sq += delta * delta;
                    }
                    dist[i][j] = dist[j][i] = std::sqrt(sq);
                }
            try {
                auto space = PointedMetricSpace::create(point_labels(n), dist, 0);
                std::optional<std::vector<double>> coords;
                if (dim == 1) {
                    coords.emplace(n);
                    for (std::size_t i = 0; i < n; ++i) (*coords)[i] = pts[i][0];
                }
                return LoadedSpace{std::move(space), "euclidean",
                                   std::move(coords)};
            } catch (const std::invalid_argument&) {
                // coincident points; draw again
            }
        }
        throw std::runtime_error("euclidean generator failed 16 validation retries");
    }

    if (kind == "ultrametric") {
        if (parts.size() != 2)
            throw std::invalid_argument("ultrametric generator is ultrametric:N");
        if (!seed)
            throw std::invalid_argument(
                "seed: required for random generator \"" + spec + "\"");
        const std::size_t n =
            static_cast<std::size_t>(parse_positive_int(parts[1], "point count"));
        if (n > kMaxExactScanPoints)
            throw std::invalid_argument(detail::format(
                "%zu points exceed the exact-scan bound of %zu", n,
                kMaxExactScanPoints));
        Rng rng(*seed);
        std::vector<std::vector<std::size_t>> clusters(n);
        for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
        std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
        double height = 0.0;
        while (clusters.size() > 1) {
            std::size_t a = rng.index(clusters.size());
            std::size_t b = rng.index(clusters.size() - 1);
            if (b >= a) ++b;
            if (a > b) std::swap(a, b);
            height += 0.1 + rng.uniform();  // strictly increasing merge heights
            for (std::size_t i : clusters[a])
                for (std::size_t j : clusters[b]) dist[i][j] = dist[j][i] = height;
            clusters[a].insert(clusters[a].end(), clusters[b].begin(),
                               clusters[b].end());
            clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
        }
        return LoadedSpace{PointedMetricSpace::create(point_labels(n), dist, 0),
                           "matrix", std::nullopt};
    }

    throw std::invalid_argument(
        "unknown generator \"" + spec +
        "\" (euclidean:k:N, ultrametric:N or interval:N)");
}

// ------------------------------------------------------------- catalogs

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

double parse_param(const std::string& name) {
    const auto pos = name.find(':');
    const std::string tail = name.substr(pos + 1);
    char* end = nullptr;
    const double v = std::strtod(tail.c_str(), &end);
    if (tail.empty() || end != tail.c_str() + tail.size())
        throw std::invalid_argument("cannot parse parameter in \"" + name + "\"");
    return v;
}

bool is_interval_catalog(const std::string& name) {
    return name == "zero" || name == "identity" || starts_with(name, "power:") ||
           starts_with(name, "hat:");
}

bool is_torus_catalog(const std::string& name) {
    return name == "sin" || starts_with(name, "dist-to-zero:") ||
           starts_with(name, "sawtooth-holder:");
}

}  // namespace

const char* construction_name(Construction c) {
    switch (c) {
        case Construction::cone: return "cone";
        case Construction::bernstein: return "bernstein";
        case Construction::fejer: return "fejer";
    }
    return "?";
}

SpacePtr generate_space(const std::string& spec,
                        std::optional<std::uint64_t> seed) {
    return generate_space_impl(spec, seed).space;
}

LoadedSpace resolve_space_source(const std::string& source,
                                 std::optional<std::uint64_t> seed) {
    LoadedSpace out = starts_with(source, "gen:")
                          ? generate_space_impl(source.substr(4), seed)
                          : load_space_json(source);
    if (out.space->size() > kMaxExactScanPoints)
        throw std::invalid_argument(detail::format(
            "space has %zu points; exact pair scans are capped at %zu",
            out.space->size(), kMaxExactScanPoints));
    return out;
}

std::vector<double> random_unit_ball_values(const SpacePtr& space, double alpha,
                                            std::uint64_t seed) {
    const SpacePtr snow = space->snowflake(alpha);
    Rng rng(seed);
    std::vector<double> values(space->size());
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    values[space->base_index()] = 0.0;
    for (int pass = 0; pass < 8; ++pass) {
        const double c =
            lipschitz_constant(SampledFunction::create(snow, values));
        if (c <= 1.0) break;
        for (double& v : values) v /= c;
        values[space->base_index()] = 0.0;
    }
    return values;
}

std::function<double(double)> interval_catalog(const std::string& name) {
    if (name == "zero") return [](double) { return 0.0; };
    if (name == "identity") return [](double x) { return x; };
    if (starts_with(name, "power:")) {
        const double p = parse_param(name);
        if (!(p > 0.0))
            throw std::invalid_argument("power exponent must be positive");
        return [p](double x) { return std::pow(x, p); };
    }
    if (starts_with(name, "hat:")) {
        const double c = parse_param(name);
        if (!(c > 0.0 && c < 1.0))
            throw std::invalid_argument("hat peak must lie in (0,1)");
        return [c](double x) {
            return std::max(0.0, std::min(x / c, (1.0 - x) / (1.0 - c)));
        };
    }
    throw std::invalid_argument(
        "unknown interval catalog entry \"" + name +
        "\" (zero, identity, power:p, hat:c)");
}

std::function<double(double)> torus_catalog(const std::string& name) {
    if (name == "sin") return [](double t) { return std::sin(canonical_angle(t)); };
    if (starts_with(name, "dist-to-zero:")) {
        const double a = parse_param(name);
        if (!(a > 0.0 && a <= 1.0))
            throw std::invalid_argument("dist-to-zero exponent must lie in (0,1]");
        return [a](double t) { return std::pow(torus_distance(t, 0.0), a); };
    }
    if (starts_with(name, "sawtooth-holder:")) {
        const double a = parse_param(name);
        if (!(a > 0.0 && a <= 1.0))
            throw std::invalid_argument(
                "sawtooth-holder exponent must lie in (0,1]");
        return [a](double t) {
            const double d = std::min(torus_distance(t, 0.0),
                                      torus_distance(t, std::numbers::pi));
            return std::pow(d, a);
        };
    }
    throw std::invalid_argument(
        "unknown torus catalog entry \"" + name +
        "\" (sin, dist-to-zero:a, sawtooth-holder:a)");
}

std::string default_output_dir() {
    const char* dir = std::getenv("LIPKIT_OUT_DIR");
    return dir && *dir ? dir : ".";
}

void validate_config(const ExperimentConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw std::invalid_argument(detail::format(
            "alpha: must lie in (0,1), got %.17g", config.alpha));
    if (config.indices.empty())
        throw std::invalid_argument(
            "indices: need at least one value (--n/--degrees/--orders)");
    for (std::size_t i = 0; i < config.indices.size(); ++i) {
        if (config.indices[i] <= 0)
            throw std::invalid_argument("indices: values must be positive");
        if (i > 0 && config.indices[i] <= config.indices[i - 1])
            throw std::invalid_argument("indices: values must be strictly ascending");
    }
    if (config.function.empty())
        throw std::invalid_argument("function: required (--fn)");

    if (config.construction == Construction::cone) {
        if (config.space.empty())
            throw std::invalid_argument(
                "space: required for the cone construction (--space)");
        if (starts_with(config.space, "gen:")) {
            const std::string spec = config.space.substr(4);
            if ((starts_with(spec, "euclidean") || starts_with(spec, "ultrametric")) &&
                !config.seed)
                throw std::invalid_argument(
                    "seed: required for random generator \"" + spec + "\"");
        }
        if (config.function == "random-ball" && !config.seed)
            throw std::invalid_argument(
                "seed: required for the random-ball function source");
    } else if (config.construction == Construction::bernstein) {
        const int grid = config.grid > 0 ? config.grid : 256;
        if (grid < 8)
            throw std::invalid_argument(detail::format(
                "grid: %d points is too coarse, need >= 8", grid));
    } else {
        const int grid = config.grid > 0 ? config.grid : 512;
        const int max_order = config.indices.back();
        if (grid < max_order + 1)
            throw std::invalid_argument(detail::format(
                "grid: %d nodes cannot resolve order %d (need >= %d)", grid,
                max_order, max_order + 1));
    }
}

bool ReportBundle::overall_pass() const {
    for (const Verdict& v : verdicts)
        if (!v.pass) return false;
    for (const TraceRow& row : trace.rows)
        if (!row.pass) return false;
    return true;
}

namespace {

// ------------------------------------------------------------ cone run

SampledFunction resolve_cone_function(const ExperimentConfig& config,
                                      const LoadedSpace& gen) {
    if (config.function == "random-ball")
        return SampledFunction::create(
            gen.space,
            random_unit_ball_values(gen.space, config.alpha, *config.seed));
    if (is_interval_catalog(config.function)) {
        if (!gen.coords_1d)
            throw std::invalid_argument(
                "function: catalog entries need a 1-d space with coordinates; "
                "provide a CSV instead");
        const auto f = interval_catalog(config.function);
        std::vector<double> values(gen.space->size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = f((*gen.coords_1d)[i]);
        return SampledFunction::create(gen.space, std::move(values));
    }
    return load_function_csv(config.function, gen.space);
}

void run_cone(const ExperimentConfig& config, ReportBundle& bundle) {
    const LoadedSpace gen = resolve_space_source(config.space, config.seed);
    const SampledFunction f = resolve_cone_function(config, gen);

    const int max_index = config.indices.back();
    LittleHolderResult result =
        little_holder_sequence(gen.space, f, config.alpha, max_index);
    const double scale = std::max(1.0, result.lip_alpha_f);
    if (result.lip_alpha_f > 1.0 + kExactTolerance)
        bundle.warnings.push_back(detail::format(
            "function lies outside the Holder unit ball "
            "(Lip_alpha = %.17g); certificates are scaled by that constant",
            result.lip_alpha_f));

    const SpacePtr snow = gen.space->snowflake(config.alpha);
    const std::set<int> wanted(config.indices.begin(), config.indices.end());

    bundle.trace.construction = "cone";
    for (const LittleHolderStep& step : result.steps) {
        if (!wanted.count(step.n)) continue;
        bundle.trace.rows.push_back(step.row);

        double interp_err = 0.0;
        for (std::size_t c : step.net.centers)
            interp_err = std::max(interp_err,
                                  std::abs(step.h_values[c] - f.value(c)));
        bundle.verdicts.push_back({"cone_approx/interpolation_exactness", step.n,
                                   interp_err <= kExactTolerance, interp_err,
                                   kExactTolerance});

        const double const_limit =
            (1.0 + 1.0 / step.n) * scale + kCertificateTolerance;
        bundle.verdicts.push_back({"cone_approx/certified_constant", step.n,
                                   step.row.lip_alpha <= const_limit,
                                   step.row.lip_alpha, const_limit});

        const double err_limit = step.row.bound + kCertificateTolerance;
        bundle.verdicts.push_back({"cone_approx/error_bound", step.n,
                                   step.row.sup_error <= err_limit,
                                   step.row.sup_error, err_limit});

        const SpacePtr gamma_space = gen.space->snowflake(step.row.gamma);
        const double lip_gamma = lipschitz_constant(
            SampledFunction::create(gamma_space, step.h_values));
        bundle.verdicts.push_back(
            {"cone_approx/flatness_certificate", step.n,
             lip_gamma <= step.row.rho + kCertificateTolerance, lip_gamma,
             step.row.rho + kCertificateTolerance});

        const double lip_fn = lipschitz_constant(
            SampledFunction::create(snow, step.normalized.values()));
        bundle.verdicts.push_back({"cone_approx/normalized_ball", step.n,
                                   lip_fn <= 1.0, lip_fn, 1.0});
    }
}

// ------------------------------------------------------- bernstein run

std::function<double(double)> resolve_interval_function(
    const ExperimentConfig& config) {
    if (is_interval_catalog(config.function))
        return interval_catalog(config.function);
    // CSV samples on a uniform grid over [0,1]; evaluate by the piecewise
    // linear extension
    auto rows = load_xy_csv(config.function);
    const std::size_t m = rows.size();
    if (m < 2) throw std::invalid_argument("function CSV needs >= 2 samples");
    for (std::size_t i = 0; i < m; ++i) {
        const double expected = static_cast<double>(i) / (m - 1);
        if (std::abs(rows[i].first - expected) > 1e-9)
            throw std::invalid_argument(detail::format(
                "function CSV must sample a uniform grid on [0,1]; row %zu has "
                "x=%.17g, expected %.17g",
                i, rows[i].first, expected));
    }
    if (rows[0].second != 0.0)
        throw std::invalid_argument("function CSV must have value 0 at x=0");
    std::vector<double> ys(m);
    for (std::size_t i = 0; i < m; ++i) ys[i] = rows[i].second;
    return [ys, m](double x) {
        const double pos = x * static_cast<double>(m - 1);
        const std::size_t lo =
            std::min(static_cast<std::size_t>(pos), m - 2);
        const double frac = pos - static_cast<double>(lo);
        return (1.0 - frac) * ys[lo] + frac * ys[lo + 1];
    };
}

void run_bernstein(const ExperimentConfig& config, ReportBundle& bundle) {
    const auto f = resolve_interval_function(config);
    const int grid = config.grid > 0 ? config.grid : 256;
    bundle.trace =
        bernstein_convergence_check(f, config.alpha, grid, config.indices);

    const auto interval = [](double a, double b) { return std::abs(a - b); };
    std::vector<double> xs(static_cast<std::size_t>(grid));
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = static_cast<double>(i) / (grid - 1);
        fs[i] = f(xs[i]);
    }
    const double lip_alpha_f =
        detail::grid_quotient_max(xs, fs, config.alpha, interval);

    for (const TraceRow& row : bundle.trace.rows) {
        bundle.verdicts.push_back(
            {"bernstein/holder_ball_preservation", row.index,
             row.lip_alpha <= lip_alpha_f + kCertificateTolerance, row.lip_alpha,
             lip_alpha_f + kCertificateTolerance});

        const BernsteinPolynomial poly =
            BernsteinPolynomial::from_function(f, row.index);
        const double endpoint_err =
            std::max(std::abs(poly(0.0) - fs.front()),
                     std::abs(poly(1.0) - fs.back()));
        bundle.verdicts.push_back({"bernstein/endpoint_interpolation", row.index,
                                   endpoint_err <= kExactTolerance, endpoint_err,
                                   kExactTolerance});
    }

    double worst_increase = 0.0;
    for (std::size_t i = 1; i < bundle.trace.rows.size(); ++i)
        worst_increase = std::max(worst_increase,
                                  bundle.trace.rows[i].sup_error -
                                      bundle.trace.rows[i - 1].sup_error);
    bundle.verdicts.push_back({"bernstein/error_decrease", -1,
                               worst_increase <= 0.0, worst_increase, 0.0});
}

// ----------------------------------------------------------- fejer run

std::vector<double> resolve_torus_samples(const ExperimentConfig& config,
                                          const TorusGrid& grid) {
    if (is_torus_catalog(config.function)) {
        const auto f = torus_catalog(config.function);
        std::vector<double> samples(static_cast<std::size_t>(grid.size));
        for (int k = 0; k < grid.size; ++k)
            samples[static_cast<std::size_t>(k)] = f(grid.node(k));
        return samples;
    }
    auto rows = load_xy_csv(config.function);
    if (static_cast<int>(rows.size()) != grid.size)
        throw std::invalid_argument(detail::format(
            "function CSV has %zu rows for a %d-node torus grid", rows.size(),
            grid.size));
    std::vector<double> samples(rows.size());
    for (int k = 0; k < grid.size; ++k) {
        if (torus_distance(rows[static_cast<std::size_t>(k)].first,
                           grid.node(k)) > 1e-9)
            throw std::invalid_argument(detail::format(
                "function CSV row %d has angle %.17g, expected node %.17g", k,
                rows[static_cast<std::size_t>(k)].first, grid.node(k)));
        samples[static_cast<std::size_t>(k)] =
            rows[static_cast<std::size_t>(k)].second;
    }
    if (samples[0] != 0.0)
        throw std::invalid_argument("function CSV must have value 0 at angle 0");
    return samples;
}

void run_fejer(const ExperimentConfig& config, ReportBundle& bundle) {
    const int grid_size = config.grid > 0 ? config.grid : 512;
    const TorusGrid grid(grid_size);
    const std::vector<double> samples = resolve_torus_samples(config, grid);

    bundle.trace =
        fejer_convergence_check(grid, samples, config.alpha, config.indices);

    const std::vector<double> xs = grid.nodes();
    const double lip_alpha_f =
        detail::grid_quotient_max(xs, samples, config.alpha, torus_distance);

    for (const TraceRow& row : bundle.trace.rows) {
        const int order = row.index;

        bundle.verdicts.push_back(
            {"fejer/contraction", order,
             row.lip_alpha <= lip_alpha_f + kCertificateTolerance, row.lip_alpha,
             lip_alpha_f + kCertificateTolerance});

        double kernel_min = fejer_kernel(order, xs[0]);
        double kernel_mean = 0.0;
        for (double t : xs) {
            const double k = fejer_kernel(order, t);
            kernel_min = std::min(kernel_min, k);
            kernel_mean += k;
        }
        kernel_mean /= grid_size;
        bundle.verdicts.push_back({"fejer/kernel_nonnegative", order,
                                   kernel_min >= 0.0, kernel_min, 0.0});
        bundle.verdicts.push_back({"fejer/kernel_mean", order,
                                   std::abs(kernel_mean - 1.0) <= 1e-10,
                                   std::abs(kernel_mean - 1.0), 1e-10});

        const FejerMean beta = fejer_mean(grid, samples, order, true);
        const double beta_zero = beta(0.0);
        bundle.verdicts.push_back({"fejer/recentering", order, beta_zero == 0.0,
                                   std::abs(beta_zero), 0.0});

        // coefficient route against the circular-convolution route
        const FejerMean sigma = fejer_mean(grid, samples, order, false);
        const std::vector<double> sigma_values = sigma.grid_values(grid);
        double duality_err = 0.0;
        for (int m = 0; m < grid.size; ++m) {
            double conv = 0.0;
            for (int k = 0; k < grid.size; ++k) {
                const int shifted = ((m - k) % grid.size + grid.size) % grid.size;
                conv += fejer_kernel(order, xs[static_cast<std::size_t>(k)]) *
                        samples[static_cast<std::size_t>(shifted)];
            }
            conv /= grid.size;
            duality_err = std::max(
                duality_err,
                std::abs(conv - sigma_values[static_cast<std::size_t>(m)]));
        }
        bundle.verdicts.push_back({"fejer/convolution_duality", order,
                                   duality_err <= 1e-8, duality_err, 1e-8});
    }
}

}  // namespace

ReportBundle run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();

    ReportBundle bundle;
    bundle.config = config;
    bundle.tool_version = kVersion;

    switch (config.construction) {
        case Construction::cone: run_cone(config, bundle); break;
        case Construction::bernstein: run_bernstein(config, bundle); break;
        case Construction::fejer: run_fejer(config, bundle); break;
    }

    bundle.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();

    if (!config.out_csv.empty()) write_trace_csv(bundle.trace, config.out_csv);
    if (!config.out_json.empty()) write_report_json(bundle, config.out_json);
    if (!config.out_plot.empty()) emit_plot(bundle.trace, config.out_plot);
    return bundle;
}

void write_report_json(const ReportBundle& bundle, const std::string& path) {
    json j;
    j["tool"] = "lipkit";
    j["version"] = bundle.tool_version;
    j["construction"] = construction_name(bundle.config.construction);
    json config;
    config["space"] = bundle.config.space;
    config["function"] = bundle.config.function;
    config["alpha"] = bundle.config.alpha;
    config["indices"] = bundle.config.indices;
    config["grid"] = bundle.config.grid;
    if (bundle.config.seed)
        config["seed"] = *bundle.config.seed;
    else
        config["seed"] = nullptr;
    j["config"] = std::move(config);
    j["wall_ms"] = bundle.wall_ms;

    json rows = json::array();
    for (const TraceRow& row : bundle.trace.rows) {
        json r;
        r["n"] = row.index;
        r["size"] = row.size;
        r["radius"] = row.radius;
        r["lip_alpha"] = row.lip_alpha;
        r["lip_base"] = row.lip_base;
        r["gamma"] = row.gamma;
        r["rho"] = row.rho;
        r["r"] = row.r;
        r["sup_error"] = row.sup_error;
        r["bound"] = row.bound;  // NaN serializes as null
        r["verdict"] = row.pass ? "pass" : "fail";
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);

    json verdicts = json::array();
    for (const Verdict& v : bundle.verdicts) {
        json item;
        item["invariant"] = v.invariant;
        item["index"] = v.index;
        item["pass"] = v.pass;
        item["measured"] = v.measured;
        item["limit"] = v.limit;
        verdicts.push_back(std::move(item));
    }
    j["verdicts"] = std::move(verdicts);
    j["warnings"] = bundle.warnings;
    j["overall_pass"] = bundle.overall_pass();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void emit_plot(const ConvergenceTrace& trace, const std::string& path) {
    if (trace.rows.empty())
        throw std::invalid_argument("cannot plot an empty trace");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);

    constexpr double kWidth = 720, kHeight = 440;
    constexpr double kLeft = 70, kRight = 700, kTop = 24, kBottom = 390;
    constexpr double kFloor = 1e-18;

    const std::size_t count = trace.rows.size();
    auto x_at = [&](std::size_t i) {
        return count == 1 ? (kLeft + kRight) / 2
                          : kLeft + (kRight - kLeft) * static_cast<double>(i) /
                                        static_cast<double>(count - 1);
    };

    bool has_bound = false;
    double lo = std::log10(kFloor), hi = lo;
    bool first = true;
    auto consider = [&](double v) {
        const double y = std::log10(std::max(v, kFloor));
        if (first) {
            lo = hi = y;
            first = false;
        } else {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    };
    for (const TraceRow& row : trace.rows) {
        consider(row.sup_error);
        consider(row.lip_alpha);
        if (std::isfinite(row.bound)) {
            consider(row.bound);
            has_bound = true;
        }
    }
    lo -= 0.5;
    hi += 0.5;
    auto y_at = [&](double v) {
        const double y = std::log10(std::max(v, kFloor));
        return kBottom - (kBottom - kTop) * (y - lo) / (hi - lo);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
        << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";

    const int decade_lo = static_cast<int>(std::ceil(lo));
    const int decade_hi = static_cast<int>(std::floor(hi));
    const int decade_step =
        std::max(1, (decade_hi - decade_lo) / 8 + ((decade_hi - decade_lo) % 8 ? 1 : 0));
    for (int d = decade_lo; d <= decade_hi; d += decade_step) {
        const double y = kBottom - (kBottom - kTop) * (d - lo) / (hi - lo);
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << y << "\" x2=\"" << kLeft
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    const std::size_t label_step = count > 16 ? count / 16 + 1 : 1;
    for (std::size_t i = 0; i < count; i += label_step)
        out << "<text x=\"" << x_at(i) << "\" y=\"" << kBottom + 16
            << "\" font-size=\"11\" text-anchor=\"middle\">"
            << trace.rows[i].index << "</text>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 34
        << "\" font-size=\"12\" text-anchor=\"middle\">index</text>\n";

    auto polyline = [&](const char* id, const char* color, bool dashed,
                        auto&& value_of) {
        out << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
            << "\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "")
            << " stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < count; ++i) {
            if (i) out << ' ';
            out << x_at(i) << ',' << y_at(value_of(trace.rows[i]));
        }
        out << "\"/>\n";
    };
    polyline("sup_error", "#d62728", false,
             [](const TraceRow& r) { return r.sup_error; });
    polyline("lip_alpha", "#1f77b4", false,
             [](const TraceRow& r) { return r.lip_alpha; });
    if (has_bound)
        polyline("paper_bound", "#2ca02c", true,
                 [](const TraceRow& r) { return r.bound; });

    out << "<text x=\"" << kRight - 150 << "\" y=\"" << kTop + 12
        << "\" font-size=\"12\" fill=\"#d62728\">sup error</text>\n"
        << "<text x=\"" << kRight - 150 << "\" y=\"" << kTop + 28
        << "\" font-size=\"12\" fill=\"#1f77b4\">Lip constant</text>\n";
    if (has_bound)
        out << "<text x=\"" << kRight - 150 << "\" y=\"" << kTop + 44
            << "\" font-size=\"12\" fill=\"#2ca02c\">bound</text>\n";
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lipkit
