#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipkit/convergence_trace.hpp"
#include "lipkit/io.hpp"
#include "lipkit/lip_analysis.hpp"
#include "lipkit/metric_space.hpp"

namespace lipkit {

/// Pair scans are exact (every pair visited); spaces beyond this size are
/// refused instead of silently sampled.
inline constexpr std::size_t kMaxExactScanPoints = 4096;

enum class Construction { cone, bernstein, fejer };

const char* construction_name(Construction c);

struct ExperimentConfig {
    Construction construction = Construction::cone;
    std::string space;     // file path or "gen:euclidean:k:N" | "gen:ultrametric:N"
                           // | "gen:interval:N" (cone only)
    std::string function;  // catalog name or CSV path
    double alpha = 0.5;
    std::vector<int> indices;  // n values, degrees, or orders; ascending
    int grid = 0;              // 0 picks the default (bernstein 256, fejer 512)
    std::optional<std::uint64_t> seed;
    std::string out_csv;   // trace destination; empty skips the write
    std::string out_json;  // report destination; empty skips the write
    std::string out_plot;  // SVG destination; empty skips the write
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& config);

/// One named check against a module invariant, with the measured value and
/// the limit it was held to. index is the trace row it refers to, or -1 for
/// a whole-trace check.
struct Verdict {
    std::string invariant;
    int index = -1;
    bool pass = false;
    double measured = 0.0;
    double limit = 0.0;
};

struct ReportBundle {
    ExperimentConfig config;
    std::string tool_version;
    double wall_ms = 0.0;
    ConvergenceTrace trace;
    std::vector<Verdict> verdicts;
    std::vector<std::string> warnings;

    bool overall_pass() const;
};

/// Runs the configured construction, collects per-invariant verdicts, and
/// writes the trace CSV, JSON report and SVG plot for every configured
/// output path. Deterministic: identical config and seed reproduce the CSV
/// byte for byte.
ReportBundle run_experiment(const ExperimentConfig& config);

void write_report_json(const ReportBundle& bundle, const std::string& path);

/// Log-scale line chart of sup error and Holder constant over the index
/// column, with the bound curve when present. Throws on an empty trace or
/// an unwritable path.
void emit_plot(const ConvergenceTrace& trace, const std::string& path);

/// "euclidean:k:N" (N uniform points in [0,1]^k, needs a seed),
/// "ultrametric:N" (random merge heights, needs a seed), or "interval:N"
/// (N evenly spaced points on [0,1], deterministic). The base point is
/// index 0. Generated spaces always pass full metric validation; random
/// draws are retried a bounded number of times if validation fails.
SpacePtr generate_space(const std::string& spec,
                        std::optional<std::uint64_t> seed);

/// "gen:<spec>" routes to the generators, anything else is read as a space
/// JSON file. Spaces beyond kMaxExactScanPoints are refused.
LoadedSpace resolve_space_source(const std::string& source,
                                 std::optional<std::uint64_t> seed);

/// Values uniform in [-1,1] and zero at the base, rescaled to sit inside
/// the unit ball of the alpha-snowflaked metric.
std::vector<double> random_unit_ball_values(const SpacePtr& space, double alpha,
                                            std::uint64_t seed);

/// Named test functions on [0,1]: "zero", "identity", "power:p", "hat:c".
/// All vanish at 0.
std::function<double(double)> interval_catalog(const std::string& name);

/// Named test functions on the torus: "sin", "dist-to-zero:a",
/// "sawtooth-holder:a". All vanish at the base angle 0.
std::function<double(double)> torus_catalog(const std::string& name);

/// Default directory for outputs when a relative or empty path is given:
/// $LIPKIT_OUT_DIR, falling back to the current directory.
std::string default_output_dir();

}  // namespace lipkit
