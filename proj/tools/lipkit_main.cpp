#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lipkit/experiment.hpp"
#include "lipkit/io.hpp"
#include "lipkit/version.hpp"

namespace {

using namespace lipkit;

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    const auto range_pos = text.find("..");
    if (range_pos != std::string::npos) {
        const int lo = std::atoi(text.substr(0, range_pos).c_str());
        const int hi = std::atoi(text.substr(range_pos + 2).c_str());
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string item = text.substr(start, pos - start);
        if (!item.empty()) out.push_back(std::atoi(item.c_str()));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string default_path(const std::string& name) {
    return (std::filesystem::path(default_output_dir()) / name).string();
}

void print_verdicts(const ReportBundle& bundle) {
    for (const Verdict& v : bundle.verdicts) {
        std::printf("%-4s %-36s", v.pass ? "pass" : "FAIL", v.invariant.c_str());
        if (v.index >= 0) std::printf(" [%d]", v.index);
        std::printf("  measured=%.6g limit=%.6g\n", v.measured, v.limit);
    }
    for (const std::string& w : bundle.warnings)
        std::printf("warning: %s\n", w.c_str());
}

int cmd_validate_space(const std::string& source,
                       std::optional<std::uint64_t> seed) {
    const LoadedSpace loaded = resolve_space_source(source, seed);
    std::printf("valid space: %zu points, base \"%s\", diameter %.17g\n",
                loaded.space->size(),
                loaded.space->label(loaded.space->base_index()).c_str(),
                loaded.space->diameter());
    return 0;
}

int cmd_lipconst(const std::string& source, const std::string& fn_path,
                 std::optional<double> alpha, const std::string& thresholds,
                 std::optional<std::uint64_t> seed) {
    const LoadedSpace loaded = resolve_space_source(source, seed);
    const SampledFunction f = load_function_csv(fn_path, loaded.space);
    std::printf("Lip_d(f)      = %.17g\n", lipschitz_constant(f));
    if (alpha) {
        const SampledFunction fa =
            SampledFunction::create(loaded.space->snowflake(*alpha), f.values());
        std::printf("Lip_d^%g(f) = %.17g\n", *alpha, lipschitz_constant(fa));
    }
    if (!thresholds.empty()) {
        std::vector<double> ts;
        for (int v : parse_index_list(thresholds)) ts.push_back(v);
        // threshold flag also accepts plain decimals
        if (ts.empty() || thresholds.find('.') != std::string::npos) {
            ts.clear();
            std::size_t start = 0;
            while (start <= thresholds.size()) {
                const std::size_t pos = thresholds.find(',', start);
                const std::string item = thresholds.substr(start, pos - start);
                if (!item.empty()) ts.push_back(std::strtod(item.c_str(), nullptr));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        }
        const FlatnessProfile profile = flatness_profile(f, ts);
        std::printf("flatness profile:\n");
        for (std::size_t k = 0; k < profile.thresholds.size(); ++k)
            std::printf("  t < %-12.6g sup = %.17g\n", profile.thresholds[k],
                        profile.sups[k]);
    }
    return 0;
}

int cmd_net(const std::string& source, double radius,
            std::optional<double> alpha, std::optional<std::uint64_t> seed) {
    const LoadedSpace loaded = resolve_space_source(source, seed);
    const SpacePtr space =
        alpha ? loaded.space->snowflake(*alpha) : loaded.space;
    const NetCover cover = greedy_net(space, radius);
    std::printf("net of %zu centers at radius %.17g%s:\n", cover.centers.size(),
                radius, alpha ? " (snowflaked metric)" : "");
    for (std::size_t c : cover.centers)
        std::printf("  %s\n", space->label(c).c_str());
    return 0;
}

int cmd_approx(ExperimentConfig config, const std::string& out,
               const std::string& plot) {
    const std::string stem =
        std::string(construction_name(config.construction));
    config.out_csv = out.empty() ? default_path(stem + "_trace.csv") : out;
    const std::filesystem::path csv_path(config.out_csv);
    std::filesystem::path json_path = csv_path;
    json_path.replace_extension(".report.json");
    config.out_json = json_path.string();
    config.out_plot = plot;

    const ReportBundle bundle = run_experiment(config);
    print_verdicts(bundle);
    std::printf("%s: %zu rows -> %s (report %s)\n",
                bundle.overall_pass() ? "PASS" : "FAIL",
                bundle.trace.rows.size(), config.out_csv.c_str(),
                config.out_json.c_str());
    return bundle.overall_pass() ? 0 : 1;
}

int cmd_report(const std::string& trace_path, const std::string& plot) {
    const ConvergenceTrace trace = read_trace_csv(trace_path);
    if (trace.rows.empty()) {
        std::fprintf(stderr, "error: trace %s is empty\n", trace_path.c_str());
        return 2;
    }
    std::printf("%6s %10s %14s %14s %14s %14s %8s\n", "n", "size", "lip_alpha",
                "lip_base", "sup_error", "bound", "verdict");
    bool all_pass = true;
    for (const TraceRow& row : trace.rows) {
        std::printf("%6d %10d %14.6g %14.6g %14.6g %14.6g %8s\n", row.index,
                    row.size, row.lip_alpha, row.lip_base, row.sup_error,
                    row.bound, row.pass ? "pass" : "fail");
        all_pass = all_pass && row.pass;
    }
    if (!plot.empty()) {
        emit_plot(trace, plot);
        std::printf("plot written to %s\n", plot.c_str());
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz constants and little-Holder approximation on "
                 "finite pointed metric spaces"};
    app.set_version_flag("--version", lipkit::kVersion);
    app.require_subcommand(1);

    std::string space_source, fn_source, out_path, plot_path, trace_path;
    std::string index_list, thresholds;
    double alpha = 0.5, radius = 0.0;
    std::optional<double> opt_alpha;
    int grid = 0;
    std::optional<std::uint64_t> seed;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (required for random generators)");
    };

    auto* validate = app.add_subcommand("validate-space",
                                        "Validate a space file or generator spec");
    validate->add_option("--space", space_source, "space JSON file or gen:<spec>")
        ->required();
    add_seed(validate);

    auto* lipconst = app.add_subcommand(
        "lipconst", "Lipschitz and Holder constants of a sampled function");
    lipconst->add_option("--space", space_source, "space JSON file or gen:<spec>")
        ->required();
    lipconst->add_option("--fn", fn_source, "function CSV (label,value)")
        ->required();
    lipconst->add_option("--alpha", opt_alpha, "also report the d^alpha constant");
    lipconst->add_option("--thresholds", thresholds,
                         "comma list: print the flatness profile");
    add_seed(lipconst);

    auto* net = app.add_subcommand("net", "Greedy covering net");
    net->add_option("--space", space_source, "space JSON file or gen:<spec>")
        ->required();
    net->add_option("--radius", radius, "covering radius")->required();
    net->add_option("--alpha", opt_alpha, "cover in the snowflaked metric");
    add_seed(net);

    auto* approx = app.add_subcommand("approx", "Run a density experiment");
    approx->require_subcommand(1);
    ExperimentConfig config;

    auto* cone = approx->add_subcommand("cone", "cone-max interpolants");
    cone->add_option("--space", space_source, "space JSON file or gen:<spec>")
        ->required();
    cone->add_option("--fn", fn_source,
                     "function CSV, catalog name, or random-ball")
        ->required();
    cone->add_option("--alpha", alpha, "Holder exponent in (0,1)")->required();
    cone->add_option("--n", index_list, "net parameters, e.g. 1,2,4 or 1..8")
        ->required();
    cone->add_option("--out", out_path, "trace CSV path");
    cone->add_option("--plot", plot_path, "SVG plot path");
    add_seed(cone);

    auto* bern = approx->add_subcommand("bernstein", "polynomial approximants");
    bern->add_option("--fn", fn_source, "catalog name or sampled CSV")->required();
    bern->add_option("--alpha", alpha, "Holder exponent in (0,1)")->required();
    bern->add_option("--degrees", index_list, "degree list, e.g. 4,16,64,256")
        ->required();
    bern->add_option("--grid", grid, "evaluation grid size (default 256)");
    bern->add_option("--out", out_path, "trace CSV path");
    bern->add_option("--plot", plot_path, "SVG plot path");

    auto* fejer = approx->add_subcommand("fejer", "trigonometric means");
    fejer->add_option("--fn", fn_source, "catalog name or sampled CSV")->required();
    fejer->add_option("--alpha", alpha, "Holder exponent in (0,1)")->required();
    fejer->add_option("--orders", index_list, "order list, e.g. 4,16,64,256")
        ->required();
    fejer->add_option("--grid", grid, "torus grid size (default 512)");
    fejer->add_option("--out", out_path, "trace CSV path");
    fejer->add_option("--plot", plot_path, "SVG plot path");

    auto* report = app.add_subcommand("report", "Summarize a trace CSV");
    report->add_option("--trace", trace_path, "trace CSV path")->required();
    report->add_option("--plot", plot_path, "re-emit the SVG plot");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate_space(space_source, seed);
        if (lipconst->parsed())
            return cmd_lipconst(space_source, fn_source, opt_alpha, thresholds,
                                seed);
        if (net->parsed()) return cmd_net(space_source, radius, opt_alpha, seed);
        if (approx->parsed()) {
            config.construction = cone->parsed()        ? Construction::cone
                                  : bern->parsed()      ? Construction::bernstein
                                                        : Construction::fejer;
            config.space = space_source;
            config.function = fn_source;
            config.alpha = alpha;
            config.indices = parse_index_list(index_list);
            config.grid = grid;
            config.seed = seed;
            return cmd_approx(std::move(config), out_path, plot_path);
        }
        if (report->parsed()) return cmd_report(trace_path, plot_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
