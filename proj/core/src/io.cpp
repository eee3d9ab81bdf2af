#include "lipkit/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lipkit/detail/format.hpp"
#include "lipkit/fejer.hpp"

namespace lipkit {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

std::vector<std::string> read_labels(const json& j, const std::string& path) {
    if (!j.contains("labels") || !j["labels"].is_array())
        throw std::runtime_error(path + ": missing \"labels\" array");
    std::vector<std::string> labels;
    for (const auto& item : j["labels"]) {
        if (item.is_string())
            labels.push_back(item.get<std::string>());
        else
            labels.push_back(item.dump());
    }
    return labels;
}

std::size_t resolve_base(const json& j, const std::vector<std::string>& labels,
                         const std::string& path) {
    if (!j.contains("base"))
        throw std::runtime_error(path + ": missing \"base\" label");
    const std::string base =
        j["base"].is_string() ? j["base"].get<std::string>() : j["base"].dump();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == base) return i;
    throw std::runtime_error(path + ": base label \"" + base +
                             "\" not among the point labels");
}

double point_coord_1d(const json& entry) {
    if (entry.is_number()) return entry.get<double>();
    if (entry.is_array() && entry.size() == 1 && entry[0].is_number())
        return entry[0].get<double>();
    throw std::runtime_error("1-d metric needs scalar coordinates");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos
                             ? std::string{}
                             : field.substr(first, last - first + 1));
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

LoadedSpace load_space_json(const std::string& path) {
    const json j = parse_file(path);
    auto labels = read_labels(j, path);
    const std::size_t base = resolve_base(j, labels, path);
    const std::size_t n = labels.size();

    if (j.contains("dist")) {
        if (!j["dist"].is_array() || j["dist"].size() != n)
            throw std::runtime_error(path + ": \"dist\" must be an " +
                                     std::to_string(n) + "x" +
                                     std::to_string(n) + " matrix");
        std::vector<std::vector<double>> dist(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = j["dist"][i];
            if (!row.is_array() || row.size() != n)
                throw std::runtime_error(path + ": \"dist\" row " +
                                         std::to_string(i) + " has wrong size");
            for (std::size_t k = 0; k < n; ++k) dist[i][k] = row[k].get<double>();
        }
        return LoadedSpace{PointedMetricSpace::create(std::move(labels), dist, base),
                           "matrix", std::nullopt};
    }

    if (!j.contains("coords"))
        throw std::runtime_error(path + ": need either \"dist\" or \"coords\"");
    const std::string metric = j.value("metric", std::string{"euclidean"});
    const auto& coords = j["coords"];
    if (!coords.is_array() || coords.size() != n)
        throw std::runtime_error(path + ": \"coords\" must list one point per label");

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    std::optional<std::vector<double>> coords_1d;

    if (metric == "euclidean") {
        std::vector<std::vector<double>> pts(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (coords[i].is_number())
                pts[i] = {coords[i].get<double>()};
            else
                pts[i] = coords[i].get<std::vector<double>>();
            if (pts[i].size() != pts[0].size())
                throw std::runtime_error(path + ": inconsistent coordinate dimension");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) {
                double sq = 0.0;
                for (std::size_t d = 0; d < pts[i].size(); ++d) {
                    const double delta = pts[i][d] - pts[k][d];
                    sq += delta * delta;
                }
                dist[i][k] = dist[k][i] = std::sqrt(sq);
            }
        if (!pts.empty() && pts[0].size() == 1) {
            coords_1d.emplace(n);
            for (std::size_t i = 0; i < n; ++i) (*coords_1d)[i] = pts[i][0];
        }
    } else if (metric == "interval" || metric == "torus") {
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = point_coord_1d(coords[i]);
            if (metric == "torus") xs[i] = canonical_angle(xs[i]);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                dist[i][k] = dist[k][i] = metric == "torus"
                                              ? torus_distance(xs[i], xs[k])
                                              : std::abs(xs[i] - xs[k]);
        coords_1d = std::move(xs);
    } else {
        throw std::runtime_error(path + ": unknown metric \"" + metric +
                                 "\" (euclidean, torus or interval)");
    }

    return LoadedSpace{PointedMetricSpace::create(std::move(labels), dist, base),
                       metric, std::move(coords_1d)};
}

SampledFunction load_function_csv(const std::string& path, const SpacePtr& space) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<double> values(space->size(), 0.0);
    std::vector<char> seen(space->size(), 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error(detail::format(
                "%s:%zu: expected \"label,value\"", path.c_str(), lineno));
        double v = 0.0;
        if (!parse_double(fields[1], v)) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error(detail::format(
                "%s:%zu: cannot parse value \"%s\"", path.c_str(), lineno,
                fields[1].c_str()));
        }
        const std::size_t idx = space->index_of(fields[0]);
        if (seen[idx])
            throw std::runtime_error(detail::format(
                "%s:%zu: duplicate value for label \"%s\"", path.c_str(), lineno,
                fields[0].c_str()));
        seen[idx] = 1;
        values[idx] = v;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::runtime_error(path + ": no value for label \"" +
                                     space->label(i) + "\"");
    return SampledFunction::create(space, std::move(values));
}

std::vector<std::pair<double, double>> load_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error(detail::format(
                "%s:%zu: expected \"x,value\"", path.c_str(), lineno));
        double x = 0.0, v = 0.0;
        if (!parse_double(fields[0], x) || !parse_double(fields[1], v)) {
            if (lineno == 1) continue;  // header row
            throw std::runtime_error(detail::format(
                "%s:%zu: cannot parse numeric row", path.c_str(), lineno));
        }
        rows.emplace_back(x, v);
    }
    if (rows.empty()) throw std::runtime_error(path + ": no samples");
    return rows;
}

void write_trace_csv(const ConvergenceTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "n,net_size_or_degree,lip_alpha,lip_base,sup_error,paper_bound,verdict\n";
    for (const TraceRow& row : trace.rows)
        out << row.index << ',' << row.size << ','
            << detail::format_double(row.lip_alpha) << ','
            << detail::format_double(row.lip_base) << ','
            << detail::format_double(row.sup_error) << ','
            << detail::format_double(row.bound) << ','
            << (row.pass ? "pass" : "fail") << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

ConvergenceTrace read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    ConvergenceTrace trace;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("n,", 0) == 0) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7)
            throw std::runtime_error(detail::format(
                "%s:%zu: expected 7 columns", path.c_str(), lineno));
        TraceRow row;
        row.index = std::atoi(fields[0].c_str());
        row.size = std::atoi(fields[1].c_str());
        row.lip_alpha = std::strtod(fields[2].c_str(), nullptr);
        row.lip_base = std::strtod(fields[3].c_str(), nullptr);
        row.sup_error = std::strtod(fields[4].c_str(), nullptr);
        row.bound = std::strtod(fields[5].c_str(), nullptr);
        row.pass = fields[6] == "pass";
        trace.rows.push_back(row);
    }
    return trace;
}

void write_cone_json(const ConeApproximant& approximant, const std::string& path) {
    json j;
    const ConeParams& p = approximant.params();
    j["alpha"] = p.alpha;
    j["n"] = p.n;
    j["gamma"] = p.gamma;
    j["rho"] = p.rho;
    j["shift"] = p.shift;
    json centers = json::array();
    for (std::size_t c : approximant.centers())
        centers.push_back(approximant.space()->label(c));
    j["centers"] = std::move(centers);
    j["center_values"] = approximant.center_values();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

ConeApproximant load_cone_json(const std::string& path, const SpacePtr& space) {
    const json j = parse_file(path);
    for (const char* key :
         {"alpha", "n", "gamma", "rho", "shift", "centers", "center_values"})
        if (!j.contains(key))
            throw std::runtime_error(path + ": missing field \"" +
                                     std::string(key) + "\"");
    ConeParams p;
    p.alpha = j["alpha"].get<double>();
    p.n = j["n"].get<int>();
    p.gamma = j["gamma"].get<double>();
    p.rho = j["rho"].get<double>();
    p.shift = j["shift"].get<double>();

    std::vector<std::size_t> centers;
    for (const auto& label : j["centers"])
        centers.push_back(space->index_of(label.get<std::string>()));
    auto shifted = j["center_values"].get<std::vector<double>>();
    if (shifted.size() != centers.size())
        throw std::runtime_error(path + ": centers and center_values disagree");
    std::vector<double> raw(shifted.size());
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = shifted[i] - p.shift;
    return ConeApproximant(space, std::move(centers), std::move(shifted),
                           std::move(raw), p);
}

}  // namespace lipkit
