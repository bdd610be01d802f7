#include "ectl/config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ectl {

double ExperimentConfig::tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

void ExperimentConfig::validate() const {
    if (nodes < 2) throw PreconditionError("config: nodes must be >= 2");
    if (!(omega_min < omega_max)) throw PreconditionError("config: omega_min < omega_max");
    if (n_max < 1) throw PreconditionError("config: n_max must be >= 1");
    for (const auto& [name, v] : tolerances)
        if (!(v > 0.0)) throw PreconditionError("config: tolerance '" + name + "' must be > 0");
    if (format != "csv" && format != "json")
        throw PreconditionError("config: format must be csv or json");
}

void ExperimentConfig::apply_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (g.contains("omega_min")) omega_min = g["omega_min"].get<double>();
        if (g.contains("omega_max")) omega_max = g["omega_max"].get<double>();
        if (g.contains("nodes")) nodes = g["nodes"].get<std::size_t>();
    }
    if (j.contains("n_max")) n_max = j["n_max"].get<int>();
    if (j.contains("tolerances"))
        for (const auto& [k, v] : j["tolerances"].items())
            tolerances[k] = v.get<double>();
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (o.contains("directory")) out_dir = o["directory"].get<std::string>();
        if (o.contains("format")) format = o["format"].get<std::string>();
    }
    validate();
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    ExperimentConfig cfg;
    cfg.apply_json(read_text_file(path));
    return cfg;
}

void ExperimentReport::add_metric(const std::string& name, double value) {
    if (!std::isfinite(value))
        throw InternalError("report metric '" + name + "' is not finite");
    metrics.emplace_back(name, value);
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["started"] = started;
    j["finished"] = finished;
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : metrics) m[k] = v;
    j["metrics"] = m;
    j["artifacts"] = artifacts;
    return j.dump(2);
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw InternalError("table row width does not match the header");
    rows.push_back(std::move(cells));
}

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

std::string Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        arr.push_back(obj);
    }
    return arr.dump(2);
}

std::string Table::serialize(const std::string& format) const {
    return format == "json" ? to_json() : to_csv();
}

std::string Table::extension(const std::string& format) {
    return format == "json" ? ".json" : ".csv";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot open '" + path + "' for writing");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw PreconditionError("cannot create directory '" + path + "': " + ec.message());
}

} // namespace ectl
