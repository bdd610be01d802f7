#ifndef ECTL_CONFIG_HPP
#define ECTL_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ectl/grid.hpp"

namespace ectl {

struct ExperimentConfig {
    double omega_min = 0.0;
    double omega_max = 3.14159265358979323846;
    std::size_t nodes = kDefaultGridNodes;
    int n_max = 256;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 20250810;
    std::string out_dir = "out";
    std::string format = "csv"; // csv | json

    OmegaGrid grid() const { return OmegaGrid::uniform(omega_min, omega_max, nodes); }
    double tol(const std::string& name, double fallback) const;
    void validate() const;

    void apply_json(const std::string& text); // config file layer
    static ExperimentConfig load(const std::string& path);
};

struct ExperimentReport {
    std::string command;
    std::string started;
    std::string finished;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> artifacts;

    void add_metric(const std::string& name, double value); // rejects non-finite
    std::string to_json() const;
};

std::string iso8601_now();
std::string format_double(double v); // shortest round-trip decimal

// Row-oriented table with a fixed column header; serializes to CSV or a JSON
// array of objects. Cells are preformatted strings so CSV bytes stay
// deterministic.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_csv() const;
    std::string to_json() const;
    std::string serialize(const std::string& format) const;
    static std::string extension(const std::string& format);
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void ensure_directory(const std::string& path);

} // namespace ectl

#endif
