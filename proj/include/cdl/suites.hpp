#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cdl {

/// Configuration shared by every experiment suite. `alphas` empty means
/// "auto": each suite picks rho_n-relative values.
struct ExperimentConfig {
    std::string suite;
    std::vector<int> ns{1, 2, 3};
    std::vector<double> alphas;
    std::vector<std::string> families{"box", "ball", "simplex", "random"};
    double grid_h = 1.0 / 64.0;
    double grid_range = 8.0;
    std::uint64_t seed = 20240811;
    std::string out_dir = "out";
};

ExperimentConfig config_from_json(const nlohmann::json& j);

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json summary;
    // Extra artifacts (detail CSVs, report JSONs) written verbatim.
    std::vector<std::pair<std::string, std::string>> extra_files;
};

/// Suites: transforms, exact-jl, tight-jl, mahler, rho-table, covering,
/// duality, crosscheck. Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const ExperimentConfig& cfg);

/// Writes <out>/<suite>.csv and <out>/<suite>_summary.json (rows sorted for
/// byte-stable output). Returns the csv path.
std::string write_suite_outputs(const SuiteResult& result, const std::string& out_dir);

/// Tidy plot exports reading suite outputs where needed. Kinds:
/// lambda-vs-alpha, gamma-vs-n, h-curve, covering-ratios.
std::string export_plot_data(const std::string& kind, const ExperimentConfig& cfg);

/// Doubled-precision re-implementation of the rho_n bisection (independent
/// verification path for the rho table).
long double compute_rho_ld(int n);

}  // namespace cdl
