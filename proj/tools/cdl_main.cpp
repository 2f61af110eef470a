#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cdl/suites.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"cdl - scaled convex duality experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, export_kind;
    std::vector<int> ns;
    std::vector<double> alphas;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double grid_h = 0.0, grid_range = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--n", ns, "dimension list");
        sub->add_option("--alpha", alphas, "alpha list");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--grid-h", grid_h, "grid step");
        sub->add_option("--grid-range", grid_range, "grid half-range");
    };

    std::vector<std::string> suites = {"transforms", "exact-jl", "tight-jl", "mahler",
                                       "rho-table",  "covering", "duality",  "crosscheck"};
    for (const std::string& s : suites) add_common(app.add_subcommand(s, "run the " + s + " suite"));
    CLI::App* exp = app.add_subcommand("export", "export tidy plot data");
    add_common(exp);
    exp->add_option("--kind", export_kind,
                    "lambda-vs-alpha | gamma-vs-n | h-curve | covering-ratios")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cdl::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::fprintf(stderr, "cannot open config %s\n", config_path.c_str());
                return 2;
            }
            nlohmann::json j;
            in >> j;
            cfg = cdl::config_from_json(j);
        }
        if (!ns.empty()) cfg.ns = ns;
        if (!alphas.empty()) cfg.alphas = alphas;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_set) cfg.seed = seed;
        if (grid_h > 0.0) cfg.grid_h = grid_h;
        if (grid_range > 0.0) cfg.grid_range = grid_range;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        if (exp->parsed()) {
            std::string path = cdl::export_plot_data(export_kind, cfg);
            std::printf("wrote %s\n", path.c_str());
            return 0;
        }
        for (const std::string& s : suites) {
            if (app.get_subcommand(s)->parsed()) {
                cfg.suite = s;
                cdl::SuiteResult res = cdl::run_suite(cfg);
                std::string path = cdl::write_suite_outputs(res, cfg.out_dir);
                std::size_t failures = 0;
                for (const auto& row : res.rows)
                    if (row.back() == "FAIL") ++failures;
                std::printf("%s: %zu rows, %zu failures -> %s\n", s.c_str(),
                            res.rows.size(), failures, path.c_str());
                return res.pass ? 0 : 1;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
