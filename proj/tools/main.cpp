#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triwalk/analysis.hpp"
#include "triwalk/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitCapacityError = 2;

void print_summary(const triwalk::RunReport& report) {
    const auto& cfg = report.config;
    std::printf("%s: steps=%d sigma(final)=%.4f P(0)=%.5f -> %s (%.2fs)\n",
                triwalk::model_name(cfg.model).c_str(), cfg.steps,
                report.sigma_series.back(), report.distribution.at(0),
                cfg.output_dir.string().c_str(), report.wall_seconds);
}

int run_one(const std::string& file, int threads) {
    try {
        const triwalk::ExperimentConfig cfg = triwalk::parse_config_file(file);
        print_summary(triwalk::run_experiment(cfg, threads));
        return kExitOk;
    } catch (const triwalk::capacity_error& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return kExitCapacityError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
}

int run_sweep(const std::vector<std::string>& files, int threads) {
    std::vector<triwalk::ExperimentConfig> cfgs;
    bool parse_failed = false;
    for (const std::string& file : files) {
        try {
            cfgs.push_back(triwalk::parse_config_file(file));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s: error: %s\n", file.c_str(), e.what());
            parse_failed = true;
        }
    }

    const triwalk::SweepResult result = triwalk::sweep(cfgs, threads);
    for (const auto& report : result.reports) print_summary(report);
    for (const auto& [index, message] : result.errors)
        std::fprintf(stderr, "config %zu: error: %s\n", index, message.c_str());

    if (result.any_capacity_error) return kExitCapacityError;
    if (parse_failed || !result.errors.empty()) return kExitConfigError;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-state quantum walk simulator with decoherence models"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "Worker threads for Monte Carlo models (0 = hardware)");

    std::string run_file;
    CLI::App* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("config", run_file, "Config file (flat key = value)")->required();

    std::vector<std::string> sweep_files;
    CLI::App* sweep = app.add_subcommand("sweep", "Run several experiments");
    sweep->add_option("configs", sweep_files, "Config files")->required()->expected(-1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitConfigError : kExitOk;
    }

    if (run->parsed()) return run_one(run_file, threads);
    return run_sweep(sweep_files, threads);
}
