#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "triwalk/analysis.hpp"
#include "triwalk/errors.hpp"
#include "triwalk/stochastic.hpp"

namespace triwalk {

enum class Model {
    Coherent,
    PhaseDamping,
    AmplitudeDamping,
    UnitaryNoise,
    BrokenLinks,
};

std::string model_name(Model m);

struct ExperimentConfig {
    Model model = Model::Coherent;
    int steps = 100;
    double gamma = 0.0;    // phase_damping, amplitude_damping
    double sigma_a = 0.0;  // unitary_noise
    double p = 0.0;        // broken_links
    int runs = 0;          // stochastic models; defaults 400 / 1000
    Vec3 initial_coin{};
    std::string initial_coin_name;  // "localized", "nonlocalized" or "custom"
    std::uint64_t master_seed = 0;
    std::filesystem::path output_dir;
};

// Exact initial conditions of the paper-standard aliases.
Vec3 localized_initial_coin();     // (i, 0, 1)/sqrt(2)
Vec3 nonlocalized_initial_coin();  // (1, -2, 1)/sqrt(6)

// Parses a flat key = value document (# comments, blank lines allowed).
// Keys: model, steps, gamma, sigma_a, p, runs, initial_coin, master_seed,
// output_dir. Unknown keys, missing required keys, out-of-range values
// and parameters that do not apply to the chosen model raise config_error
// naming the key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

struct RunReport {
    ExperimentConfig config;
    PositionDistribution distribution;
    std::vector<GcpVector> gcp_series;
    SigmaSeries sigma_series;
    std::vector<InterferenceTerms> q_series;
    double wall_seconds = 0.0;
};

// Executes the configured model and writes distribution.csv, sigma.csv,
// gcp.csv and report.json to output_dir. Reruns with the same config and
// seed produce byte-identical CSVs. Density models reject steps > 5000
// with capacity_error before any allocation.
RunReport run_experiment(const ExperimentConfig& cfg, int threads = 0);

struct SweepResult {
    std::vector<RunReport> reports;  // successful runs, in config order
    std::vector<std::pair<std::size_t, std::string>> errors;  // (index, message)
    bool any_capacity_error = false;
};

// Runs every config; a failing config is reported and does not stop the
// others.
SweepResult sweep(const std::vector<ExperimentConfig>& cfgs, int threads = 0);

}  // namespace triwalk
