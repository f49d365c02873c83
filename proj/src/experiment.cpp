#include "triwalk/experiment.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "triwalk/density.hpp"

namespace triwalk {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': cannot parse '" + value + "' as a number");
    }
    if (pos != value.size())
        throw config_error("key '" + key + "': trailing characters in '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    const double v = parse_real(key, value);
    if (v != std::floor(v))
        throw config_error("key '" + key + "': expected an integer, got '" + value + "'");
    return static_cast<long long>(v);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': cannot parse '" + value +
                           "' as a nonnegative integer");
    }
}

// "(re,im),(re,im),(re,im)"
Vec3 parse_custom_coin(const std::string& value) {
    std::string s;
    for (char c : value)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    Vec3 v{};
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
        if (pos >= s.size() || s[pos] != '(')
            throw config_error("key 'initial_coin': expected '(re,im),(re,im),(re,im)', got '" +
                               value + "'");
        const std::size_t close = s.find(')', pos);
        const std::size_t comma = s.find(',', pos);
        if (close == std::string::npos || comma == std::string::npos || comma > close)
            throw config_error("key 'initial_coin': malformed component in '" + value + "'");
        const double re = parse_real("initial_coin", s.substr(pos + 1, comma - pos - 1));
        const double im = parse_real("initial_coin", s.substr(comma + 1, close - comma - 1));
        v[k] = cplx(re, im);
        pos = close + 1;
        if (k < 2) {
            if (pos >= s.size() || s[pos] != ',')
                throw config_error("key 'initial_coin': expected three components in '" +
                                   value + "'");
            ++pos;
        }
    }
    if (pos != s.size())
        throw config_error("key 'initial_coin': trailing characters in '" + value + "'");
    double norm = 0.0;
    for (const cplx& z : v) norm += std::norm(z);
    if (norm <= 0.0)
        throw config_error("key 'initial_coin': custom vector must be nonzero");
    const double inv = 1.0 / std::sqrt(norm);
    for (cplx& z : v) z *= inv;
    return v;
}

constexpr const char* kKnownKeys[] = {"model",   "steps", "gamma",        "sigma_a",
                                      "p",       "runs",  "initial_coin", "master_seed",
                                      "output_dir"};

bool is_known_key(const std::string& k) {
    for (const char* known : kKnownKeys)
        if (k == known) return true;
    return false;
}

bool is_density_model(Model m) {
    return m == Model::PhaseDamping || m == Model::AmplitudeDamping;
}

bool is_stochastic_model(Model m) {
    return m == Model::UnitaryNoise || m == Model::BrokenLinks;
}

void append_row(std::string& out, int t, double value) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d,%.12g\n", t, value);
    out += buf;
}

}  // namespace

std::string model_name(Model m) {
    switch (m) {
        case Model::Coherent: return "coherent";
        case Model::PhaseDamping: return "phase_damping";
        case Model::AmplitudeDamping: return "amplitude_damping";
        case Model::UnitaryNoise: return "unitary_noise";
        case Model::BrokenLinks: return "broken_links";
    }
    return "unknown";
}

Vec3 localized_initial_coin() {
    const double s = 1.0 / std::sqrt(2.0);
    return {cplx(0.0, s), cplx(0.0, 0.0), cplx(s, 0.0)};
}

Vec3 nonlocalized_initial_coin() {
    const double s = 1.0 / std::sqrt(6.0);
    return {cplx(s, 0.0), cplx(-2.0 * s, 0.0), cplx(s, 0.0)};
}

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line_no) +
                               ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(line_no) + ": empty key or value");
        if (!is_known_key(key)) throw config_error("unknown key '" + key + "'");
        if (kv.count(key)) throw config_error("duplicate key '" + key + "'");
        kv[key] = value;
    }

    const auto take = [&kv](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    ExperimentConfig cfg;

    const auto model = take("model");
    if (!model) throw config_error("missing required key 'model'");
    if (*model == "coherent") cfg.model = Model::Coherent;
    else if (*model == "phase_damping") cfg.model = Model::PhaseDamping;
    else if (*model == "amplitude_damping") cfg.model = Model::AmplitudeDamping;
    else if (*model == "unitary_noise") cfg.model = Model::UnitaryNoise;
    else if (*model == "broken_links") cfg.model = Model::BrokenLinks;
    else
        throw config_error("unknown model '" + *model +
                           "' (expected coherent, phase_damping, amplitude_damping, "
                           "unitary_noise or broken_links)");

    if (const auto steps = take("steps")) {
        const long long v = parse_int("steps", *steps);
        if (v < 1) throw config_error("key 'steps': must be >= 1");
        cfg.steps = static_cast<int>(v);
    }

    if (const auto gamma = take("gamma")) {
        if (!is_density_model(cfg.model))
            throw config_error("key 'gamma' does not apply to model '" + model_name(cfg.model) +
                               "'");
        cfg.gamma = parse_real("gamma", *gamma);
        if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0))
            throw config_error("key 'gamma': must lie in [0, 1]");
    } else if (is_density_model(cfg.model)) {
        throw config_error("model '" + model_name(cfg.model) + "' requires key 'gamma'");
    }

    if (const auto sigma_a = take("sigma_a")) {
        if (cfg.model != Model::UnitaryNoise)
            throw config_error("key 'sigma_a' does not apply to model '" +
                               model_name(cfg.model) + "'");
        cfg.sigma_a = parse_real("sigma_a", *sigma_a);
        if (!(cfg.sigma_a >= 0.0)) throw config_error("key 'sigma_a': must be >= 0");
    } else if (cfg.model == Model::UnitaryNoise) {
        throw config_error("model 'unitary_noise' requires key 'sigma_a'");
    }

    if (const auto p = take("p")) {
        if (cfg.model != Model::BrokenLinks)
            throw config_error("key 'p' does not apply to model '" + model_name(cfg.model) + "'");
        cfg.p = parse_real("p", *p);
        if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw config_error("key 'p': must lie in [0, 1]");
    } else if (cfg.model == Model::BrokenLinks) {
        throw config_error("model 'broken_links' requires key 'p'");
    }

    if (const auto runs = take("runs")) {
        if (!is_stochastic_model(cfg.model))
            throw config_error("key 'runs' does not apply to model '" + model_name(cfg.model) +
                               "'");
        const long long v = parse_int("runs", *runs);
        if (v < 1) throw config_error("key 'runs': must be >= 1");
        cfg.runs = static_cast<int>(v);
    } else if (is_stochastic_model(cfg.model)) {
        cfg.runs = cfg.model == Model::UnitaryNoise ? 400 : 1000;
    }

    const auto ic = take("initial_coin");
    if (!ic) throw config_error("missing required key 'initial_coin'");
    if (*ic == "localized") {
        cfg.initial_coin = localized_initial_coin();
        cfg.initial_coin_name = "localized";
    } else if (*ic == "nonlocalized") {
        cfg.initial_coin = nonlocalized_initial_coin();
        cfg.initial_coin_name = "nonlocalized";
    } else {
        cfg.initial_coin = parse_custom_coin(*ic);
        cfg.initial_coin_name = "custom";
    }

    if (const auto seed = take("master_seed")) cfg.master_seed = parse_seed("master_seed", *seed);

    const auto out = take("output_dir");
    if (!out) throw config_error("missing required key 'output_dir'");
    cfg.output_dir = *out;

    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

struct SeriesCollector {
    PositionDistribution distribution;
    SigmaSeries sigma;
    std::vector<GcpVector> gcp_series;
    std::vector<InterferenceTerms> q_series;
};

SeriesCollector run_coherent(const ExperimentConfig& cfg) {
    SeriesCollector out;
    const Mat3 coin = grover_coin();
    SpinorState state = initial_state(cfg.initial_coin, cfg.steps + 1);
    out.sigma.reserve(cfg.steps + 1);
    for (int t = 0; t <= cfg.steps; ++t) {
        if (t > 0) state = step_pure(state, coin);
        const PositionDistribution dist = position_distribution(state);
        out.sigma.push_back(sigma_of(dist));
        out.gcp_series.push_back(gcp(state));
        out.q_series.push_back(interference_terms(state));
        if (t == cfg.steps) out.distribution = dist;
    }
    return out;
}

SeriesCollector run_density(const ExperimentConfig& cfg) {
    constexpr int kMaxDensitySteps = 5000;
    if (cfg.steps > kMaxDensitySteps)
        throw capacity_error("model '" + model_name(cfg.model) + "' is limited to " +
                             std::to_string(kMaxDensitySteps) +
                             " steps (joint density matrix storage grows quadratically); got " +
                             std::to_string(cfg.steps));
    const KrausSet ks = cfg.model == Model::PhaseDamping
                            ? phase_damping_kraus(cfg.gamma)
                            : amplitude_damping_kraus(cfg.gamma);
    const Mat3 coin = grover_coin();
    SeriesCollector out;
    JointDensity rho = from_pure(initial_state(cfg.initial_coin, cfg.steps + 1));
    for (int t = 0; t <= cfg.steps; ++t) {
        if (t > 0) {
            rho = apply_unitary_step(rho, coin);
            rho = apply_kraus(rho, ks);
        }
        const PositionDistribution dist = density_distribution(rho);
        out.sigma.push_back(sigma_of(dist));
        out.gcp_series.push_back(density_gcp(rho));
        out.q_series.push_back(density_interference(rho));
        if (t == cfg.steps) out.distribution = dist;
    }
    return out;
}

SeriesCollector run_stochastic(const ExperimentConfig& cfg, int threads) {
    McConfig mc;
    mc.model = cfg.model == Model::UnitaryNoise ? NoiseModel::UnitaryNoise
                                                : NoiseModel::BrokenLinks;
    mc.runs = cfg.runs;
    mc.steps = cfg.steps;
    mc.sigma_a = cfg.sigma_a;
    mc.p = cfg.p;
    mc.initial_coin = cfg.initial_coin;
    mc.master_seed = cfg.master_seed;
    TrajectoryStats stats = monte_carlo(mc, threads);
    return {std::move(stats.distribution), std::move(stats.sigma),
            std::move(stats.gcp_series), std::move(stats.q_series)};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_csvs(const RunReport& report) {
    const ExperimentConfig& cfg = report.config;

    std::string dist_csv = "n,probability\n";
    for (int n = -cfg.steps; n <= cfg.steps; ++n)
        append_row(dist_csv, n, report.distribution.at(n));
    write_file(cfg.output_dir / "distribution.csv", dist_csv);

    std::string sigma_csv = "t,sigma\n";
    for (int t = 0; t <= cfg.steps; ++t)
        append_row(sigma_csv, t, report.sigma_series[t]);
    write_file(cfg.output_dir / "sigma.csv", sigma_csv);

    std::string gcp_csv = "t,P_L,P_S,P_R,Re_Q1,Re_Q2,Re_Q3\n";
    for (int t = 0; t <= cfg.steps; ++t) {
        char buf[192];
        const GcpVector& g = report.gcp_series[t];
        const InterferenceTerms& q = report.q_series[t];
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", t, g.p_l,
                      g.p_s, g.p_r, q.q1.real(), q.q2.real(), q.q3.real());
        gcp_csv += buf;
    }
    write_file(cfg.output_dir / "gcp.csv", gcp_csv);
}

void write_report_json(const RunReport& report) {
    const ExperimentConfig& cfg = report.config;
    json j;
    j["model"] = model_name(cfg.model);
    j["steps"] = cfg.steps;
    if (is_density_model(cfg.model)) j["gamma"] = cfg.gamma;
    if (cfg.model == Model::UnitaryNoise) j["sigma_a"] = cfg.sigma_a;
    if (cfg.model == Model::BrokenLinks) j["p"] = cfg.p;
    if (is_stochastic_model(cfg.model)) j["runs"] = cfg.runs;
    j["initial_coin"]["name"] = cfg.initial_coin_name;
    j["initial_coin"]["amplitudes"] = json::array();
    for (const cplx& z : cfg.initial_coin)
        j["initial_coin"]["amplitudes"].push_back({z.real(), z.imag()});
    j["master_seed"] = cfg.master_seed;
    j["output_dir"] = cfg.output_dir.string();
    j["wall_seconds"] = report.wall_seconds;
    j["outputs"] = {"distribution.csv", "sigma.csv", "gcp.csv"};
    write_file(cfg.output_dir / "report.json", j.dump(2) + "\n");
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg, int threads) {
    if (cfg.steps < 1) throw config_error("steps must be >= 1");
    if (cfg.output_dir.empty()) throw config_error("output_dir must not be empty");

    const auto t0 = std::chrono::steady_clock::now();
    SeriesCollector series;
    switch (cfg.model) {
        case Model::Coherent: series = run_coherent(cfg); break;
        case Model::PhaseDamping:
        case Model::AmplitudeDamping: series = run_density(cfg); break;
        case Model::UnitaryNoise:
        case Model::BrokenLinks: series = run_stochastic(cfg, threads); break;
    }

    RunReport report;
    report.config = cfg;
    report.distribution = std::move(series.distribution);
    report.sigma_series = std::move(series.sigma);
    report.gcp_series = std::move(series.gcp_series);
    report.q_series = std::move(series.q_series);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::filesystem::create_directories(cfg.output_dir);
    write_csvs(report);
    write_report_json(report);
    return report;
}

SweepResult sweep(const std::vector<ExperimentConfig>& cfgs, int threads) {
    SweepResult result;
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        try {
            result.reports.push_back(run_experiment(cfgs[i], threads));
        } catch (const capacity_error& e) {
            result.errors.emplace_back(i, e.what());
            result.any_capacity_error = true;
        } catch (const std::exception& e) {
            result.errors.emplace_back(i, e.what());
        }
    }
    return result;
}

}  // namespace triwalk
