#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "wdw/checkpoint.hpp"
#include "wdw/classical.hpp"
#include "wdw/config.hpp"
#include "wdw/csv.hpp"
#include "wdw/errors.hpp"
#include "wdw/evolver.hpp"
#include "wdw/observables.hpp"
#include "wdw/version.hpp"

namespace fs = std::filesystem;
using namespace wdw;

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::size_t jobs = 1;
    long long snapshot_stride = -1; // -1 = keep config value
    std::string mode;               // sweep only
};

RunConfig resolve_config(const CliOptions& opt) {
    nlohmann::json doc = nlohmann::json::object();
    if (!opt.config_path.empty()) {
        std::ifstream f(opt.config_path);
        if (!f) throw ConfigError("cannot open config file: " + opt.config_path);
        try {
            doc = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config parse error in " + opt.config_path +
                              ": " + e.what());
        }
    }
    for (const auto& kv : opt.overrides) apply_override(doc, kv);
    RunConfig cfg = config_from_json(doc);
    if (!opt.out_dir.empty()) cfg.output.dir = opt.out_dir;
    if (opt.snapshot_stride >= 0)
        cfg.output.snapshot_stride = static_cast<std::size_t>(opt.snapshot_stride);
    validate(cfg);
    return cfg;
}

fs::path prepare_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output.dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() +
                          ": " + ec.message());
    return dir;
}

void cmd_portrait(const RunConfig& cfg) {
    const auto hash = config_hash(cfg);
    const fs::path dir = prepare_dir(cfg);

    // Seed lattice at cell centers of the portrait window.
    const auto& po = cfg.portrait;
    std::vector<PhasePoint> seeds;
    seeds.reserve(po.seeds_x * po.seeds_p);
    const double wx = (po.x_max - po.x_min) / static_cast<double>(po.seeds_x);
    const double wp = (po.p_max - po.p_min) / static_cast<double>(po.seeds_p);
    for (std::size_t i = 0; i < po.seeds_x; ++i)
        for (std::size_t j = 0; j < po.seeds_p; ++j)
            seeds.push_back({po.x_min + (static_cast<double>(i) + 0.5) * wx,
                             po.p_min + (static_cast<double>(j) + 0.5) * wp});

    const auto orbits = stroboscopic_portrait(seeds, po.n_periods, cfg.model);
    write_portrait_csv((dir / "portrait.csv").string(), orbits, hash);
}

void cmd_evolve(const RunConfig& cfg) {
    const auto hash = config_hash(cfg);
    const fs::path dir = prepare_dir(cfg);
    const RunSetup s = make_setup(cfg);

    const PhaseSpaceGrid grid =
        build_grid(s.x_min, s.x_max, s.p_min, s.p_max, s.n_x, s.n_p);
    WignerField state = gaussian_wigner(s.initial, grid, s.cfg, s.env);

    std::vector<EntropySample> rows{measure(state)};
    std::size_t sample_idx = 0;
    const std::size_t snap_stride = cfg.output.snapshot_stride;
    auto snapshot = [&](const WignerField& w) {
        if (snap_stride == 0 || sample_idx % snap_stride != 0) return;
        char name[48];
        std::snprintf(name, sizeof(name), "snapshot_%06zu", sample_idx);
        write_checkpoint((dir / (std::string(name) + ".ckpt")).string(), w, hash);
        write_matrix_txt((dir / (std::string(name) + ".txt")).string(), w.data,
                         w.time, hash);
    };
    snapshot(state);

    const double T = s.cfg.period();
    const double dt = T / static_cast<double>(s.steps_per_period);
    const std::size_t stride = s.steps_per_period / s.samples_per_period;
    const std::string csv_path = (dir / "entropy.csv").string();
    try {
        evolve(state, s.periods * T, dt, stride, [&](const WignerField& w) {
            rows.push_back(measure(w));
            ++sample_idx;
            snapshot(w);
        });
    } catch (const SolverAbort&) {
        write_entropy_csv(csv_path, rows, hash); // keep the partial series
        throw;
    }
    write_entropy_csv(csv_path, rows, hash);
}

void cmd_lyapunov(const RunConfig& cfg) {
    const auto hash = config_hash(cfg);
    const fs::path dir = prepare_dir(cfg);
    const RunSetup s = make_setup(cfg);

    TrajectoryEnsemble ens =
        sample_ensemble(s.initial, s.ensemble_n, s.seed, s.cfg);
    const double T = s.cfg.period();
    const LyapunovSeries series =
        local_lyapunov(ens, s.ensemble_periods * T,
                       T / static_cast<double>(s.renorm_per_period));
    write_lyapunov_csv((dir / "lyapunov.csv").string(), series, s.ensemble_n,
                       hash);
}

void cmd_sweep(const RunConfig& cfg, const std::string& mode,
               std::size_t jobs) {
    const bool by_D = (mode == "diffusion");
    const std::vector<double>& values =
        by_D ? cfg.analysis.sweep_D : cfg.analysis.sweep_H0;
    if (values.empty())
        throw ConfigError("sweep list analysis.sweep_" +
                          std::string(by_D ? "D" : "H0") + " is empty");

    const auto hash = config_hash(cfg);
    const fs::path dir = prepare_dir(cfg);
    const RunSetup base = make_setup(cfg);

    const std::vector<TransitionFit> fits =
        by_D ? sweep_diffusion(base, values, jobs)
             : sweep_initial_entropy(base, values, jobs);

    write_sweep_csv((dir / ("sweep_" + mode + ".csv")).string(), fits, hash);

    // Regression of t_c against ln D (diffusion) or H0 (entropy).
    std::vector<double> xs, ys;
    for (const auto& f : fits)
        if (f.status == TransitionStatus::transition) {
            xs.push_back(by_D ? std::log(f.parameter) : f.parameter);
            ys.push_back(f.t_c);
        }
    LinearFit fit;
    if (xs.size() >= 3) fit = linear_fit(xs, ys);
    write_fit_json((dir / ("fit_" + mode + ".json")).string(), mode, fits, fit,
                   hash);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-space simulator for a driven quartic double well "
                 "coupled to a diffusive environment"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--set", opt.overrides,
                   "Override a config key, e.g. --set env.D=1e-3");
    app.add_option("--out", opt.out_dir, "Output directory");
    app.add_option("--jobs", opt.jobs, "Concurrent sweep points")
        ->check(CLI::PositiveNumber);
    app.add_option("--snapshot-stride", opt.snapshot_stride,
                   "Write a Wigner snapshot every N samples (0 disables)");

    auto* portrait = app.add_subcommand(
        "portrait", "Stroboscopic phase-space portrait of the classical flow");
    auto* evolve_cmd = app.add_subcommand(
        "evolve", "Evolve a Gaussian Wigner state and record entropy data");
    auto* lyapunov = app.add_subcommand(
        "lyapunov", "Finite-time Lyapunov exponent of the matched ensemble");
    auto* sweep = app.add_subcommand(
        "sweep", "Transition-time sweep over diffusion or initial entropy");
    sweep->add_option("--mode", opt.mode, "Swept parameter")
        ->required()
        ->check(CLI::IsMember({"diffusion", "entropy"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = resolve_config(opt);
        if (portrait->parsed()) cmd_portrait(cfg);
        if (evolve_cmd->parsed()) cmd_evolve(cfg);
        if (lyapunov->parsed()) cmd_lyapunov(cfg);
        if (sweep->parsed()) cmd_sweep(cfg, opt.mode, opt.jobs);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const SolverAbort& e) {
        std::fprintf(stderr, "solver abort: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
