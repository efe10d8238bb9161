#ifndef WDW_CONFIG_HPP
#define WDW_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wdw/analysis.hpp"
#include "wdw/model.hpp"

namespace wdw {

/** Full run description, mirrored one-to-one by the JSON schema. Sections:
 * model, env, grid, initial, evolution, ensemble, analysis, portrait,
 * output. Unknown keys are rejected so config typos fail loudly. */
struct RunConfig {
    ModelConfig model;       // B, C, E, omega, hbar
    EnvironmentParams env;   // gamma, D

    struct Grid {
        double x_min = -8.0, x_max = 8.0;
        double p_min = -16.0, p_max = 16.0;
        std::size_t n_x = 512, n_p = 512;
    } grid;

    struct Initial {
        double x0 = 0.0, p0 = 0.0;
        double H0 = 0.0;     // initial linear entropy
        double aspect = 1.0; // sigma_p / sigma_x
    } initial;

    struct Evolution {
        double periods = 10.0;
        std::size_t steps_per_period = 1000;
        std::size_t samples_per_period = 40;
    } evolution;

    struct Ensemble {
        std::size_t n = 4000;
        std::uint64_t seed = 12345;
        std::size_t renorm_per_period = 10;
        double periods = 20.0;
    } ensemble;

    struct Analysis {
        double alpha = 0.5;
        std::vector<double> sweep_D = {1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2};
        std::vector<double> sweep_H0 = {0.0, 1.0, 2.0, 3.0, 4.0};
    } analysis;

    struct Portrait {
        std::size_t seeds_x = 32, seeds_p = 32;
        double x_min = -8.0, x_max = 8.0;
        double p_min = -10.0, p_max = 10.0;
        std::size_t n_periods = 200;
    } portrait;

    struct Output {
        std::string dir = "out";
        std::size_t snapshot_stride = 0; // 0 = no snapshots
    } output;
};

RunConfig default_config();

nlohmann::json to_json(const RunConfig& cfg);

/** Parses a JSON document into a config, starting from the defaults.
 * Throws ConfigError for unknown keys, wrong types, or any violated
 * precondition (sub-Heisenberg initial state, non-power-of-two grid,
 * negative D, ...). */
RunConfig config_from_json(const nlohmann::json& j);

/** Reads and parses a config file. */
RunConfig load_config(const std::string& path);

/** Applies one `section.key=value` override onto a JSON document. The
 * value is parsed as JSON when possible (numbers, bools, arrays) and falls
 * back to a string. Throws ConfigError for malformed keys or unknown
 * paths. */
void apply_override(nlohmann::json& j, const std::string& assignment);

/** All module preconditions, checked before any allocation. */
void validate(const RunConfig& cfg);

/** FNV-1a 64-bit hash of the canonical (sorted-key) JSON dump; this is the
 * hash embedded in every output file. */
std::uint64_t config_hash(const RunConfig& cfg);

/** Bridges the config to the analysis driver struct. */
RunSetup make_setup(const RunConfig& cfg);

} // namespace wdw

#endif
