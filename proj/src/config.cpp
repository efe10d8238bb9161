#include "wdw/config.hpp"

#include <cmath>
#include <fstream>

#include "wdw/errors.hpp"

namespace wdw {

namespace {

bool power_of_two(std::size_t n) { return n >= 16 && (n & (n - 1)) == 0; }

void fail(const std::string& msg) { throw ConfigError(msg); }

double read_double(const nlohmann::json& v, const std::string& path) {
    if (!v.is_number()) fail("config value must be a number: " + path);
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail("config value must be finite: " + path);
    return d;
}

std::uint64_t read_unsigned(const nlohmann::json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
        const auto s = v.get<std::int64_t>();
        if (s < 0) fail("config value must be non-negative: " + path);
        return static_cast<std::uint64_t>(s);
    }
    fail("config value must be an integer: " + path);
    return 0;
}

std::vector<double> read_list(const nlohmann::json& v, const std::string& path) {
    if (!v.is_array()) fail("config value must be an array: " + path);
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(read_double(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Overlays user keys onto the default document, rejecting unknown keys so
// config typos cannot silently fall back to defaults.
void merge_into(nlohmann::json& base, const nlohmann::json& user,
                const std::string& prefix) {
    if (!user.is_object())
        fail("config section must be an object: " +
             (prefix.empty() ? std::string("<root>") : prefix));
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string path =
            prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) fail("unknown config key: " + path);
        if (base[it.key()].is_object())
            merge_into(base[it.key()], it.value(), path);
        else
            base[it.key()] = it.value();
    }
}

} // namespace

RunConfig default_config() { return RunConfig{}; }

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["model"] = {{"B", c.model.B},
                  {"C", c.model.C},
                  {"E", c.model.E},
                  {"omega", c.model.omega},
                  {"hbar", c.model.hbar}};
    j["env"] = {{"gamma", c.env.gamma}, {"D", c.env.D}};
    j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max},
                 {"p_min", c.grid.p_min}, {"p_max", c.grid.p_max},
                 {"n_x", c.grid.n_x},     {"n_p", c.grid.n_p}};
    j["initial"] = {{"x0", c.initial.x0},
                    {"p0", c.initial.p0},
                    {"H0", c.initial.H0},
                    {"aspect", c.initial.aspect}};
    j["evolution"] = {{"periods", c.evolution.periods},
                      {"steps_per_period", c.evolution.steps_per_period},
                      {"samples_per_period", c.evolution.samples_per_period}};
    j["ensemble"] = {{"n", c.ensemble.n},
                     {"seed", c.ensemble.seed},
                     {"renorm_per_period", c.ensemble.renorm_per_period},
                     {"periods", c.ensemble.periods}};
    j["analysis"] = {{"alpha", c.analysis.alpha},
                     {"sweep_D", c.analysis.sweep_D},
                     {"sweep_H0", c.analysis.sweep_H0}};
    j["portrait"] = {{"seeds_x", c.portrait.seeds_x},
                     {"seeds_p", c.portrait.seeds_p},
                     {"x_min", c.portrait.x_min},
                     {"x_max", c.portrait.x_max},
                     {"p_min", c.portrait.p_min},
                     {"p_max", c.portrait.p_max},
                     {"n_periods", c.portrait.n_periods}};
    j["output"] = {{"dir", c.output.dir},
                   {"snapshot_stride", c.output.snapshot_stride}};
    return j;
}

RunConfig config_from_json(const nlohmann::json& user) {
    nlohmann::json j = to_json(default_config());
    merge_into(j, user, "");

    RunConfig c;
    c.model.B = read_double(j["model"]["B"], "model.B");
    c.model.C = read_double(j["model"]["C"], "model.C");
    c.model.E = read_double(j["model"]["E"], "model.E");
    c.model.omega = read_double(j["model"]["omega"], "model.omega");
    c.model.hbar = read_double(j["model"]["hbar"], "model.hbar");
    c.env.gamma = read_double(j["env"]["gamma"], "env.gamma");
    c.env.D = read_double(j["env"]["D"], "env.D");

    c.grid.x_min = read_double(j["grid"]["x_min"], "grid.x_min");
    c.grid.x_max = read_double(j["grid"]["x_max"], "grid.x_max");
    c.grid.p_min = read_double(j["grid"]["p_min"], "grid.p_min");
    c.grid.p_max = read_double(j["grid"]["p_max"], "grid.p_max");
    c.grid.n_x = read_unsigned(j["grid"]["n_x"], "grid.n_x");
    c.grid.n_p = read_unsigned(j["grid"]["n_p"], "grid.n_p");

    c.initial.x0 = read_double(j["initial"]["x0"], "initial.x0");
    c.initial.p0 = read_double(j["initial"]["p0"], "initial.p0");
    c.initial.H0 = read_double(j["initial"]["H0"], "initial.H0");
    c.initial.aspect = read_double(j["initial"]["aspect"], "initial.aspect");

    c.evolution.periods = read_double(j["evolution"]["periods"], "evolution.periods");
    c.evolution.steps_per_period =
        read_unsigned(j["evolution"]["steps_per_period"], "evolution.steps_per_period");
    c.evolution.samples_per_period =
        read_unsigned(j["evolution"]["samples_per_period"], "evolution.samples_per_period");

    c.ensemble.n = read_unsigned(j["ensemble"]["n"], "ensemble.n");
    c.ensemble.seed = read_unsigned(j["ensemble"]["seed"], "ensemble.seed");
    c.ensemble.renorm_per_period =
        read_unsigned(j["ensemble"]["renorm_per_period"], "ensemble.renorm_per_period");
    c.ensemble.periods = read_double(j["ensemble"]["periods"], "ensemble.periods");

    c.analysis.alpha = read_double(j["analysis"]["alpha"], "analysis.alpha");
    c.analysis.sweep_D = read_list(j["analysis"]["sweep_D"], "analysis.sweep_D");
    c.analysis.sweep_H0 = read_list(j["analysis"]["sweep_H0"], "analysis.sweep_H0");

    c.portrait.seeds_x = read_unsigned(j["portrait"]["seeds_x"], "portrait.seeds_x");
    c.portrait.seeds_p = read_unsigned(j["portrait"]["seeds_p"], "portrait.seeds_p");
    c.portrait.x_min = read_double(j["portrait"]["x_min"], "portrait.x_min");
    c.portrait.x_max = read_double(j["portrait"]["x_max"], "portrait.x_max");
    c.portrait.p_min = read_double(j["portrait"]["p_min"], "portrait.p_min");
    c.portrait.p_max = read_double(j["portrait"]["p_max"], "portrait.p_max");
    c.portrait.n_periods = read_unsigned(j["portrait"]["n_periods"], "portrait.n_periods");

    if (!j["output"]["dir"].is_string())
        fail("config value must be a string: output.dir");
    c.output.dir = j["output"]["dir"].get<std::string>();
    c.output.snapshot_stride =
        read_unsigned(j["output"]["snapshot_stride"], "output.snapshot_stride");

    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        fail("override must look like section.key=value: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    // Navigate the dot path against the full default document so unknown
    // paths are rejected even when the base config omits the section.
    nlohmann::json* node = &j;
    std::size_t start = 0;
    std::vector<std::string> parts;
    while (start <= key.size()) {
        const auto dot = key.find('.', start);
        const std::string part =
            key.substr(start, dot == std::string::npos ? dot : dot - start);
        if (part.empty()) fail("malformed override key: " + key);
        parts.push_back(part);
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    const nlohmann::json defaults = to_json(default_config());
    const nlohmann::json* probe = &defaults;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!probe->is_object() || !probe->contains(parts[i]))
            fail("unknown config key: " + key);
        probe = &probe->at(parts[i]);
        if (!node->is_object()) fail("config path is not a section: " + key);
        node = &(*node)[parts[i]];
        if (i + 1 < parts.size() && !node->is_object()) {
            if (node->is_null())
                *node = nlohmann::json::object(); // section absent in base
            else
                fail("config path is not a section: " + key);
        }
    }
    if (probe->is_object()) fail("cannot assign to a whole section: " + key);

    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    if (parsed.is_discarded() || parsed.is_object())
        parsed = value; // keep plain strings (e.g. output.dir=run1)
    *node = parsed;
}

void validate(const RunConfig& c) {
    if (!(c.model.hbar > 0)) fail("model.hbar must be positive");
    if (!(c.model.omega > 0)) fail("model.omega must be positive");
    if (!(c.model.B > 0)) fail("model.B must be positive (double well)");
    if (!(c.model.C > 0)) fail("model.C must be positive (double well)");
    if (c.model.E < 0) fail("model.E must be non-negative");
    if (c.env.gamma < 0) fail("env.gamma must be non-negative");
    if (c.env.D < 0) fail("env.D must be non-negative");

    if (!(c.grid.x_min < c.grid.x_max) || !(c.grid.p_min < c.grid.p_max))
        fail("grid bounds must be ordered");
    if (!power_of_two(c.grid.n_x) || !power_of_two(c.grid.n_p))
        fail("grid.n_x and grid.n_p must be powers of two >= 16");

    if (c.initial.H0 < 0)
        fail("initial.H0 must be non-negative (sub-Heisenberg state)");
    if (!(c.initial.aspect > 0)) fail("initial.aspect must be positive");

    if (!(c.evolution.periods > 0)) fail("evolution.periods must be positive");
    if (c.evolution.steps_per_period < 100)
        fail("evolution.steps_per_period must be at least 100");
    if (c.evolution.samples_per_period < 2 ||
        c.evolution.samples_per_period % 2 != 0)
        fail("evolution.samples_per_period must be even and >= 2");
    if (c.evolution.steps_per_period % c.evolution.samples_per_period != 0)
        fail("evolution.samples_per_period must divide steps_per_period");

    if (c.ensemble.n < 100) fail("ensemble.n must be at least 100");
    if (c.ensemble.renorm_per_period < 1)
        fail("ensemble.renorm_per_period must be at least 1");
    if (!(c.ensemble.periods > 0)) fail("ensemble.periods must be positive");

    if (!(c.analysis.alpha > 0) || c.analysis.alpha > 1)
        fail("analysis.alpha must lie in (0, 1]");
    for (double d : c.analysis.sweep_D)
        if (d < 0) fail("analysis.sweep_D entries must be non-negative");
    for (double h : c.analysis.sweep_H0)
        if (h < 0) fail("analysis.sweep_H0 entries must be non-negative");

    if (c.portrait.seeds_x == 0 || c.portrait.seeds_p == 0)
        fail("portrait seed counts must be positive");
    if (!(c.portrait.x_min < c.portrait.x_max) ||
        !(c.portrait.p_min < c.portrait.p_max))
        fail("portrait bounds must be ordered");

    if (c.output.dir.empty()) fail("output.dir must not be empty");
}

std::uint64_t config_hash(const RunConfig& c) {
    const std::string dump = to_json(c).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : dump) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

RunSetup make_setup(const RunConfig& c) {
    RunSetup s;
    s.cfg = c.model;
    s.env = c.env;
    s.x_min = c.grid.x_min;
    s.x_max = c.grid.x_max;
    s.p_min = c.grid.p_min;
    s.p_max = c.grid.p_max;
    s.n_x = c.grid.n_x;
    s.n_p = c.grid.n_p;
    s.initial = GaussianSpec::from_entropy(c.initial.x0, c.initial.p0,
                                           c.initial.H0, c.initial.aspect,
                                           c.model.hbar);
    s.periods = c.evolution.periods;
    s.steps_per_period = c.evolution.steps_per_period;
    s.samples_per_period = c.evolution.samples_per_period;
    s.ensemble_n = c.ensemble.n;
    s.seed = c.ensemble.seed;
    s.renorm_per_period = c.ensemble.renorm_per_period;
    s.ensemble_periods = c.ensemble.periods;
    s.alpha = c.analysis.alpha;
    return s;
}

} // namespace wdw
