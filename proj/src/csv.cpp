#include "wdw/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "wdw/errors.hpp"
#include "wdw/version.hpp"

namespace wdw {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

void finish(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

const char* status_name(TransitionStatus s) {
    switch (s) {
        case TransitionStatus::transition: return "transition";
        case TransitionStatus::no_transition: return "no_transition";
        case TransitionStatus::failed: return "failed";
    }
    return "unknown";
}

std::string sanitized(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

} // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string file_header(std::uint64_t config_hash) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# config_hash %016llx\n# code_version %s\n",
                  static_cast<unsigned long long>(config_hash), kVersion);
    return buf;
}

void write_entropy_csv(const std::string& path,
                       const std::vector<EntropySample>& rows,
                       std::uint64_t config_hash) {
    auto f = open_out(path);
    f << file_header(config_hash);
    f << "time,norm,purity,linear_entropy,rate_formula,ksq_p,"
         "sigma_xx,sigma_xp,sigma_pp,rate_identity_valid\n";
    for (const auto& r : rows) {
        f << format_full(r.time) << ',' << format_full(r.norm) << ','
          << format_full(r.purity) << ',' << format_full(r.linear_entropy)
          << ',' << format_full(r.rate_formula) << ',' << format_full(r.ksq_p)
          << ',' << format_full(r.sigma_xx) << ',' << format_full(r.sigma_xp)
          << ',' << format_full(r.sigma_pp) << ','
          << (r.rate_identity_valid ? 1 : 0) << '\n';
    }
    finish(f, path);
}

void write_portrait_csv(const std::string& path,
                        const std::vector<std::vector<PhasePoint>>& orbits,
                        std::uint64_t config_hash) {
    auto f = open_out(path);
    f << file_header(config_hash);
    f << "seed_id,n,x,p\n";
    for (std::size_t s = 0; s < orbits.size(); ++s)
        for (std::size_t n = 0; n < orbits[s].size(); ++n)
            f << s << ',' << n << ',' << format_full(orbits[s][n].x) << ','
              << format_full(orbits[s][n].p) << '\n';
    finish(f, path);
}

void write_lyapunov_csv(const std::string& path, const LyapunovSeries& series,
                        std::size_t n_ensemble, std::uint64_t config_hash) {
    if (n_ensemble == 0)
        throw std::invalid_argument("write_lyapunov_csv: empty ensemble");
    auto f = open_out(path);
    f << file_header(config_hash);
    f << "time,lambda_local,lambda_stderr\n";
    const double root_n = std::sqrt(static_cast<double>(n_ensemble));
    for (std::size_t i = 0; i < series.times.size(); ++i)
        f << format_full(series.times[i]) << ','
          << format_full(series.lambda_local[i]) << ','
          << format_full(series.lambda_spread[i] / root_n) << '\n';
    finish(f, path);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<TransitionFit>& fits,
                     std::uint64_t config_hash) {
    auto f = open_out(path);
    f << file_header(config_hash);
    f << "parameter,status,t_c,sigma_c,predicted_tc,plateau_rate,"
         "lambda_bar,alpha,note\n";
    for (const auto& t : fits)
        f << format_full(t.parameter) << ',' << status_name(t.status) << ','
          << format_full(t.t_c) << ',' << format_full(t.sigma_c) << ','
          << format_full(t.predicted_tc) << ',' << format_full(t.plateau_rate)
          << ',' << format_full(t.lambda_bar) << ',' << format_full(t.alpha)
          << ',' << sanitized(t.note) << '\n';
    finish(f, path);
}

void write_fit_json(const std::string& path, const std::string& mode,
                    const std::vector<TransitionFit>& fits,
                    const LinearFit& fit, std::uint64_t config_hash) {
    nlohmann::json j;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash));
    j["config_hash"] = hash;
    j["code_version"] = kVersion;
    j["mode"] = mode;
    j["fit"] = {{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r", fit.r}};
    j["points"] = nlohmann::json::array();
    for (const auto& t : fits)
        j["points"].push_back({{"parameter", t.parameter},
                               {"status", status_name(t.status)},
                               {"t_c", t.t_c},
                               {"sigma_c", t.sigma_c},
                               {"predicted_tc", t.predicted_tc},
                               {"plateau_rate", t.plateau_rate},
                               {"lambda_bar", t.lambda_bar},
                               {"alpha", t.alpha},
                               {"note", t.note}});
    auto f = open_out(path);
    f << j.dump(2) << '\n';
    finish(f, path);
}

void write_matrix_txt(const std::string& path, const RealField& field,
                      double time, std::uint64_t config_hash) {
    auto f = open_out(path);
    f << file_header(config_hash);
    const auto& g = field.grid;
    f << "# time " << format_full(time) << '\n';
    f << "# x_range " << format_full(g.x_min) << ' ' << format_full(g.x_max)
      << ' ' << g.n_x << '\n';
    f << "# p_range " << format_full(g.p_min) << ' ' << format_full(g.p_max)
      << ' ' << g.n_p << '\n';
    for (std::size_t i = 0; i < g.n_x; ++i) {
        for (std::size_t j = 0; j < g.n_p; ++j) {
            if (j) f << ' ';
            f << format_full(field.at(i, j));
        }
        f << '\n';
    }
    finish(f, path);
}

} // namespace wdw
