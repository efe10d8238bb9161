#include "wdw/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "wdw/errors.hpp"

namespace wdw {

namespace {

constexpr char kMagic[8] = {'W', 'D', 'W', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void put(std::ofstream& f, const T& v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
void get(std::ifstream& f, T& v, const std::string& path) {
    f.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!f) throw IoError("checkpoint truncated: " + path);
}

} // namespace

void write_checkpoint(const std::string& path, const WignerField& state,
                      std::uint64_t config_hash) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open checkpoint for writing: " + path);

    f.write(kMagic, sizeof(kMagic));
    put(f, config_hash);
    put(f, state.time);

    const PhaseSpaceGrid& g = state.data.grid;
    put(f, g.x_min);
    put(f, g.x_max);
    put(f, g.p_min);
    put(f, g.p_max);
    put(f, static_cast<std::uint64_t>(g.n_x));
    put(f, static_cast<std::uint64_t>(g.n_p));

    put(f, state.cfg.B);
    put(f, state.cfg.C);
    put(f, state.cfg.E);
    put(f, state.cfg.omega);
    put(f, state.cfg.hbar);
    put(f, state.env.gamma);
    put(f, state.env.D);

    f.write(reinterpret_cast<const char*>(state.data.values.data()),
            static_cast<std::streamsize>(state.data.values.size() *
                                         sizeof(double)));
    if (!f) throw IoError("checkpoint write failed: " + path);
}

WignerField read_checkpoint(const std::string& path,
                            std::uint64_t* config_hash) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open checkpoint: " + path);

    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("not a checkpoint file: " + path);

    std::uint64_t hash = 0;
    double time = 0.0;
    get(f, hash, path);
    get(f, time, path);

    double x_min, x_max, p_min, p_max;
    std::uint64_t n_x, n_p;
    get(f, x_min, path);
    get(f, x_max, path);
    get(f, p_min, path);
    get(f, p_max, path);
    get(f, n_x, path);
    get(f, n_p, path);

    ModelConfig cfg;
    EnvironmentParams env;
    get(f, cfg.B, path);
    get(f, cfg.C, path);
    get(f, cfg.E, path);
    get(f, cfg.omega, path);
    get(f, cfg.hbar, path);
    get(f, env.gamma, path);
    get(f, env.D, path);

    PhaseSpaceGrid grid;
    try {
        grid = build_grid(x_min, x_max, p_min, p_max,
                          static_cast<std::size_t>(n_x),
                          static_cast<std::size_t>(n_p));
    } catch (const std::exception& e) {
        throw IoError("checkpoint has an invalid grid (" + path +
                      "): " + e.what());
    }

    WignerField state{RealField(grid), time, cfg, env};
    f.read(reinterpret_cast<char*>(state.data.values.data()),
           static_cast<std::streamsize>(state.data.values.size() *
                                        sizeof(double)));
    if (!f) throw IoError("checkpoint truncated: " + path);

    if (config_hash) *config_hash = hash;
    return state;
}

} // namespace wdw
