#include "wdw/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wdw {

namespace {

struct Deriv4 {
    double dx, dp, dtx, dtp;
};

// Flow plus tangent flow evaluated together.
inline Deriv4 rhs(double t, double x, double p, double tx, double tp,
                  const ModelConfig& cfg) {
    return {p, force(x, t, cfg), tp, (2.0 * cfg.B - 6.0 * cfg.C * x * x) * tx};
}

// One RK4 step of (x, p, tangent).
inline void rk4_step(double& t, double& x, double& p, double& tx, double& tp,
                     double h, const ModelConfig& cfg) {
    const Deriv4 k1 = rhs(t, x, p, tx, tp, cfg);
    const Deriv4 k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1.dx,
                          p + 0.5 * h * k1.dp, tx + 0.5 * h * k1.dtx,
                          tp + 0.5 * h * k1.dtp, cfg);
    const Deriv4 k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2.dx,
                          p + 0.5 * h * k2.dp, tx + 0.5 * h * k2.dtx,
                          tp + 0.5 * h * k2.dtp, cfg);
    const Deriv4 k4 = rhs(t + h, x + h * k3.dx, p + h * k3.dp,
                          tx + h * k3.dtx, tp + h * k3.dtp, cfg);
    x += h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    p += h / 6.0 * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    tx += h / 6.0 * (k1.dtx + 2.0 * k2.dtx + 2.0 * k3.dtx + k4.dtx);
    tp += h / 6.0 * (k1.dtp + 2.0 * k2.dtp + 2.0 * k3.dtp + k4.dtp);
    t += h;
}

double clamp_step(double step_hint, const ModelConfig& cfg) {
    const double cap = cfg.period() / 1000.0;
    if (step_hint <= 0.0 || step_hint > cap) return cap;
    return step_hint;
}

// Integrate a span with n uniform RK4 steps covering it exactly.
void advance(double& t, double& x, double& p, double& tx, double& tp,
             double span, double h_target, const ModelConfig& cfg,
             double escape_bound) {
    if (span <= 0.0) return;
    const auto n = static_cast<std::size_t>(std::ceil(span / h_target - 1e-12));
    const double h = span / static_cast<double>(n ? n : 1);
    for (std::size_t s = 0; s < (n ? n : 1); ++s) {
        rk4_step(t, x, p, tx, tp, h, cfg);
        if (std::abs(x) > escape_bound || std::abs(p) > escape_bound)
            throw std::runtime_error("trajectory escaped the configured bound");
    }
}

// Deterministic standard normal pairs (Box-Muller over mt19937_64), pinned
// here so ensembles are reproducible across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
    double next() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return (static_cast<double>(rng_() >> 11)) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    bool have_ = false;
    double spare_ = 0.0;
};

} // namespace

PhasePoint integrate_trajectory(PhasePoint z0, double t0, double t1,
                                const ModelConfig& cfg, double step_hint,
                                double escape_bound) {
    if (!std::isfinite(z0.x) || !std::isfinite(z0.p))
        throw std::invalid_argument("integrate_trajectory: non-finite start");
    double t = t0, x = z0.x, p = z0.p, tx = 1.0, tp = 0.0;
    advance(t, x, p, tx, tp, t1 - t0, clamp_step(step_hint, cfg), cfg,
            escape_bound);
    return {x, p};
}

std::vector<std::vector<PhasePoint>> stroboscopic_portrait(
    const std::vector<PhasePoint>& seeds, std::size_t n_periods,
    const ModelConfig& cfg, double step_hint) {
    const double T = cfg.period();
    const double h = clamp_step(step_hint, cfg);
    std::vector<std::vector<PhasePoint>> out(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        double t = 0.0, x = seeds[s].x, p = seeds[s].p, tx = 1.0, tp = 0.0;
        out[s].push_back({x, p});
        for (std::size_t n = 0; n < n_periods; ++n) {
            advance(t, x, p, tx, tp, T, h, cfg, 1e6);
            out[s].push_back({x, p});
        }
    }
    return out;
}

TrajectoryEnsemble sample_ensemble(const GaussianSpec& spec, std::size_t n,
                                   std::uint64_t seed,
                                   const ModelConfig& cfg) {
    if (n < 100)
        throw std::invalid_argument("sample_ensemble: need n >= 100");
    TrajectoryEnsemble ens;
    ens.cfg = cfg;
    ens.seed = seed;
    ens.points.resize(n);
    ens.tangents.assign(n, {1.0, 0.0});
    ens.log_growth.assign(n, 0.0);
    ens.weights.assign(n, 1.0 / static_cast<double>(n));
    GaussianStream g(seed);
    for (std::size_t i = 0; i < n; ++i) {
        ens.points[i].x = spec.x0 + spec.sigma_x * g.next();
        ens.points[i].p = spec.p0 + spec.sigma_p * g.next();
    }
    return ens;
}

LyapunovSeries local_lyapunov(TrajectoryEnsemble& ens, double t_final,
                              double renorm_interval, double step_hint) {
    if (!(renorm_interval > 0.0))
        throw std::invalid_argument("local_lyapunov: bad renorm interval");
    if (!(t_final > ens.t))
        throw std::invalid_argument("local_lyapunov: t_final must exceed t");
    const double h = clamp_step(step_hint, ens.cfg);
    const auto n_iv = static_cast<std::size_t>(
        std::llround((t_final - ens.t) / renorm_interval));
    if (n_iv == 0)
        throw std::invalid_argument("local_lyapunov: interval too long");

    LyapunovSeries series;
    const std::size_t n = ens.points.size();
    for (std::size_t iv = 0; iv < n_iv; ++iv) {
        for (std::size_t i = 0; i < n; ++i) {
            double t = ens.t;
            auto& z = ens.points[i];
            auto& v = ens.tangents[i];
            advance(t, z.x, z.p, v.x, v.p, renorm_interval, h, ens.cfg, 1e6);
            const double r = std::hypot(v.x, v.p);
            if (!(r > 0.0))
                throw std::runtime_error("local_lyapunov: degenerate tangent");
            ens.log_growth[i] += std::log(r);
            v.x /= r;
            v.p /= r;
        }
        ens.t += renorm_interval;
        const double elapsed = ens.t;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += ens.weights[i] * ens.log_growth[i];
        mean /= elapsed;
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = ens.log_growth[i] / elapsed - mean;
            var += ens.weights[i] * d * d;
        }
        series.times.push_back(ens.t);
        series.lambda_local.push_back(mean);
        series.lambda_spread.push_back(std::sqrt(var));
    }
    return series;
}

PhasePoint stroboscopic_map(PhasePoint z, const ModelConfig& cfg,
                            double jac[4], double step_hint) {
    const double T = cfg.period();
    const double h = clamp_step(step_hint, cfg);
    if (!jac) {
        double t = 0.0, tx = 1.0, tp = 0.0;
        advance(t, z.x, z.p, tx, tp, T, h, cfg, 1e6);
        return z;
    }
    // Propagate the two coordinate tangent vectors for the full Jacobian.
    double t1 = 0.0, x1 = z.x, p1 = z.p, a = 1.0, c = 0.0;
    advance(t1, x1, p1, a, c, T, h, cfg, 1e6);
    double t2 = 0.0, x2 = z.x, p2 = z.p, b = 0.0, d = 1.0;
    advance(t2, x2, p2, b, d, T, h, cfg, 1e6);
    jac[0] = a; // d x' / d x
    jac[1] = b; // d x' / d p
    jac[2] = c; // d p' / d x
    jac[3] = d; // d p' / d p
    return {x1, p1};
}

PhasePoint find_periodic_point(PhasePoint guess, const ModelConfig& cfg,
                               std::size_t max_iter, double tol) {
    PhasePoint z = guess;
    for (std::size_t it = 0; it < max_iter; ++it) {
        double J[4];
        const PhasePoint m = stroboscopic_map(z, cfg, J);
        const double rx = m.x - z.x, rp = m.p - z.p;
        if (std::hypot(rx, rp) < tol) return z;
        // Solve (J - I) delta = residual.
        const double a = J[0] - 1.0, b = J[1], c = J[2], d = J[3] - 1.0;
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-14)
            throw std::runtime_error("find_periodic_point: singular Jacobian");
        z.x -= (d * rx - b * rp) / det;
        z.p -= (-c * rx + a * rp) / det;
    }
    throw std::runtime_error("find_periodic_point: no convergence");
}

} // namespace wdw
