#ifndef WDW_MODEL_HPP
#define WDW_MODEL_HPP

#include <cmath>

namespace wdw {

/** Driven quartic double well, V(x,t) = -B x^2 + C x^4/2 + E x cos(omega t),
 * with H = p^2/2 + V (unit mass).
 *
 * The double-well presets have B, C > 0; B may be negative and C zero to
 * realize harmonic / inverted-harmonic configurations used by the test
 * oracles, so no sign constraint is enforced here. The CLI validates the
 * user-facing configuration separately. */
struct ModelConfig {
    double B = 10.0;      // quadratic coefficient
    double C = 0.5;       // quartic coefficient
    double E = 1.0;       // driving amplitude
    double omega = 5.35;  // driving angular frequency
    double hbar = 0.1;    // effective Planck constant

    double period() const { return 2.0 * M_PI / omega; }
};

/** Ohmic high-temperature environment: relaxation rate gamma and momentum
 * diffusion coefficient D. The regime of interest is gamma -> 0 with D
 * held constant. */
struct EnvironmentParams {
    double gamma = 0.0;
    double D = 0.0;
};

inline double potential(double x, double t, const ModelConfig& cfg) {
    const double x2 = x * x;
    return -cfg.B * x2 + 0.5 * cfg.C * x2 * x2 +
           cfg.E * x * std::cos(cfg.omega * t);
}

/** -dV/dx = 2Bx - 2Cx^3 - E cos(omega t). */
inline double force(double x, double t, const ModelConfig& cfg) {
    return 2.0 * cfg.B * x - 2.0 * cfg.C * x * x * x -
           cfg.E * std::cos(cfg.omega * t);
}

/** d^3V/dx^3 = 12 C x; higher derivatives vanish for the quartic well. */
inline double potential_third_derivative(double x, const ModelConfig& cfg) {
    return 12.0 * cfg.C * x;
}

/** Phase [V(x + hbar*lam/2, t) - V(x - hbar*lam/2, t)] / hbar driving the
 * quantum Liouville flow in the p-dual domain. For the quartic well the
 * finite difference is exact and equals
 *   lam * dV/dx + (hbar^2 lam^3 / 24) * d^3V/dx^3,
 * i.e. the classical force term plus the single surviving quantum
 * correction. Odd in lam, which keeps W real under the evolver. */
inline double moyal_phase(double x, double lam, double t,
                          const ModelConfig& cfg) {
    const double h = 0.5 * cfg.hbar * lam;
    return (potential(x + h, t, cfg) - potential(x - h, t, cfg)) / cfg.hbar;
}

} // namespace wdw

#endif
