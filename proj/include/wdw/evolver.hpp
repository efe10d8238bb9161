#ifndef WDW_EVOLVER_HPP
#define WDW_EVOLVER_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "wdw/spectral.hpp"
#include "wdw/state.hpp"

namespace wdw {

/** Split-operator propagator for the Wigner master equation.
 *
 * One step t -> t+dt is the symmetric composition
 *   (a) half kinetic sub-step: multiply by exp(-i k_x p dt/2) in the
 *       x-dual domain (exact free streaming),
 *   (b) full potential sub-step: multiply by exp(+i phi dt) in the p-dual
 *       domain, with phi = moyal_phase(x, lam, t + dt/2); the phase is the
 *       exact potential finite difference, so the classical force term and
 *       the quantum correction are both exact for the quartic well,
 *   (c) diffusion sub-step: multiply by exp(-D lam^2 dt), fused with (b),
 *   (d) friction sub-step when gamma > 0: W <- e^{2 gamma dt}
 *       W(x, p e^{2 gamma dt}) by band-limited resampling along p,
 *   (e) half kinetic sub-step.
 *
 * All sub-kernels are exact exponentials; the only time-stepping error is
 * the second-order Strang splitting error. Unit-modulus kernels make norm
 * and (for D = 0) purity conservation exact up to round-off, and the
 * diffusion factor makes purity monotonically non-increasing for D > 0.
 *
 * The kernels are precomputed for a fixed dt; the drive phase factor
 * exp(i lam E cos(omega t_mid) dt) is the only per-step rebuild. Inside
 * evolve(), adjacent half kinetic sub-steps of consecutive steps are fused
 * into one full kinetic sub-step between resync points, which removes two
 * x-transforms per step and is exact up to round-off. */
class WignerEvolver {
public:
    WignerEvolver(const PhaseSpaceGrid& grid, const ModelConfig& cfg,
                  const EnvironmentParams& env, double dt);

    double dt() const { return dt_; }

    /** Advances the state by exactly one step (no cross-step fusion). */
    void step(WignerField& state);

    using Observer = std::function<void(const WignerField&)>;

    /** Advances to t_final (must be time + n*dt within round-off), calling
     * the observer after every sample_stride steps. Checks normalization,
     * boundary mass and the imaginary residue at every resync point and
     * throws SolverAbort on violation. */
    void evolve(WignerField& state, double t_final,
                std::size_t sample_stride, const Observer& obs = nullptr);

    struct Health {
        double norm_drift = 0.0;
        double boundary_ratio = 0.0;
        double imag_residue = 0.0; // relative to max |W|
    };
    const Health& last_health() const { return health_; }

private:
    ModelConfig cfg_;
    EnvironmentParams env_;
    double dt_;
    SpectralEngine engine_;
    std::vector<std::complex<double>> kin_half_;  // exp(-i k p dt/2)
    std::vector<std::complex<double>> kin_full_;  // exp(-i k p dt)
    std::vector<std::complex<double>> pot_;       // exp(i phi_static dt - D lam^2 dt)
    std::vector<std::complex<double>> drive_;     // per-step lam phase factor

    void build_kernels();
    void apply_kinetic(const std::vector<std::complex<double>>& kernel);
    void apply_potential(double t_mid);
    void apply_friction();
    void run_span(WignerField& state, std::size_t steps);
    void resync(WignerField& state, double t_now);
    void check_health(const WignerField& state, double t_now);

    Health health_;
};

/** Single fixed step as a pure operation (supports negative dt; used by
 * the reversibility tests). */
WignerField step(const WignerField& state, double dt);

/** Convenience wrapper: build an evolver for the state's configuration and
 * run it to t_final. */
WignerEvolver::Health evolve(WignerField& state, double t_final, double dt,
                             std::size_t sample_stride,
                             const WignerEvolver::Observer& obs = nullptr);

} // namespace wdw

#endif
