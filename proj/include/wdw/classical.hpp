#ifndef WDW_CLASSICAL_HPP
#define WDW_CLASSICAL_HPP

#include <cstdint>
#include <vector>

#include "wdw/model.hpp"
#include "wdw/state.hpp"

namespace wdw {

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

/** Classical ensemble with per-trajectory tangent vectors and accumulated
 * log stretches for the finite-time Lyapunov exponent. Weights sum to 1;
 * sampling is from the initial Wigner Gaussian itself, so the importance
 * weights are uniform. */
struct TrajectoryEnsemble {
    std::vector<PhasePoint> points;
    std::vector<PhasePoint> tangents;   // unit norm after renormalization
    std::vector<double> log_growth;
    std::vector<double> weights;
    double t = 0.0;
    ModelConfig cfg;
    std::uint64_t seed = 0;
};

/** Ensemble-averaged finite-time Lyapunov exponent lambda(t) with the
 * weighted spread of the per-trajectory exponents. */
struct LyapunovSeries {
    std::vector<double> times;
    std::vector<double> lambda_local;
    std::vector<double> lambda_spread; // weighted std dev across trajectories
};

/** Integrates dx/dt = p, dp/dt = 2Bx - 2Cx^3 - E cos(omega t) with
 * fixed-step classical RK4. step_hint is clamped to at most T/1000.
 * Throws on trajectory escape past |x|, |p| > escape_bound. */
PhasePoint integrate_trajectory(PhasePoint z0, double t0, double t1,
                                const ModelConfig& cfg,
                                double step_hint = 0.0,
                                double escape_bound = 1e6);

/** Section points of each seed sampled at t = n T, n = 0..n_periods.
 * Output is seed-major: result[s] holds n_periods + 1 points. */
std::vector<std::vector<PhasePoint>> stroboscopic_portrait(
    const std::vector<PhasePoint>& seeds, std::size_t n_periods,
    const ModelConfig& cfg, double step_hint = 0.0);

/** Deterministic Gaussian sample of n points from the spec's Wigner
 * distribution; tangents start aligned along x. Requires n >= 100. */
TrajectoryEnsemble sample_ensemble(const GaussianSpec& spec, std::size_t n,
                                   std::uint64_t seed,
                                   const ModelConfig& cfg);

/** Co-integrates the tangent flow d(dx)/dt = dp,
 * d(dp)/dt = (2B - 6Cx^2) dx, renormalizing every renorm_interval and
 * accumulating log stretches. lambda_local(t) = sum_i w_i log_growth_i / t,
 * recorded at every renormalization time. */
LyapunovSeries local_lyapunov(TrajectoryEnsemble& ensemble, double t_final,
                              double renorm_interval, double step_hint = 0.0);

/** Newton refinement of a period-1 fixed point of the stroboscopic map,
 * using the tangent-propagated monodromy matrix for the Jacobian. */
PhasePoint find_periodic_point(PhasePoint guess, const ModelConfig& cfg,
                               std::size_t max_iter = 30, double tol = 1e-12);

/** One application of the stroboscopic map (time T flow) together with its
 * 2x2 Jacobian obtained by integrating two tangent vectors. */
PhasePoint stroboscopic_map(PhasePoint z, const ModelConfig& cfg,
                            double jac[4] = nullptr, double step_hint = 0.0);

} // namespace wdw

#endif
