#ifndef WDW_ANALYSIS_HPP
#define WDW_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wdw/observables.hpp"
#include "wdw/state.hpp"

namespace wdw {

/** Sampled entropy diagnostics of one evolution run, together with the
 * matched classical ensemble Lyapunov value lambda_bar. */
struct EntropyTimeSeries {
    std::vector<EntropySample> samples; // strictly increasing times
    double period = 0.0;                // driving period T
    double lambda_bar = 0.0;            // asymptotic ensemble exponent
    double grid_area = 0.0;             // phase-space area of the run's grid
    ModelConfig cfg;
    EnvironmentParams env;
};

struct SmoothedSeries {
    std::vector<double> times;
    std::vector<double> values;
};

enum class TransitionStatus { transition, no_transition, failed };

/** Transition between the diffusion-dominated and Lyapunov-dominated
 * entropy production regimes. */
struct TransitionFit {
    TransitionStatus status = TransitionStatus::failed;
    double parameter = 0.0;    // swept value (D or H0)
    double t_c = 0.0;          // detected transition time
    double sigma_c = 0.0;      // critical width sqrt(2 D / lambda_bar)
    double predicted_tc = 0.0; // lambda_bar^-1 log(sigma_p(0)/sigma_c)
    double plateau_rate = 0.0; // mean period-averaged rate past t_c
    double lambda_bar = 0.0;
    double alpha = 0.5;        // threshold fraction of lambda_bar
    std::string note;
};

/** Centered sliding mean of the rate over exactly one driving period
 * (trapezoid weights), which cancels the driving-frequency oscillation.
 * Needs at least two periods of uniformly sampled data. */
SmoothedSeries period_averaged_rate(const EntropyTimeSeries& series);

/** t_c = first time the period-averaged rate reaches alpha*lambda_bar and
 * stays above it for one full period. plateau_rate averages the smoothed
 * rate over [t_c + T, equilibration onset], where the onset is declared
 * once H comes within 0.2 of the grid ceiling log(area/(2 pi hbar)).
 * Returns status no_transition (with no fabricated t_c) if the threshold
 * is never reached. */
TransitionFit detect_transition(const EntropyTimeSeries& series,
                                double alpha = 0.5);

/** Everything needed to run one quantum evolution plus its matched
 * classical ensemble. */
struct RunSetup {
    ModelConfig cfg;
    EnvironmentParams env;
    double x_min = -8.0, x_max = 8.0, p_min = -16.0, p_max = 16.0;
    std::size_t n_x = 512, n_p = 512;
    GaussianSpec initial;
    double periods = 10.0;
    std::size_t steps_per_period = 1000;
    std::size_t samples_per_period = 40;
    std::size_t ensemble_n = 4000;
    std::uint64_t seed = 12345;
    std::size_t renorm_per_period = 10;
    double ensemble_periods = 20.0;
    double alpha = 0.5;
};

/** Ensemble-averaged Lyapunov exponent for the setup's initial state:
 * the mean of lambda_local(t) over the second half of the ensemble run. */
double ensemble_lambda(const RunSetup& setup);

/** Full evolution with entropy sampling; lambda_bar is computed from the
 * matched ensemble unless a precomputed value is supplied. */
EntropyTimeSeries run_entropy_series(const RunSetup& setup,
                                     const double* lambda_bar = nullptr);

/** One evolve + detect per diffusion value; the classical ensemble is
 * D-independent and shared. Per-point failures are recorded and the sweep
 * continues. jobs > 1 runs points concurrently (results keep parameter
 * order). */
std::vector<TransitionFit> sweep_diffusion(const RunSetup& base,
                                           const std::vector<double>& D_values,
                                           std::size_t jobs = 1);

/** One evolve + detect per initial entropy H0 (widths from H0 with the
 * base spec's aspect ratio); D stays at the base value. */
std::vector<TransitionFit> sweep_initial_entropy(
    const RunSetup& base, const std::vector<double>& H0_values,
    std::size_t jobs = 1);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r = 0.0; // Pearson correlation
};

/** Least-squares line through (xs, ys); needs >= 3 points and
 * non-degenerate xs. */
LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

} // namespace wdw

#endif
