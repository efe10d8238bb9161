#ifndef WDW_OBSERVABLES_HPP
#define WDW_OBSERVABLES_HPP

#include <vector>

#include "wdw/state.hpp"

namespace wdw {

/** All scalar diagnostics of a WignerField at one instant. */
struct EntropySample {
    double time = 0.0;
    double norm = 0.0;
    double purity = 0.0;
    double linear_entropy = 0.0;
    double rate_formula = 0.0;   // 2 D <(dW/dp)^2> / <W^2>; 0 when D = 0
    double ksq_p = 0.0;          // <(dW/dp)^2> / <W^2>
    double sigma_xx = 0.0;
    double sigma_xp = 0.0;
    double sigma_pp = 0.0;
    bool rate_identity_valid = true; // false when gamma != 0
};

struct Covariance {
    double mean_x = 0.0, mean_p = 0.0;
    double xx = 0.0, xp = 0.0, pp = 0.0;
};

double norm(const WignerField& w);

/** Tr(rho^2) = 2*pi*hbar * sum W^2 dx dp. */
double purity(const WignerField& w);

/** -log Tr(rho^2). */
double linear_entropy(const WignerField& w);

/** Entropy production rate 2 D <(dW/dp)^2> / <W^2> with the derivative
 * taken spectrally. Exact rate identity for gamma = 0; with gamma != 0 the
 * value is still reported but flagged through EntropySample. Returns 0
 * when D = 0. Throws on a vanishing <W^2>. */
double entropy_rate_formula(const WignerField& w);

/** Mean square wave-number of the momentum fringes,
 * <(dW/dp)^2> / <W^2>; defined for any D. */
double fringe_mean_sq_wavenumber(const WignerField& w);

Covariance covariance(const WignerField& w);

/** Axis sums: position marginal (size n_x) and momentum marginal
 * (size n_p), each integrating to the state norm. */
void marginals(const WignerField& w, std::vector<double>& out_x,
               std::vector<double>& out_p);

/** One-call bundle used by the evolution observers. */
EntropySample measure(const WignerField& w);

/** Spectral power of W per momentum wave-number bin, summed over x
 * columns: out[j] ~ sum_x |What(x, lam_j)|^2. Used by the fringe
 * decoherence diagnostics. */
std::vector<double> momentum_spectrum_power(const WignerField& w);

/** Square root of the spectral power in the band lam in [lo, hi] (absolute
 * values of the wave-number). */
double fringe_band_amplitude(const WignerField& w, double lo, double hi);

} // namespace wdw

#endif
