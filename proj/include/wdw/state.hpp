#ifndef WDW_STATE_HPP
#define WDW_STATE_HPP

#include "wdw/grid.hpp"
#include "wdw/model.hpp"

namespace wdw {

/** Gaussian phase-space state. Either give the widths directly or use
 * from_entropy, which fixes sigma_x*sigma_p = (hbar/2)*exp(H0) and splits
 * it by the requested aspect ratio sigma_p/sigma_x. */
struct GaussianSpec {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;

    static GaussianSpec from_widths(double x0, double p0, double sx, double sp);
    static GaussianSpec from_entropy(double x0, double p0, double H0,
                                     double aspect, double hbar);

    double product() const { return sigma_x * sigma_p; }
};

/** Wigner function W(x,p) with its time stamp and physical configuration. */
struct WignerField {
    RealField data;
    double time = 0.0;
    ModelConfig cfg;
    EnvironmentParams env;
};

/** Normalized Gaussian Wigner state on the grid.
 * Throws std::invalid_argument for sub-Heisenberg widths (needs
 * sigma_x*sigma_p >= hbar/2) or a state that places more than 1e-10 of
 * its mass within two cells of the grid boundary. */
WignerField gaussian_wigner(const GaussianSpec& spec,
                            const PhaseSpaceGrid& grid,
                            const ModelConfig& cfg,
                            const EnvironmentParams& env);

/** Pure-state superposition of two equal-width Gaussian lumps with a
 * common momentum center: the two direct terms plus the interference
 * fringe term cos((p - p0) * (x2 - x1) / hbar) at the midpoint. Both specs
 * must be minimum-uncertainty (pure) and share p0 and widths. */
WignerField superposition_wigner(const GaussianSpec& a, const GaussianSpec& b,
                                 const PhaseSpaceGrid& grid,
                                 const ModelConfig& cfg,
                                 const EnvironmentParams& env);

/** |net mass in the two outermost rows/columns| / |net mass overall|.
 * The signed band sum cancels the alternating spectral ringing that sharp
 * interior structure sprays box-wide, but registers transported lumps;
 * the evolver aborts when it grows past its tolerance. */
double boundary_mass_ratio(const RealField& f);

} // namespace wdw

#endif
