#ifndef WDW_CSV_HPP
#define WDW_CSV_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wdw/analysis.hpp"
#include "wdw/classical.hpp"
#include "wdw/observables.hpp"

namespace wdw {

/** Shortest round-trip-exact decimal rendering (17 significant digits). */
std::string format_full(double v);

/** Two header comment lines shared by every output file:
 *   # config_hash <16 hex digits>
 *   # code_version <semver>
 */
std::string file_header(std::uint64_t config_hash);

void write_entropy_csv(const std::string& path,
                       const std::vector<EntropySample>& rows,
                       std::uint64_t config_hash);

/** Rows (seed_id, n, x, p): one row per stroboscopic section point. */
void write_portrait_csv(const std::string& path,
                        const std::vector<std::vector<PhasePoint>>& orbits,
                        std::uint64_t config_hash);

/** Rows (time, lambda_local, lambda_stderr); the standard error is the
 * ensemble spread divided by sqrt(n_ensemble). */
void write_lyapunov_csv(const std::string& path, const LyapunovSeries& series,
                        std::size_t n_ensemble, std::uint64_t config_hash);

void write_sweep_csv(const std::string& path,
                     const std::vector<TransitionFit>& fits,
                     std::uint64_t config_hash);

/** Regression summary for a sweep, as JSON: swept mode, per-point fits,
 * and the linear fit of the plateau rate against the sweep abscissa. */
void write_fit_json(const std::string& path, const std::string& mode,
                    const std::vector<TransitionFit>& fits,
                    const LinearFit& fit, std::uint64_t config_hash);

/** Plain-text matrix export of a field for plotting: header comments with
 * the grid bounds, then n_x lines of n_p samples. */
void write_matrix_txt(const std::string& path, const RealField& field,
                      double time, std::uint64_t config_hash);

} // namespace wdw

#endif
