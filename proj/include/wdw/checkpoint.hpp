#ifndef WDW_CHECKPOINT_HPP
#define WDW_CHECKPOINT_HPP

#include <cstdint>
#include <string>

#include "wdw/state.hpp"

namespace wdw {

/** Binary snapshot layout (native endianness, fixed field order):
 *   bytes 0..7   magic "WDWCKPT1"
 *   u64          config hash
 *   f64          time
 *   f64 x4       x_min, x_max, p_min, p_max
 *   u64 x2       n_x, n_p
 *   f64 x5       B, C, E, omega, hbar
 *   f64 x2       gamma, D
 *   f64 x n_x*n_p  W row-major (x outer, p inner)
 */
void write_checkpoint(const std::string& path, const WignerField& state,
                      std::uint64_t config_hash);

/** Reads a snapshot back; throws IoError on a missing file, bad magic, or
 * truncated payload. The stored config hash is returned through the
 * out-parameter when given. */
WignerField read_checkpoint(const std::string& path,
                            std::uint64_t* config_hash = nullptr);

} // namespace wdw

#endif
