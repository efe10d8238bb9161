#ifndef WDW_VERSION_HPP
#define WDW_VERSION_HPP

namespace wdw {

inline constexpr const char* kVersion = "0.1.0";

} // namespace wdw

#endif
