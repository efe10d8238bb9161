#ifndef WDW_ERRORS_HPP
#define WDW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wdw {

/** Raised when the evolver detects a stability violation (normalization
 * drift, boundary leakage) and cannot continue. */
class SolverAbort : public std::runtime_error {
public:
    explicit SolverAbort(const std::string& what) : std::runtime_error(what) {}
};

/** Raised for malformed or inconsistent run configuration. */
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/** Raised for file read/write failures. */
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wdw

#endif
