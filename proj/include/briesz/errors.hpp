#pragma once

#include <stdexcept>
#include <string>

namespace briesz {

/// Invalid experiment or file configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical guard refused to proceed: Nyquist violation, inadmissible
/// exponents, grid-size limits (CLI exit code 3).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace briesz
