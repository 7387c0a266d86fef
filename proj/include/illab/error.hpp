#pragma once

#include <stdexcept>
#include <string>

namespace illab {

// Bad user input: parameters out of domain, malformed configs.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A computation could not deliver its contract (overflow, singular solve, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace illab
