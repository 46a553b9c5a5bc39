#pragma once

#include <stdexcept>

namespace qswitch {

/// A physical invariant failed: non-Hermitian state, broken CPTP
/// completeness, out-of-range parameter, and the like.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical routine could not deliver its accuracy contract
/// (undefined scalar function on an eigenvalue, NaN propagation, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed scenario configuration input. Messages name the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qswitch
