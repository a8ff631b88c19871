#pragma once

#include <stdexcept>
#include <string>

namespace lefkit {

/// Structural misuse of the library: malformed documents, shape mismatches,
/// broken schema invariants. Maps to CLI exit code 3.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical hypothesis required by an operation fails on the given
/// instance (wrong centers, hard Lefschetz failure, degenerate pairing, ...).
/// Maps to CLI exit code 2.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lefkit
