#pragma once

#include <stdexcept>
#include <string>

namespace starmesh {

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Caller misused an operation: arity mismatch, wrong rig, bad argument.
struct usage_error : error {
    using error::error;
};

/// A zero conductance was supplied where a nonzero one is required.
struct invalid_conductance : usage_error {
    using usage_error::usage_error;
};

/// Multiplicative inverse of the rig zero was requested.
struct division_by_zero : error {
    using error::error;
};

/// An invariant the library itself maintains was violated; indicates a bug.
struct internal_error : error {
    using error::error;
};

} // namespace starmesh
