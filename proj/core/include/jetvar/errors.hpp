#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

/// Base class of all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression or model text failed to parse. Carries a position into the source.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

/// Values belonging to different bundles (or base dimensions) were combined.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Division by an expression whose canonical form is zero.
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by an expression that normalizes to zero") {}
};

/// Density is not an exact total divergence (its Euler-Lagrange form is nonzero).
struct NotExact : Error {
    using Error::Error;
};

/// Input lies outside the fragment an algorithm supports.
struct UnsupportedFragment : Error {
    using Error::Error;
};

/// Operation requires a vector field projected onto the base.
struct NotProjectable : Error {
    using Error::Error;
};

/// A built-in cross-check failed; indicates a bug, not a user error.
struct InternalInconsistency : Error {
    using Error::Error;
};

} // namespace jetvar
