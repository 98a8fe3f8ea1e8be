#pragma once

#include <stdexcept>
#include <string>

namespace pslab {

/// Malformed input: bad parameters, grid mismatch, schema violations.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical precondition failed (boundary contamination, non-state kernel, ...).
class NumericalGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a field does not decay before the grid boundary, so a periodic
/// convolution would fold divergent tails back into the domain.
class DivergenceSuspected : public NumericalGuardError {
public:
    using NumericalGuardError::NumericalGuardError;
};

} // namespace pslab
