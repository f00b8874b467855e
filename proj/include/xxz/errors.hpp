#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

// Bad input value (out-of-range L, lambda outside the Luttinger phase, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Vector/operator dimension mismatch.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// State not a member of the requested magnetization sector.
struct LookupError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Ground state not unique enough for an overlap to be well defined.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantity that is infinite at the requested point (F = 0, |lambda| >= 1).
struct DivergenceError : std::domain_error {
    using std::domain_error::domain_error;
};

// Not enough samples for a fit.
struct InsufficientDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace xxz
