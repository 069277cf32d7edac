#pragma once

#include <stdexcept>
#include <string>

namespace antoine {

/// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition or invariant.
struct InvalidParams : Error {
    using Error::Error;
};

/// Iterative refinement failed to reach the requested tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

/// A search terminated without a witness.
struct NotFound : Error {
    using Error::Error;
};

/// An assembled object failed its own validation.
struct ValidationFailed : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

/// Two tori that must be similar are not.
struct NotSimilar : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Not enough data for the requested statistic.
struct InsufficientData : Error {
    using Error::Error;
};

}  // namespace antoine
