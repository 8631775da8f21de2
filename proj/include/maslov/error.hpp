#pragma once

#include <stdexcept>
#include <string>

namespace maslov {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, non-Lagrangian frames, missing table entries.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Adjacent samples of a path are too far apart to resolve the det² phase.
class UnderSampledPath : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Unwrapped winding of a loop is not close to an integer.
class InconsistentLoop : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Two crossings fall inside one grid cell.
class ResolutionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A crossing of dimension > 1, or a one-sided form that stays degenerate.
class NonRegularCrossing : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class BetaSelectionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The signature formula for the Hörmander index needs α ⋔ α′.
class MethodDomainError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class ConcatenationError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class IncompatibleCharts : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Numerical state that should be unreachable for valid inputs.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace maslov
