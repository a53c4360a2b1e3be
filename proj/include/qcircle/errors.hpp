#pragma once

#include <stdexcept>
#include <string>

namespace qcircle {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or precondition violation (maps to CLI exit code 1).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Parameter outside the regime required by an operation.
class RegimeError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// |c| fails the large-|c| precondition of the Falconer bounds.
class OutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The two inverse branches merged at the critical value.
class CriticalCollision : public Error {
public:
    using Error::Error;
};

/// Some 1 - c/xi(prefix) left the right half plane.
class LogBranchViolation : public Error {
public:
    using Error::Error;
};

/// Base for solver failures (maps to CLI exit code 2).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class NoConvergence : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class BracketFailure : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NonMonotone : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

class NoRealRoot : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

} // namespace qcircle
