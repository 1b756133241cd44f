#pragma once

#include <stdexcept>
#include <string>

namespace agf {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value or violated call precondition.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Unreadable or inconsistent input (files, dimensions, layouts).
class InputError : public Error {
public:
    using Error::Error;
};

/// Filterbank design request that cannot be satisfied.
class DesignError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: solver non-convergence, spectrum outside the
/// stated interval, or an internal invariant violation.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Graph whose structure contradicts what the operation requires.
class MalformedGraph : public Error {
public:
    using Error::Error;
};

} // namespace agf
