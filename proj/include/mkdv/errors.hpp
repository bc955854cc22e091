#pragma once

#include <stdexcept>
#include <string>

namespace mkdv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exponential factor left the representable range (|exponent| > kExponentGuard).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed (singular system, step underflow, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A jump-matrix denominator fell below the configured floor.
class SingularJumpError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A point was passed outside the domain where an evaluation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration cannot be satisfied (e.g. no stable circle radius below the cap).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mkdv
