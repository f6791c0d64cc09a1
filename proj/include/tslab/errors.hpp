#pragma once

#include <stdexcept>
#include <string>

namespace tslab {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sample grid or tensor is too small for the requested bandwidth.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Arguments outside the documented range of a numerical routine.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A six-index tuple violates n1+n2+n3 = n4+n5+n6.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition does not hold (zero input,
/// unconverged solver result, input not rough enough, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Divergent iteration, non-decaying integrand or a failed checksum.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ChecksumError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Reading or writing a cache file failed.
class StorageError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or unknown command.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tslab
