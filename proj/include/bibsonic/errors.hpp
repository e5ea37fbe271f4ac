#pragma once

#include <stdexcept>
#include <string>

namespace bibsonic {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input syntax (CSV/JSON/WAV). Message carries a line or byte position.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input violating a field contract (missing/duplicate/ill-formed field).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numeric value outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// No usable citation baseline for a record that carries no precomputed score.
class MissingBaselineError : public Error {
public:
    using Error::Error;
};

/// Inconsistent schema/timing/run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (pitch, class, frequency).
class DomainError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written. Message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace bibsonic
