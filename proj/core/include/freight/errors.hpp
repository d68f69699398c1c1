#pragma once

#include <stdexcept>
#include <string>

namespace freight {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or unusable input: missing files, malformed config,
/// invalid parameters.  Maps to process exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Inconsistency discovered while computing: zone missing from a lookup,
/// conservation violated, corrupt data.  Maps to process exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid or degenerate geometry (rings with too few vertices, zones
/// outside the grid extent).
class GeometryError : public DataError {
public:
    using DataError::DataError;
};

/// Numerical failure: singular design matrix, separation in a logit fit.
class NumericError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace freight
