#pragma once

#include <stdexcept>
#include <string>

namespace bgn {

enum class ErrorCode {
    Domain = 1,
    Convergence,
    Divergence,
    Quadrature,
    Parse,
    Dimension,
    EmptyRegion,
    Io,
    InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. The code survives the trip
/// through the C API as a status value.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(ErrorCode::Convergence, what) {}
};

/// A series whose partial sums fail the Cauchy check within the allowed terms.
class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& what) : Error(ErrorCode::Divergence, what) {}
};

class QuadratureError : public Error {
public:
    explicit QuadratureError(const std::string& what) : Error(ErrorCode::Quadrature, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorCode::Dimension, what) {}
};

class EmptyRegionError : public Error {
public:
    explicit EmptyRegionError(const std::string& what) : Error(ErrorCode::EmptyRegion, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

}  // namespace bgn
