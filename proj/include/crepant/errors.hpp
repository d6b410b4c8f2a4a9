#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crepant {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Raised by the machine-word fast paths; callers catch it and retry with bignums.
class OverflowError : public Error {
public:
    OverflowError() : Error("64-bit integer overflow") {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class CanonicalizationRequired : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class JoinHypothesisError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class EpsilonSearchError : public Error {
public:
    using Error::Error;
};

class IncompleteCertificate : public Error {
public:
    using Error::Error;
};

class LatticeInconsistency : public Error {
public:
    using Error::Error;
};

class ConventionError : public Error {
public:
    using Error::Error;
};

class CrossCheckFailure : public Error {
public:
    using Error::Error;
};

class EmptyDilation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace crepant
