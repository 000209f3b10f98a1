#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmq {

// Base class for all library errors. The CLI maps these onto exit codes:
// everything below is a data/domain error (exit 2) except ConvergenceError
// and InvariantError, which signal numerical failure (exit 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameter or argument. Carries the offending field name when known.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
    DomainError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Iterative eigensolver did not converge within its iteration budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int dim, long iterations)
        : Error(what + " (dim=" + std::to_string(dim) +
                ", iterations=" + std::to_string(iterations) + ")"),
          dim_(dim),
          iterations_(iterations) {}
    int dim() const { return dim_; }
    long iterations() const { return iterations_; }

private:
    int dim_;
    long iterations_;
};

// A computed quantity violated a structural invariant (e.g. positivity of the
// value ladder); indicates numerical breakdown, not bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

// Malformed input row. Line numbers are 1-based and count the header.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Timestamps regressed beyond tolerance while ingesting trade data.
class OrderingError : public ParseError {
public:
    using ParseError::ParseError;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class MissingQuotes : public Error {
public:
    using Error::Error;
};

}  // namespace mmq
