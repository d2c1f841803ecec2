#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpart {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument (spec, series, grid, level) was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Not enough observations for the requested operation.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// The plug-in information matrix is singular or too ill-conditioned to invert.
class SingularInformation : public Error {
public:
    using Error::Error;
};

/// Non-finite values or a failed factorization.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// The optimizer did not produce a usable maximizer.
class FitFailure : public Error {
public:
    using Error::Error;
};

/// A score test whose statistic is undefined (e.g. identical intensity paths).
class DegenerateTest : public Error {
public:
    using Error::Error;
};

/// Malformed input data; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace hpart
