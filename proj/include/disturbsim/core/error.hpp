#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace disturbsim {

/// Base of every error the simulator raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An address or index outside the configured geometry.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration value or violated configuration invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed trace or config text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column),
          reason_(what) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string reason_;
};

/// A caller skipped a required protocol step (e.g. a write without its pre-write read).
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// An operation was invoked outside its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Table state violates a structural invariant (e.g. one address in two tables).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// End-of-run accounting does not balance.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Reports could not be assembled from the given inputs.
class ReportError : public Error {
public:
    using Error::Error;
};

}  // namespace disturbsim
