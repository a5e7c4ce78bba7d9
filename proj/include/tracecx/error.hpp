#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tracecx {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (bad CSV row, unreadable report, ...).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyTraceError : public Error {
public:
    using Error::Error;
};

// Unknown compressor backend, invalid option combination.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Root finders and model parameters outside their admissible range.
class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace tracecx
