#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqflab {

class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an enumeration or sweep would exceed a configured cap.
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, std::size_t limit)
        : std::runtime_error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}

    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace lqflab
