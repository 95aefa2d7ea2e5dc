#pragma once

#include <stdexcept>
#include <string>

namespace qg {

/// Bad inputs or unsatisfiable preconditions on data (exit code 2 at the CLI).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Misconfiguration, e.g. a column map without a title column.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Search-string syntax error; offset is a character position into the input.
class QuerySyntaxError : public std::runtime_error {
public:
    QuerySyntaxError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Non-fatal per-entry problem; parsing continues.
struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not line-addressable
    std::string message;
};

}  // namespace qg
