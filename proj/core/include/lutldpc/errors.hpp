#pragma once

#include <stdexcept>
#include <string>

namespace lutldpc {

/// Bad input data: malformed files, inconsistent matrices, out-of-range
/// labels. Maps to CLI exit code 2.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure in a text format, carrying the 1-based line number.
class parse_error : public validation_error {
  public:
    parse_error(const std::string& what, long line)
        : validation_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    long line() const { return line_; }

  private:
    long line_;
};

} // namespace lutldpc
