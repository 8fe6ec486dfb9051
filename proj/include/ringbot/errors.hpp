#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ringbot {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computed quantity left its admissible interval.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Stiffness identification could not produce a positive estimate.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Queried an inflatable at or beyond its burst pressure.
class BurstError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or inconsistent configuration for an otherwise valid call.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output file could not be written.
class IOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed config text. Carries the 1-based line and the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + message),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Config parsed but failed validation; lists every violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace ringbot
