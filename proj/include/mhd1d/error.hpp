#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mhd1d {

/// A parameter record violates an invariant of its mode.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input lies outside the domain of a state function (nonpositive density,
/// temperature, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature, Newton or linear-solve failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density/volume or temperature left the admissible set. Never clamped.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(std::string field, int cell, double value)
      : std::runtime_error("positivity violated: " + field + " = " +
                           std::to_string(value) + " in cell " +
                           std::to_string(cell)),
        field_(std::move(field)),
        cell_(cell),
        value_(value) {}

  const std::string& field() const noexcept { return field_; }
  int cell() const noexcept { return cell_; }
  double value() const noexcept { return value_; }

 private:
  std::string field_;
  int cell_;
  double value_;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0,
                       std::string key = {})
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line),
        key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace mhd1d
