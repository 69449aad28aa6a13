#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mhd1d {

enum class Severity { pass, warning, fail };

struct Check {
  std::string name;
  Severity severity = Severity::pass;
  std::optional<double> first_violation;  // grid point where the check broke
  std::string detail;

  bool passed() const { return severity != Severity::fail; }
};

/// Outcome of a structural validation. Warnings do not fail the report.
struct ValidationReport {
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed()) return &c;
    return nullptr;
  }

  bool has_warning() const {
    for (const auto& c : checks)
      if (c.severity == Severity::warning) return true;
    return false;
  }

  void add(std::string name, Severity s, std::string detail = {},
           std::optional<double> at = std::nullopt) {
    checks.push_back({std::move(name), s, at, std::move(detail)});
  }
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
  for (const auto& c : r.checks) {
    const char* tag = c.severity == Severity::pass      ? "PASS"
                      : c.severity == Severity::warning ? "WARN"
                                                        : "FAIL";
    os << tag << ' ' << c.name;
    if (c.first_violation) os << " (first violation at z=" << *c.first_violation << ")";
    if (!c.detail.empty()) os << ": " << c.detail;
    os << '\n';
  }
  return os;
}

}  // namespace mhd1d
