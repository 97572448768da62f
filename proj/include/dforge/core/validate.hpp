#pragma once

#include <string>
#include <vector>

#include "dforge/core/project.hpp"

namespace dforge {

enum class Severity { error, warning };

struct Issue {
  Severity severity = Severity::error;
  /// Slash-separated path to the offending element, e.g. "criterion_sets/selection/ease".
  std::string location;
  std::string message;

  bool operator==(const Issue&) const = default;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool empty() const { return issues.empty(); }
  bool has_errors() const;
  std::size_t error_count() const;

  bool operator==(const ValidationReport&) const = default;
};

/// Checks every type invariant and cross-reference. Never throws for data
/// problems and never mutates the project.
ValidationReport validate_project(const Project& project);

}  // namespace dforge
