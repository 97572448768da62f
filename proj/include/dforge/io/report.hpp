#pragma once

#include <map>
#include <optional>
#include <string>

#include "dforge/core/project.hpp"
#include "dforge/core/rational.hpp"
#include "dforge/selection/selection.hpp"

namespace dforge::io {

enum class ReportFormat { markdown, csv_bundle };

struct ReportOptions {
  selection::ContinueRule continue_rule = selection::ContinueRule::net_positive();
  selection::DecisionRule decision_rule;
  /// Adjacent totals closer than this get a note in the scoring section.
  std::optional<Rational> significance_threshold;
};

/// File name -> content. Markdown reports hold a single "report.md".
using ReportArtifact = std::map<std::string, std::string>;

ReportArtifact generate_report(const Project& project, ReportFormat format, const ReportOptions& options = {});

std::string markdown_report(const Project& project, const ReportOptions& options = {});

}  // namespace dforge::io
