#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dforge/core/project.hpp"
#include "dforge/needspec/types.hpp"

namespace dforge::needspec {

struct CoverageReport {
  std::vector<std::string> uncovered_needs;
  std::vector<std::string> unused_metrics;

  bool operator==(const CoverageReport&) const = default;
};

/// Needs with no link and metrics with no link, in declaration order.
CoverageReport coverage_report(std::span<const NeedStatement> needs, std::span<const Metric> metrics,
                               std::span<const NeedMetricLink> links);

enum class BenchmarkMode { values, satisfaction };

/// Metric x product comparison grid. cells[m][p] is the rendered value or
/// the satisfaction count ("" when absent).
struct BenchmarkGrid {
  BenchmarkMode mode = BenchmarkMode::values;
  std::vector<std::string> metrics;
  std::vector<std::string> products;
  std::vector<std::vector<std::string>> cells;
  /// Satisfaction mode only: sum over metrics of importance * satisfaction.
  std::vector<long long> weighted_totals;
};

BenchmarkGrid benchmark_table(std::span<const BenchmarkProduct> products, std::span<const Metric> metrics,
                              BenchmarkMode mode);

/// "" or "none" -> NoValue, "80" -> number, "70-80" -> range, else text.
BenchmarkValue parse_benchmark_value(std::string_view text);
std::string render_benchmark_value(const BenchmarkValue& v);

enum class TargetFindingKind {
  ideal_outside_marginal,  // some ideal value would not be marginally acceptable
  unit_mismatch,           // constraint unit differs from the metric's unit label
  qualitative,             // cell outside the numeric grammar
};

std::string_view to_string(TargetFindingKind kind);

struct TargetFinding {
  std::string metric;
  TargetFindingKind kind;
  std::string message;

  bool operator==(const TargetFinding&) const = default;
};

/// Cross-checks each target row. Ideal and marginal are never assumed to
/// nest, so rows whose ideal escapes the marginal range are reported here.
std::vector<TargetFinding> target_consistency(const Project& project);

}  // namespace dforge::needspec
