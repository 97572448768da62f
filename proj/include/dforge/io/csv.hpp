#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dforge/core/error.hpp"
#include "dforge/morpho/types.hpp"
#include "dforge/needspec/types.hpp"
#include "dforge/selection/types.hpp"
#include "dforge/sensitivity/sensitivity.hpp"
#include "dforge/tournament/types.hpp"

namespace dforge::io {

class CsvError : public Error {
 public:
  using Error::Error;
};

using CsvRow = std::vector<std::string>;

/// RFC 4180 style: comma separated, double-quoted fields, "" escapes a quote.
/// Accepts LF or CRLF line ends. A trailing newline does not add a row.
std::vector<CsvRow> parse_csv(std::string_view text);
/// Quotes only fields that need it; rows end with "\n".
std::string write_csv(const std::vector<CsvRow>& rows);

// Verdict grid: opportunity, <criterion>..., declared
std::string verdicts_to_csv(const tournament::Stage& stage);
/// Replaces stage.criteria and stage.verdicts from the grid.
void verdicts_from_csv(std::string_view text, tournament::Stage& stage);

// Morph chart: one column per subproblem, blank cells pad ragged columns.
std::string chart_to_csv(const morpho::MorphChart& chart);
morpho::MorphChart chart_from_csv(std::string_view text, std::string id, std::string name);

// Matrices: header "criterion,<concept>..." with the reference suffixed "*".
// Scoring matrices add a "weight" column after the criterion. Declared
// aggregates follow as "#declared:<aggregate>" rows.
std::string pugh_to_csv(const selection::PughMatrix& m);
selection::PughMatrix pugh_from_csv(std::string_view text, std::string id);
std::string scoring_to_csv(const selection::ScoringMatrix& m);
selection::ScoringMatrix scoring_from_csv(std::string_view text, std::string id);

std::string metrics_to_csv(const std::vector<needspec::Metric>& metrics);
std::vector<needspec::Metric> metrics_from_csv(std::string_view text);
std::string links_to_csv(const std::vector<needspec::NeedMetricLink>& links);
std::vector<needspec::NeedMetricLink> links_from_csv(std::string_view text);
/// Long format: product, product_name, metric, kind, value, satisfaction.
std::string benchmarks_to_csv(const std::vector<needspec::BenchmarkProduct>& products);
std::vector<needspec::BenchmarkProduct> benchmarks_from_csv(std::string_view text);
/// metric, marginal, ideal with constraint text in the cells.
std::string targets_to_csv(const std::vector<needspec::TargetSpec>& targets);
std::vector<needspec::TargetSpec> targets_from_csv(std::string_view text);

/// weight, then one rank column per concept.
std::string trajectory_to_csv(const std::vector<sensitivity::TrajectoryPoint>& points,
                              const std::vector<std::string>& concepts);

}  // namespace dforge::io
