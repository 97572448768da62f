#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dforge/core/decimal.hpp"
#include "dforge/morpho/types.hpp"
#include "dforge/needspec/types.hpp"
#include "dforge/selection/types.hpp"
#include "dforge/tournament/types.hpp"

namespace dforge {

struct Criterion {
  std::string id;
  std::string name;
  std::optional<ExactDecimal> weight;
  std::optional<std::string> parent;

  bool operator==(const Criterion&) const = default;
};

/// A forest of criteria that are weighed against each other. Weight checks
/// apply per set, and only once any member carries a weight.
struct CriterionSet {
  std::string id;
  std::string name;
  std::vector<Criterion> criteria;

  bool operator==(const CriterionSet&) const = default;
};

struct Opportunity {
  std::string id;
  std::string title;
  std::string description;

  bool operator==(const Opportunity&) const = default;
};

struct Project {
  std::map<std::string, std::string> metadata;
  std::vector<CriterionSet> criterion_sets;
  std::vector<Opportunity> opportunities;
  tournament::Funnel funnel;
  std::vector<needspec::NeedGroup> need_groups;
  std::vector<needspec::NeedStatement> needs;
  std::vector<needspec::Metric> metrics;
  std::vector<needspec::NeedMetricLink> links;
  std::vector<needspec::BenchmarkProduct> benchmarks;
  std::vector<needspec::TargetSpec> targets;
  std::vector<morpho::MorphChart> charts;
  std::vector<morpho::Concept> concepts;
  std::vector<selection::PughMatrix> pugh_matrices;
  std::vector<selection::ScoringMatrix> scoring_matrices;

  bool operator==(const Project&) const = default;

  const Criterion* find_criterion(std::string_view id) const;
  const morpho::MorphChart* find_chart(std::string_view id) const;
  const morpho::Concept* find_concept(std::string_view id) const;
  const needspec::Metric* find_metric(std::string_view id) const;
  const selection::PughMatrix* find_pugh(std::string_view id) const;
  const selection::ScoringMatrix* find_scoring(std::string_view id) const;
  selection::ScoringMatrix* find_scoring(std::string_view id);
};

/// Identifiers are non-empty runs of [A-Za-z0-9_.-].
bool is_valid_id(std::string_view id);

}  // namespace dforge
