#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dforge/core/decimal.hpp"
#include "dforge/core/rational.hpp"

namespace dforge::selection {

/// Aggregates a source document states for a Pugh matrix, one entry per
/// concept. Only used for auditing.
struct PughDeclared {
  std::optional<std::vector<int>> plus;
  std::optional<std::vector<int>> zero;
  std::optional<std::vector<int>> minus;
  std::optional<std::vector<int>> net;
  std::optional<std::vector<int>> rank;
  std::optional<std::vector<bool>> proceed;

  bool operator==(const PughDeclared&) const = default;
};

/// Relative (+1 / 0 / -1) ratings against a reference concept.
/// ratings[k][c] rates concept c on criterion k.
struct PughMatrix {
  std::string id;
  std::vector<std::string> criteria;
  std::vector<std::string> concepts;
  std::string reference;
  std::vector<std::vector<int>> ratings;
  std::optional<PughDeclared> declared;

  bool operator==(const PughMatrix&) const = default;
};

enum class Decision { develop, drop };

std::string_view to_string(Decision d);
Decision parse_decision(std::string_view text);

struct ScoringDeclared {
  /// weighted[k][c]; individual cells may be absent.
  std::optional<std::vector<std::vector<std::optional<ExactDecimal>>>> weighted;
  std::optional<std::vector<ExactDecimal>> totals;
  std::optional<std::vector<int>> rank;
  std::optional<std::vector<Decision>> decision;

  bool operator==(const ScoringDeclared&) const = default;
};

struct WeightedCriterion {
  std::string id;
  Rational weight;

  bool operator==(const WeightedCriterion&) const = default;
};

/// Cardinal (1..5) ratings with criterion weights summing to exactly 1.
/// ratings[k][c] rates concept c on criterion k.
struct ScoringMatrix {
  std::string id;
  std::vector<WeightedCriterion> criteria;
  std::vector<std::string> concepts;
  std::optional<std::string> reference;
  std::vector<std::vector<int>> ratings;
  std::optional<ScoringDeclared> declared;

  bool operator==(const ScoringMatrix&) const = default;
};

}  // namespace dforge::selection
