#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dforge/core/decimal.hpp"

namespace dforge::needspec {

struct NeedGroup {
  std::string id;
  std::string label;

  bool operator==(const NeedGroup&) const = default;
};

struct NeedStatement {
  std::string id;
  std::string raw_statement;
  std::string interpreted;
  std::optional<std::string> group;
  std::optional<int> importance;

  bool operator==(const NeedStatement&) const = default;
};

struct Metric {
  std::string id;
  int ordinal = 0;
  std::string name;
  int importance = 1;
  std::string unit;

  bool operator==(const Metric&) const = default;
};

struct NeedMetricLink {
  std::string need;
  std::string metric;

  bool operator==(const NeedMetricLink&) const = default;
  auto operator<=>(const NeedMetricLink&) const = default;
};

struct NoValue {
  bool operator==(const NoValue&) const = default;
};
struct NumberValue {
  ExactDecimal value;
  bool operator==(const NumberValue&) const = default;
};
struct RangeValue {
  ExactDecimal lo;
  ExactDecimal hi;
  bool operator==(const RangeValue&) const = default;
};
struct QualitativeValue {
  std::string text;
  bool operator==(const QualitativeValue&) const = default;
};

using BenchmarkValue = std::variant<NoValue, NumberValue, RangeValue, QualitativeValue>;

struct BenchmarkProduct {
  std::string id;
  std::string name;
  /// Keyed by metric id; metrics without an entry are treated as NoValue.
  std::map<std::string, BenchmarkValue> values;
  /// Perceived satisfaction 1..5 keyed by metric id.
  std::map<std::string, int> satisfaction;

  bool operator==(const BenchmarkProduct&) const = default;
};

struct AtLeast {
  ExactDecimal value;
  bool operator==(const AtLeast&) const = default;
};
struct AtMost {
  ExactDecimal value;
  bool operator==(const AtMost&) const = default;
};
struct Between {
  ExactDecimal lo;
  ExactDecimal hi;
  bool operator==(const Between&) const = default;
};
struct Exactly {
  ExactDecimal value;
  bool operator==(const Exactly&) const = default;
};
struct OneOf {
  std::vector<std::string> values;
  bool operator==(const OneOf&) const = default;
};
struct Qualitative {
  std::string text;
  bool operator==(const Qualitative&) const = default;
};

using ConstraintKind = std::variant<AtLeast, AtMost, Between, Exactly, OneOf, Qualitative>;

struct Constraint {
  ConstraintKind kind;
  std::string unit;

  bool operator==(const Constraint&) const = default;

  bool is_numeric() const {
    return !std::holds_alternative<OneOf>(kind) && !std::holds_alternative<Qualitative>(kind);
  }
};

struct TargetSpec {
  std::string metric;
  Constraint marginal;
  Constraint ideal;

  bool operator==(const TargetSpec&) const = default;
};

}  // namespace dforge::needspec
