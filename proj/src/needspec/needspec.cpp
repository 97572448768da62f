#include "dforge/needspec/needspec.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "dforge/needspec/constraint.hpp"

namespace dforge::needspec {

CoverageReport coverage_report(std::span<const NeedStatement> needs, std::span<const Metric> metrics,
                               std::span<const NeedMetricLink> links) {
  std::set<std::string> linked_needs;
  std::set<std::string> linked_metrics;
  for (const auto& l : links) {
    linked_needs.insert(l.need);
    linked_metrics.insert(l.metric);
  }
  CoverageReport r;
  for (const auto& n : needs) {
    if (!linked_needs.contains(n.id)) r.uncovered_needs.push_back(n.id);
  }
  for (const auto& m : metrics) {
    if (!linked_metrics.contains(m.id)) r.unused_metrics.push_back(m.id);
  }
  return r;
}

BenchmarkGrid benchmark_table(std::span<const BenchmarkProduct> products, std::span<const Metric> metrics,
                              BenchmarkMode mode) {
  BenchmarkGrid grid;
  grid.mode = mode;
  for (const auto& m : metrics) grid.metrics.push_back(m.id);
  for (const auto& p : products) grid.products.push_back(p.id);
  grid.cells.assign(metrics.size(), std::vector<std::string>(products.size()));
  if (mode == BenchmarkMode::satisfaction) grid.weighted_totals.assign(products.size(), 0);

  for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
    const auto& metric = metrics[mi];
    for (std::size_t pi = 0; pi < products.size(); ++pi) {
      const auto& product = products[pi];
      if (mode == BenchmarkMode::values) {
        auto it = product.values.find(metric.id);
        grid.cells[mi][pi] = it == product.values.end() ? "" : render_benchmark_value(it->second);
      } else if (auto it = product.satisfaction.find(metric.id); it != product.satisfaction.end()) {
        grid.cells[mi][pi] = std::to_string(it->second);
        grid.weighted_totals[pi] += static_cast<long long>(metric.importance) * it->second;
      }
    }
  }
  return grid;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BenchmarkValue parse_benchmark_value(std::string_view text) {
  const auto t = trim(text);
  if (t.empty() || t == "none") return NoValue{};
  if (ExactDecimal::looks_like_decimal(t)) return NumberValue{ExactDecimal::parse(t)};
  // A range separator is a '-' that follows at least one digit.
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] != '-') continue;
    const auto lo = trim(t.substr(0, i));
    const auto hi = trim(t.substr(i + 1));
    if (ExactDecimal::looks_like_decimal(lo) && ExactDecimal::looks_like_decimal(hi)) {
      auto a = ExactDecimal::parse(lo);
      auto b = ExactDecimal::parse(hi);
      if (a <= b) return RangeValue{std::move(a), std::move(b)};
    }
  }
  return QualitativeValue{std::string(t)};
}

std::string render_benchmark_value(const BenchmarkValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, NoValue>) return "none";
        else if constexpr (std::is_same_v<X, NumberValue>) return x.value.to_string();
        else if constexpr (std::is_same_v<X, RangeValue>) return x.lo.to_string() + "-" + x.hi.to_string();
        else return x.text;
      },
      v);
}

std::string_view to_string(TargetFindingKind kind) {
  switch (kind) {
    case TargetFindingKind::ideal_outside_marginal: return "ideal-outside-marginal";
    case TargetFindingKind::unit_mismatch: return "unit-mismatch";
    case TargetFindingKind::qualitative: return "qualitative";
  }
  return "?";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::vector<TargetFinding> target_consistency(const Project& project) {
  std::vector<TargetFinding> out;
  for (const auto& t : project.targets) {
    const Metric* metric = project.find_metric(t.metric);
    const auto contains = constraint_contains(t.marginal, t.ideal);
    if (contains && !*contains) {
      out.push_back({t.metric, TargetFindingKind::ideal_outside_marginal,
                     "ideal '" + render_constraint(t.ideal) + "' is not within marginal '" +
                         render_constraint(t.marginal) + "'"});
    }
    for (const auto* c : {&t.marginal, &t.ideal}) {
      const char* which = c == &t.marginal ? "marginal" : "ideal";
      if (std::holds_alternative<Qualitative>(c->kind)) {
        out.push_back({t.metric, TargetFindingKind::qualitative,
                       std::string(which) + " value '" + render_constraint(*c) + "' is qualitative"});
      } else if (metric && !c->unit.empty() && lower(c->unit) != lower(metric->unit)) {
        out.push_back({t.metric, TargetFindingKind::unit_mismatch,
                       std::string(which) + " unit '" + c->unit + "' differs from metric unit '" +
                           metric->unit + "'"});
      }
    }
  }
  return out;
}

}  // namespace dforge::needspec
