#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "dforge/fixtures/stethoscope.hpp"
#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"

using namespace dforge;
using namespace dforge::needspec;

namespace {

ExactDecimal d(const char* s) { return ExactDecimal::parse(s); }
Constraint c(ConstraintKind k, std::string unit = "") { return {std::move(k), std::move(unit)}; }

}  // namespace

TEST(ParseConstraint, Keywords) {
  EXPECT_EQ(parse_constraint("at least 48 hours"), c(AtLeast{d("48")}, "hours"));
  EXPECT_EQ(parse_constraint("AT MOST 4 watts"), c(AtMost{d("4")}, "watts"));
  EXPECT_EQ(parse_constraint(">= 5 years"), c(AtLeast{d("5")}, "years"));
  EXPECT_EQ(parse_constraint("<= 2.5"), c(AtMost{d("2.5")}));
  EXPECT_EQ(parse_constraint("between 15 and 93 %"), c(Between{d("15"), d("93")}, "%"));
  EXPECT_EQ(parse_constraint("exactly 180 degree"), c(Exactly{d("180")}, "degree"));
  EXPECT_EQ(parse_constraint("one of {available, none}"), c(OneOf{{"available", "none"}}));
}

TEST(ParseConstraint, TargetCells) {
  EXPECT_EQ(parse_constraint("20-4000 hz"), c(Between{d("20"), d("4000")}, "hz"));
  EXPECT_EQ(parse_constraint("48 hours"), c(Exactly{d("48")}, "hours"));
  EXPECT_EQ(parse_constraint("4gb"), c(Exactly{d("4")}, "gb"));
  EXPECT_EQ(parse_constraint("$300"), c(Exactly{d("300")}, "$"));
  EXPECT_EQ(parse_constraint("$10- $100"), c(Between{d("10"), d("100")}, "$"));
  EXPECT_EQ(parse_constraint("15 -93"), c(Between{d("15"), d("93")}));
  EXPECT_EQ(parse_constraint("-21 -100 degree"), c(Between{d("-21"), d("100")}, "degree"));
  EXPECT_EQ(parse_constraint("160 to 180 degree"), c(Between{d("160"), d("180")}, "degree"));
  EXPECT_EQ(parse_constraint("Good strength"), c(Qualitative{"Good strength"}));
  EXPECT_EQ(parse_constraint("Less than 10 min"), c(Qualitative{"Less than 10 min"}));
  EXPECT_EQ(parse_constraint("available"), c(Qualitative{"available"}));
}

TEST(ParseConstraint, InvertedRange) {
  EXPECT_THROW(parse_constraint("between 9 and 3"), ConstraintError);
  EXPECT_THROW(parse_constraint("90-10 hz"), ConstraintError);
}

TEST(RenderConstraint, CanonicalForms) {
  EXPECT_EQ(render_constraint(c(AtLeast{d("48")}, "hours")), "at least 48 hours");
  EXPECT_EQ(render_constraint(c(Between{d("15"), d("93")}, "%")), "between 15 and 93 %");
  EXPECT_EQ(render_constraint(c(OneOf{{"available"}})), "one of {available}");
  EXPECT_EQ(render_constraint(c(Qualitative{"Excellent"})), "Excellent");
}

TEST(RenderConstraint, RoundtripOnTargetCells) {
  for (const auto& t : fixtures::stethoscope_project().targets) {
    for (const auto* k : {&t.marginal, &t.ideal}) {
      EXPECT_EQ(parse_constraint(render_constraint(*k)), *k) << render_constraint(*k);
    }
  }
}

TEST(CheckValue, BatteryRuntime) {
  TargetSpec spec{"m16", c(AtLeast{d("48")}, "hours"), c(AtLeast{d("60")}, "hours")};
  auto r = check_value(spec, d("60"));
  EXPECT_TRUE(r.meets_ideal);
  EXPECT_TRUE(r.meets_marginal);
  r = check_value(spec, d("50"));
  EXPECT_FALSE(r.meets_ideal);
  EXPECT_TRUE(r.meets_marginal);
}

TEST(CheckValue, BluetoothRange) {
  TargetSpec spec{"m25", parse_constraint("12 meter"), parse_constraint("15 meter")};
  const auto r = check_value(spec, d("9"));
  EXPECT_FALSE(r.meets_ideal);
  EXPECT_FALSE(r.meets_marginal);
  EXPECT_TRUE(check_value(spec, d("15")).meets_ideal);
}

TEST(CheckValue, QualitativeAndMismatch) {
  TargetSpec spec{"m07", c(Qualitative{"Good strength"}), c(OneOf{{"Excellent"}})};
  const auto r = check_value(spec, std::string("Excellent"));
  EXPECT_TRUE(r.meets_ideal);
  EXPECT_FALSE(r.meets_marginal);
  EXPECT_EQ(r.notes, std::vector<std::string>{"qualitative"});
  EXPECT_THROW(check_value(spec, d("3")), ConstraintError);
  EXPECT_THROW(satisfies(c(AtLeast{d("1")}), std::string("x")), ConstraintError);
}

TEST(ConstraintContains, Nesting) {
  EXPECT_EQ(constraint_contains(c(Between{d("0"), d("10")}), c(Between{d("2"), d("3")})), true);
  EXPECT_EQ(constraint_contains(c(Between{d("150"), d("170")}, "g"), c(Exactly{d("175")}, "g")), false);
  EXPECT_EQ(constraint_contains(c(AtLeast{d("1")}), c(AtMost{d("5")})), false);
  EXPECT_EQ(constraint_contains(c(Qualitative{"x"}), c(Exactly{d("1")})), std::nullopt);
  EXPECT_EQ(constraint_contains(c(Exactly{d("1")}, "g"), c(Exactly{d("1")}, "kg")), std::nullopt);
}

TEST(Coverage, VolumeNeedIsCovered) {
  const auto p = fixtures::stethoscope_project();
  const auto r = coverage_report(p.needs, p.metrics, p.links);
  EXPECT_EQ(std::count(r.uncovered_needs.begin(), r.uncovered_needs.end(), "need18"), 0);
  EXPECT_EQ(r.uncovered_needs.size(), 15u);
  EXPECT_EQ(r.unused_metrics.size(), 17u);
}

TEST(Coverage, EdgeCases) {
  const auto p = fixtures::stethoscope_project();
  const auto none = coverage_report(p.needs, p.metrics, {});
  EXPECT_EQ(none.uncovered_needs.size(), p.needs.size());
  EXPECT_EQ(none.unused_metrics.size(), p.metrics.size());
  std::vector<NeedMetricLink> all;
  for (const auto& n : p.needs) all.push_back({n.id, "m01"});
  EXPECT_TRUE(coverage_report(p.needs, p.metrics, all).uncovered_needs.empty());
}

TEST(Benchmark, AmplificationRowContributions) {
  const auto p = fixtures::stethoscope_project();
  const std::vector<Metric> row9{p.metrics[8]};
  const auto grid = benchmark_table(p.benchmarks, row9, BenchmarkMode::satisfaction);
  EXPECT_EQ(grid.weighted_totals, (std::vector<long long>{5, 20, 15}));
  EXPECT_EQ(grid.cells[0], (std::vector<std::string>{"1", "4", "3"}));
}

TEST(Benchmark, FullTableTotals) {
  // Importance and dot counts transcribed by hand; "-" is 0.
  const int importance[26] = {1, 3, 3, 3, 2, 3, 5, 4, 5, 3, 3, 2, 3, 4, 2, 4, 3, 3, 4, 2, 3, 4, 4, 2, 3, 2};
  const int dots[26][3] = {
      {1, 3, 4}, {0, 3, 3}, {0, 4, 3}, {0, 3, 3}, {0, 3, 1}, {0, 4, 3}, {3, 3, 3}, {2, 4, 3}, {1, 4, 3},
      {3, 3, 3}, {2, 4, 3}, {0, 3, 0}, {3, 4, 1}, {1, 3, 2}, {0, 4, 0}, {0, 3, 4}, {3, 2, 2}, {1, 4, 2},
      {2, 3, 3}, {0, 4, 0}, {1, 5, 5}, {0, 5, 3}, {1, 3, 2}, {0, 4, 4}, {0, 2, 2}, {3, 2, 2},
  };
  std::vector<long long> oracle(3, 0);
  for (int m = 0; m < 26; ++m)
    for (int k = 0; k < 3; ++k) oracle[k] += importance[m] * dots[m][k];

  const auto p = fixtures::stethoscope_project();
  const auto grid = benchmark_table(p.benchmarks, p.metrics, BenchmarkMode::satisfaction);
  EXPECT_EQ(grid.weighted_totals, oracle);
  EXPECT_EQ(grid.weighted_totals, (std::vector<long long>{90, 276, 206}));
}

TEST(Benchmark, EmptySatisfactionTotalsZero) {
  const auto p = fixtures::stethoscope_project();
  std::vector<BenchmarkProduct> bare{{"x", "X", {}, {}}};
  const auto grid = benchmark_table(bare, p.metrics, BenchmarkMode::satisfaction);
  EXPECT_EQ(grid.weighted_totals, std::vector<long long>{0});
}

TEST(Benchmark, ValueCells) {
  EXPECT_EQ(parse_benchmark_value(""), BenchmarkValue{NoValue{}});
  EXPECT_EQ(parse_benchmark_value("none"), BenchmarkValue{NoValue{}});
  EXPECT_EQ(parse_benchmark_value("80"), BenchmarkValue{NumberValue{d("80")}});
  EXPECT_EQ(parse_benchmark_value("70-80"), (BenchmarkValue{RangeValue{d("70"), d("80")}}));
  EXPECT_EQ(parse_benchmark_value("Strong"), BenchmarkValue{QualitativeValue{"Strong"}});
  for (const char* t : {"80", "70-80", "Strong", "none"})
    EXPECT_EQ(parse_benchmark_value(render_benchmark_value(parse_benchmark_value(t))), parse_benchmark_value(t));
}

TEST(Targets, MassAndCostEscapeMarginal) {
  const auto findings = target_consistency(fixtures::stethoscope_project());
  std::vector<std::string> escaped;
  for (const auto& f : findings)
    if (f.kind == TargetFindingKind::ideal_outside_marginal) escaped.push_back(f.metric);
  EXPECT_NE(std::find(escaped.begin(), escaped.end(), "m11"), escaped.end());
  EXPECT_NE(std::find(escaped.begin(), escaped.end(), "m17"), escaped.end());
  EXPECT_EQ(std::find(escaped.begin(), escaped.end(), "m02"), escaped.end());
  EXPECT_NE(std::find(escaped.begin(), escaped.end(), "m16"), escaped.end());
}

TEST(Targets, QualitativeCellsFlagged) {
  const auto findings = target_consistency(fixtures::stethoscope_project());
  const auto qual = std::count_if(findings.begin(), findings.end(), [](const TargetFinding& f) {
    return f.kind == TargetFindingKind::qualitative && f.metric == "m07";
  });
  EXPECT_GE(qual, 1);
}
