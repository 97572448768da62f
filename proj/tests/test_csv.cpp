#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "dforge/fixtures/stethoscope.hpp"
#include "dforge/io/csv.hpp"
#include "dforge/sensitivity/sensitivity.hpp"

using namespace dforge;
using namespace dforge::io;

namespace {

const Project& fixture() {
  static const Project p = fixtures::stethoscope_project();
  return p;
}

}  // namespace

TEST(Csv, QuotingRoundtrip) {
  const std::vector<CsvRow> rows{{"a", "b,c", "say \"hi\""}, {"", "line\nbreak", "x"}};
  const auto text = write_csv(rows);
  EXPECT_EQ(parse_csv(text), rows);
  EXPECT_EQ(text.substr(0, 4), "a,\"b");
}

TEST(Csv, CrlfAndTrailingNewline) {
  EXPECT_EQ(parse_csv("a,b\r\n1,2\r\n"), (std::vector<CsvRow>{{"a", "b"}, {"1", "2"}}));
  EXPECT_EQ(parse_csv("a,b"), (std::vector<CsvRow>{{"a", "b"}}));
  EXPECT_THROW(parse_csv("\"open"), CsvError);
}

TEST(Csv, VerdictsRoundtrip) {
  for (const auto& stage : fixture().funnel.stages) {
    tournament::Stage back;
    back.name = stage.name;
    back.unknown_policy = stage.unknown_policy;
    back.declared_survivors = stage.declared_survivors;
    verdicts_from_csv(verdicts_to_csv(stage), back);
    EXPECT_EQ(back, stage) << stage.name;
  }
}

TEST(Csv, VerdictsWithoutDeclaredColumn) {
  tournament::Stage s;
  verdicts_from_csv("opportunity,a,b\nopp01,1,\nopp02,0,1\n", s);
  EXPECT_EQ(s.criteria, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(s.verdicts.size(), 2u);
  EXPECT_EQ(s.verdicts[0].marks[1], tournament::Mark::unknown);
  EXPECT_FALSE(s.verdicts[0].declared);
}

TEST(Csv, ChartRoundtrip) {
  const auto& chart = fixture().charts[0];
  const auto back = chart_from_csv(chart_to_csv(chart), chart.id, chart.name);
  ASSERT_EQ(back.columns.size(), chart.columns.size());
  for (std::size_t i = 0; i < chart.columns.size(); ++i) {
    EXPECT_EQ(back.columns[i].name, chart.columns[i].name);
    EXPECT_EQ(back.columns[i].fragments, chart.columns[i].fragments);
  }
}

TEST(Csv, PughRoundtrip) {
  const auto& m = fixture().pugh_matrices[0];
  const auto text = pugh_to_csv(m);
  EXPECT_EQ(text.substr(0, text.find('\n')), "criterion,A,B*,C,D,E,F");
  EXPECT_EQ(pugh_from_csv(text, m.id), m);
}

TEST(Csv, PughRejectsBadCells) {
  EXPECT_THROW(pugh_from_csv("criterion,A*,B\nx,0,2\n", "m"), CsvError);
  EXPECT_THROW(pugh_from_csv("criterion,A,B\nx,0,+\n", "m"), CsvError);
}

TEST(Csv, ScoringRoundtrip) {
  const auto& m = fixture().scoring_matrices[0];
  const auto text = scoring_to_csv(m);
  EXPECT_EQ(text.substr(0, text.find('\n')), "criterion,weight,D,E,F,DF");
  EXPECT_NE(text.find("#declared:total"), std::string::npos);
  EXPECT_EQ(scoring_from_csv(text, m.id), m);
}

TEST(Csv, ScoringWithoutOverlay) {
  const auto m = scoring_from_csv("criterion,weight,X,Y\na,1/3,1,5\nb,2/3,3,3\n", "m");
  EXPECT_EQ(m.criteria[0].weight, Rational(1, 3));
  EXPECT_EQ(m.ratings, (std::vector<std::vector<int>>{{1, 5}, {3, 3}}));
  EXPECT_FALSE(m.declared);
  EXPECT_THROW(scoring_from_csv("criterion,weight,X\na,0.5,x\n", "m"), CsvError);
}

TEST(Csv, NeedspecTablesRoundtrip) {
  const auto& p = fixture();
  EXPECT_EQ(metrics_from_csv(metrics_to_csv(p.metrics)), p.metrics);
  EXPECT_EQ(links_from_csv(links_to_csv(p.links)), p.links);
  EXPECT_EQ(benchmarks_from_csv(benchmarks_to_csv(p.benchmarks)), p.benchmarks);
  EXPECT_EQ(targets_from_csv(targets_to_csv(p.targets)), p.targets);
}

TEST(Csv, Trajectory) {
  const auto& m = fixture().scoring_matrices[0];
  const auto t = sensitivity::rank_trajectory(m, "signal-quality", 3);
  const auto rows = parse_csv(trajectory_to_csv(t, m.concepts));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (CsvRow{"weight", "D", "E", "F", "DF"}));
  EXPECT_EQ(rows[1], (CsvRow{"0", "2", "2", "4", "1"}));
  EXPECT_EQ(rows[3][0], "0.99");
}
