#include <gtest/gtest.h>

#include <algorithm>

#include "dforge/core/validate.hpp"
#include "dforge/fixtures/stethoscope.hpp"

using namespace dforge;

namespace {

ExactDecimal d(const char* s) { return ExactDecimal::parse(s); }

Project weighted(std::initializer_list<const char*> weights) {
  Project p;
  CriterionSet set{"sel", "selection", {}};
  int i = 0;
  for (const char* w : weights) set.criteria.push_back({"c" + std::to_string(i++), "criterion", d(w), std::nullopt});
  p.criterion_sets.push_back(set);
  return p;
}

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.issues.begin(), r.issues.end(),
                     [&](const Issue& i) { return i.message.find(text) != std::string::npos; });
}

}  // namespace

TEST(Validate, FixtureWeightsAreClean) {
  const auto r = validate_project(weighted({"0.1", "0.15", "0.15", "0.1", "0.15", "0.2", "0.05", "0.1"}));
  EXPECT_TRUE(r.empty());
}

TEST(Validate, WeightSumOffByFivePercent) {
  const auto r = validate_project(weighted({"0.1", "0.15", "0.15", "0.1", "0.2", "0.2", "0.05", "0.1"}));
  ASSERT_TRUE(r.has_errors());
  EXPECT_TRUE(mentions(r, "criterion weights sum ≠ 1"));
  EXPECT_TRUE(mentions(r, "1.05"));
}

TEST(Validate, ChildWeights) {
  auto p = weighted({"0.1", "0.15", "0.15", "0.1", "0.15", "0.2", "0.05", "0.1"});
  auto& set = p.criterion_sets[0];
  for (const char* id : {"load", "read", "clean"}) set.criteria.push_back({id, id, d("0.05"), "c4"});
  EXPECT_TRUE(validate_project(p).empty());
  set.criteria.back().weight = d("0.06");
  const auto r = validate_project(p);
  ASSERT_EQ(r.error_count(), 1u);
  EXPECT_TRUE(mentions(r, "child criterion weights sum to 0.16"));
}

TEST(Validate, UnweightedSetsSkipWeightChecks) {
  Project p;
  p.criterion_sets.push_back({"s", "screen", {{"a", "A", {}, {}}, {"b", "B", {}, {}}}});
  EXPECT_TRUE(validate_project(p).empty());
  p.criterion_sets[0].criteria[0].weight = d("1");
  EXPECT_TRUE(mentions(validate_project(p), "no weight"));
}

TEST(Validate, CycleAndUnknownParent) {
  Project p;
  p.criterion_sets.push_back({"s", "s", {{"a", "A", {}, "b"}, {"b", "B", {}, "a"}, {"c", "C", {}, "zz"}}});
  const auto r = validate_project(p);
  EXPECT_TRUE(mentions(r, "cycle"));
  EXPECT_TRUE(mentions(r, "parent 'zz'"));
}

TEST(Validate, IdentifierDiscipline) {
  Project p;
  p.opportunities = {{"ok-1", "t", ""}, {"ok-1", "dup", ""}, {"bad id", "space", ""}};
  const auto r = validate_project(p);
  EXPECT_TRUE(mentions(r, "duplicate id 'ok-1'"));
  EXPECT_TRUE(mentions(r, "invalid identifier 'bad id'"));
  EXPECT_TRUE(is_valid_id("opp_1.a-b"));
  EXPECT_FALSE(is_valid_id(""));
}

TEST(Validate, FixtureIsCleanAndIdempotent) {
  const auto p = fixtures::stethoscope_project();
  const auto copy = p;
  const auto a = validate_project(p);
  const auto b = validate_project(p);
  EXPECT_EQ(a, b);
  EXPECT_EQ(p, copy);
  for (const auto& i : a.issues) ADD_FAILURE() << i.location << ": " << i.message;
}

TEST(Validate, BrokenCrossReferences) {
  auto p = fixtures::stethoscope_project();
  p.links.push_back({"need01", "m99"});
  p.concepts[0].chart = "nope";
  p.pugh_matrices[0].reference = "Z";
  p.scoring_matrices[0].ratings[0][0] = 6;
  p.needs[0].importance = 7;
  const auto r = validate_project(p);
  EXPECT_TRUE(mentions(r, "unknown metric 'm99'"));
  EXPECT_TRUE(mentions(r, "unknown chart 'nope'"));
  EXPECT_TRUE(mentions(r, "reference 'Z'"));
  EXPECT_TRUE(mentions(r, "rating 6 outside 1..5"));
  EXPECT_TRUE(mentions(r, "importance 7 outside 1..5"));
}

TEST(Validate, ScoringWeightsMustSumToOne) {
  auto p = fixtures::stethoscope_project();
  p.scoring_matrices[0].criteria[0].weight = Rational::parse("0.2");
  EXPECT_TRUE(mentions(validate_project(p), "criterion weights sum ≠ 1 (sum is 1.1)"));
}

TEST(Validate, ScoringAncestorAndLeafTogether) {
  auto p = fixtures::stethoscope_project();
  auto& m = p.scoring_matrices[0];
  m.criteria[0] = {"ease-of-loading", Rational::parse("0.1")};
  EXPECT_TRUE(mentions(validate_project(p), "ancestor 'ease-of-use'"));
}

TEST(Validate, PughReferenceWarning) {
  auto p = fixtures::stethoscope_project();
  p.pugh_matrices[0].ratings[0][1] = 1;
  const auto r = validate_project(p);
  EXPECT_FALSE(r.has_errors());
  EXPECT_TRUE(mentions(r, "reference concept rated non-zero"));
}
