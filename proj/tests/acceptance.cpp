// Acceptance gate: one PASS/FAIL line per primary criterion.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dforge/fixtures/stethoscope.hpp"
#include "dforge/io/json.hpp"
#include "dforge/io/report.hpp"
#include "dforge/morpho/morph.hpp"
#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"
#include "dforge/selection/selection.hpp"
#include "dforge/tournament/funnel.hpp"

using namespace dforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << name;
  if (!c.ok) {
    std::cout << "  (" << c.why.str() << ")";
    ++failures;
  }
  std::cout << "\n";
}

void pugh_table(Check& c) {
  const auto start = Clock::now();
  const auto p = fixtures::stethoscope_project();
  const auto res = selection::screen(*p.find_pugh("screening"));
  const double elapsed = seconds_since(start);
  const std::vector<std::vector<int>> sums{{1, 3, 4}, {0, 8, 0}, {1, 5, 2}, {4, 2, 2}, {3, 3, 2}, {3, 4, 1}};
  const std::vector<int> nets{-3, 0, -1, 2, 1, 2}, ranks{6, 4, 5, 1, 3, 1};
  const std::vector<bool> go{false, false, false, true, true, true};
  c.expect(res.concepts.size() == 6, "six concepts");
  for (std::size_t i = 0; i < 6 && i < res.concepts.size(); ++i) {
    const auto& r = res.concepts[i];
    const std::string who = "concept " + r.concept_id;
    c.expect(r.plus == sums[i][0] && r.zero == sums[i][1] && r.minus == sums[i][2], who + " sums");
    c.expect(r.net == nets[i], who + " net");
    c.expect(r.rank == ranks[i], who + " rank");
    c.expect(r.proceed == go[i], who + " continue");
  }
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
}

void scoring_table(Check& c) {
  const auto p = fixtures::stethoscope_project();
  const auto res = selection::score(*p.find_scoring("scoring"));
  auto exact = [&](std::size_t i, const char* want) {
    const auto d = res.concepts[i].total.to_exact_decimal();
    c.expect(d && *d == ExactDecimal::parse(want) && d->to_string() == want,
             res.concepts[i].concept_id + " total " + res.concepts[i].total.to_string());
  };
  exact(0, "3.75");
  exact(2, "4.1");
  exact(3, "4.35");
  c.expect(res.concepts[3].rank == 1, "DF rank");
  c.expect(res.concepts[3].decision == selection::Decision::develop, "DF decision");
}

void scoring_audit(Check& c) {
  const auto p = fixtures::stethoscope_project();
  const auto& m = *p.find_scoring("scoring");
  const auto findings = selection::audit(m);
  // Hand-summed row products for concept E.
  const Rational oracle = Rational::parse("0.3") + Rational::parse("0.6") + Rational::parse("0.75") +
                          Rational::parse("0.4") + Rational::parse("0.6") + Rational::parse("0.6") +
                          Rational::parse("0.1") + Rational::parse("0.4");
  std::vector<selection::AuditFinding> totals;
  for (const auto& f : findings)
    if (f.aggregate == "total") totals.push_back(f);
  c.expect(totals.size() == 1, std::to_string(totals.size()) + " total-level findings");
  if (totals.size() == 1) {
    c.expect(totals[0].concept_id == "E", "finding concept");
    c.expect(totals[0].declared == "3.45", "declared value");
    c.expect(totals[0].computed == oracle.to_string() && oracle.to_string() == "3.75", "computed value");
  }
  const auto res = selection::score(m);
  c.expect(res.concepts[0].rank == 3 && res.concepts[1].rank == 3, "D and E tie at rank 3");
}

void morph_count(Check& c) {
  const auto p = fixtures::stethoscope_project();
  const auto& chart = *p.find_chart("stethoscope");
  c.expect(morpho::combination_count(chart) == BigInt(1152), "combination_count");
  morpho::ConceptEnumerator e(chart);
  std::set<morpho::Selection> seen;
  std::size_t produced = 0;
  while (auto s = e.next()) {
    seen.insert(*s);
    ++produced;
  }
  c.expect(produced == 1152 && seen.size() == 1152, std::to_string(seen.size()) + " distinct selections");
}

void funnel(Check& c) {
  const auto p = fixtures::stethoscope_project();
  const auto r = tournament::run_funnel(p);
  c.expect(r.survivors.size() == 1, "one survivor");
  if (r.survivors.size() == 1) {
    const auto it = std::find_if(p.opportunities.begin(), p.opportunities.end(),
                                 [&](const Opportunity& o) { return o.id == r.survivors[0]; });
    c.expect(it != p.opportunities.end() && it->title == "Advanced digital stethoscope", "survivor title");
  }
  bool flagged = false;
  for (const auto& f : r.stages.at(0).flags) {
    flagged |= f.kind == tournament::FlagKind::declared_count_mismatch &&
               f.message == "declared 10 survivors, computed 12";
  }
  c.expect(r.stages.at(0).survivors.size() == 12, "stage A computes 12");
  c.expect(flagged, "stage A count flag");
}

void target_grammar(Check& c) {
  // Marginal and ideal cells as printed, with whether each is numeric.
  struct Cell {
    const char* text;
    bool numeric;
  };
  const Cell cells[26][2] = {
      {{"10 -15 minutes", true}, {"Less than 10 min", false}},
      {{"75 -80 db", true}, {"80 db", true}},
      {{"available", false}, {"available", false}},
      {{"160 to 180 degree", true}, {"180 degree", true}},
      {{"90 to 100", true}, {"100", true}},
      {{"Bellow 4 watts", false}, {"4 watts", true}},
      {{"Good strength", false}, {"Excellent", false}},
      {{"Bellow 5 years", false}, {">= 5 years", true}},
      {{"30-35x", true}, {"40x", true}},
      {{"20 to 25 inch", true}, {"27 inch", true}},
      {{"150 to 170 g", true}, {"175", true}},
      {{"$10- $100", true}, {"$100", true}},
      {{"Much flexible", false}, {"Ideally flexible", false}},
      {{"50 to 70 db", true}, {"80db", true}},
      {{"2gb", true}, {"4gb", true}},
      {{"48 hours", true}, {"60 hours", true}},
      {{"$300", true}, {"$315", true}},
      {{"Yes", false}, {"Yes", false}},
      {{"93-94.4%", true}, {"98%", true}},
      {{"available", false}, {"available", false}},
      {{"0-50 degree", true}, {"-21 -100 degree", true}},
      {{"20-4000", true}, {"10-50000", true}},
      {{"40-175 bpm", true}, {"20- 200bpm", true}},
      {{"available", false}, {"available", false}},
      {{"12 meter", true}, {"15 meter", true}},
      {{"15 -93", true}, {"0-100", true}},
  };
  int parsed = 0;
  for (int row = 0; row < 26; ++row) {
    for (const auto& cell : cells[row]) {
      const auto k = needspec::parse_constraint(cell.text);
      ++parsed;
      const std::string where = std::string("row ") + std::to_string(row + 1) + " '" + cell.text + "'";
      c.expect(k.is_numeric() == cell.numeric, where + " kind");
      if (!cell.numeric) {
        c.expect(std::holds_alternative<needspec::Qualitative>(k.kind), where + " qualitative");
      } else {
        c.expect(needspec::parse_constraint(needspec::render_constraint(k)) == k, where + " roundtrip");
      }
    }
  }
  c.expect(parsed == 52, "52 cells");

  const auto p = fixtures::stethoscope_project();
  std::set<std::string> escaped;
  for (const auto& f : needspec::target_consistency(p))
    if (f.kind == needspec::TargetFindingKind::ideal_outside_marginal) escaped.insert(f.metric);
  const auto mass = p.metrics.at(10), cost = p.metrics.at(16);
  c.expect(mass.name == "Total mass of the digital stethoscope" && escaped.contains(mass.id), "mass flagged");
  c.expect(cost.name == "Cost for manufacturing" && escaped.contains(cost.id), "manufacturing cost flagged");
}

void property_suites(Check& c) {
  const auto start = Clock::now();
  const std::string cmd = std::string(DFORGE_PROPERTIES_PATH) + " --gtest_brief=1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double elapsed = seconds_since(start);
  c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "property suite failed");
  c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
}

void persistence(Check& c) {
  const auto p = fixtures::stethoscope_project();
  const auto text = io::save_project(p);
  c.expect(io::load_project(text) == p, "roundtrip equality");
  c.expect(io::save_project(io::load_project(text)) == text, "stable bytes");
  const auto a = io::markdown_report(p);
  const auto b = io::markdown_report(io::load_project(text));
  c.expect(!a.empty() && a == b, "markdown report bytes");
  const auto bundle_a = io::generate_report(p, io::ReportFormat::csv_bundle);
  const auto bundle_b = io::generate_report(p, io::ReportFormat::csv_bundle);
  c.expect(bundle_a == bundle_b, "csv bundle bytes");
}

}  // namespace

int main() {
  report("Pugh screening reproduces the screening table (sums, nets, ranks, continue; < 1 s)", pugh_table);
  report("Scoring totals D=3.75, F=4.1, DF=4.35 exact; DF rank 1, develop", scoring_table);
  report("Scoring audit: single total finding E 3.45 vs 3.75; D and E tie at rank 3", scoring_audit);
  report("Morphological count 1152; enumeration yields 1152 distinct selections", morph_count);
  report("Funnel: final survivor is the advanced digital stethoscope; stage A 10 vs 12 flagged", funnel);
  report("Target grammar: 52 cells classified, numeric cells roundtrip; mass and cost flagged", target_grammar);
  report("Property suites pass (>= 1000 cases each, < 30 s)", property_suites);
  report("Persistence roundtrip equality; deterministic report bytes", persistence);
  return failures == 0 ? 0 : 1;
}
