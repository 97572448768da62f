#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dforge/core/ranking.hpp"
#include "dforge/io/json.hpp"
#include "dforge/morpho/morph.hpp"
#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"
#include "dforge/selection/selection.hpp"
#include "dforge/sensitivity/sensitivity.hpp"

using namespace dforge;
using selection::PughMatrix;
using selection::ScoringMatrix;

namespace {

constexpr int kCases = 1000;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return between(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[between(0, static_cast<int>(v.size()) - 1)]; }

  /// n positive integers summing to total.
  std::vector<int> composition(int n, int total) {
    std::vector<int> cuts;
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < n - 1) chosen.insert(between(1, total - 1));
    std::vector<int> parts;
    int prev = 0;
    for (int c : chosen) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(total - prev);
    return parts;
  }

  ScoringMatrix scoring(int max_criteria, int max_concepts) {
    const int k = between(2, max_criteria);
    const int n = between(2, max_concepts);
    ScoringMatrix m;
    m.id = "m";
    const auto parts = composition(k, 100);
    for (int i = 0; i < k; ++i) m.criteria.push_back({"c" + std::to_string(i), Rational(parts[i], 100)});
    for (int c = 0; c < n; ++c) m.concepts.push_back("k" + std::to_string(c));
    m.ratings.assign(k, std::vector<int>(n));
    for (auto& row : m.ratings)
      for (auto& r : row) r = between(1, 5);
    return m;
  }

  PughMatrix pugh() {
    const int k = between(1, 10);
    const int n = between(1, 8);
    PughMatrix m;
    m.id = "p";
    for (int i = 0; i < k; ++i) m.criteria.push_back("c" + std::to_string(i));
    for (int c = 0; c < n; ++c) m.concepts.push_back("k" + std::to_string(c));
    const int ref = between(0, n - 1);
    m.reference = m.concepts[ref];
    m.ratings.assign(k, std::vector<int>(n));
    for (auto& row : m.ratings) {
      for (int c = 0; c < n; ++c) row[c] = c == ref ? 0 : between(-1, 1);
    }
    return m;
  }

  morpho::MorphChart chart() {
    morpho::MorphChart ch{"ch", "chart", {}};
    const int cols = between(1, 6);
    for (int c = 0; c < cols; ++c) {
      morpho::MorphColumn col{"col" + std::to_string(c), {}, ""};
      const int frags = between(1, 6);
      for (int f = 0; f < frags; ++f) col.fragments.push_back("f" + std::to_string(c) + "-" + std::to_string(f));
      ch.columns.push_back(col);
    }
    return ch;
  }

  ExactDecimal decimal() {
    const int whole = between(-500, 5000);
    const int frac_digits = between(0, 3);
    std::string text = std::to_string(whole);
    if (frac_digits > 0) {
      text += ".";
      for (int i = 0; i < frac_digits; ++i) text += static_cast<char>('0' + between(0, 9));
    }
    return ExactDecimal::parse(text);
  }

  needspec::Constraint constraint() {
    const std::vector<std::string> units{"", "hours", "hz", "g", "%", "gb", "meter", "Beat/min"};
    needspec::Constraint c;
    c.unit = pick(units);
    switch (between(0, 4)) {
      case 0: c.kind = needspec::AtLeast{decimal()}; break;
      case 1: c.kind = needspec::AtMost{decimal()}; break;
      case 2: {
        auto a = decimal(), b = decimal();
        if (b < a) std::swap(a, b);
        c.kind = needspec::Between{a, b};
        break;
      }
      case 3: c.kind = needspec::Exactly{decimal()}; break;
      default: {
        const std::vector<std::string> words{"available", "none", "wired", "Bluetooth", "LCD", "yes"};
        needspec::OneOf set;
        const int n = between(1, 4);
        for (int i = 0; i < n; ++i) set.values.push_back(pick(words));
        c.kind = set;
      }
    }
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<int> sort_oracle_rank(const std::vector<int>& scores) {
  auto sorted = scores;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<int> out;
  for (int s : scores) {
    const auto first = std::find(sorted.begin(), sorted.end(), s);
    out.push_back(static_cast<int>(first - sorted.begin()) + 1);
  }
  return out;
}

// Totals after setting criterion k to w and rescaling the rest, in doubles.
std::vector<double> totals_at(const ScoringMatrix& m, std::size_t k, double w) {
  const double old = m.criteria[k].weight.to_double();
  std::vector<double> totals(m.concepts.size(), 0.0);
  for (std::size_t i = 0; i < m.criteria.size(); ++i) {
    const double wi = i == k ? w : m.criteria[i].weight.to_double() * (1 - w) / (1 - old);
    for (std::size_t c = 0; c < m.concepts.size(); ++c) totals[c] += wi * m.ratings[i][c];
  }
  return totals;
}

// Sign changes of total_a - total_b over w in {0, 0.001, ..., 0.999, 1}, bisected to 1e-12.
std::vector<double> oracle_crossings(const ScoringMatrix& m, std::size_t k, std::size_t a, std::size_t b) {
  auto diff = [&](double w) {
    const auto t = totals_at(m, k, w);
    return t[a] - t[b];
  };
  constexpr double eps = 1e-12;
  std::vector<double> roots;
  double prev_w = 0, prev_d = diff(0);
  if (std::abs(prev_d) < eps) roots.push_back(0);
  for (int i = 1; i <= 1000; ++i) {
    const double w = i / 1000.0;
    const double d = diff(w);
    if (std::abs(d) < eps) {
      if (std::abs(prev_d) >= eps && w < 1) roots.push_back(w);
    } else if (std::abs(prev_d) >= eps && (d > 0) != (prev_d > 0)) {
      double lo = prev_w, hi = w;
      const bool lo_pos = prev_d > 0;
      while (hi - lo > 1e-12) {
        const double mid = (lo + hi) / 2;
        ((diff(mid) > 0) == lo_pos ? lo : hi) = mid;
      }
      roots.push_back((lo + hi) / 2);
    }
    prev_w = w;
    prev_d = d;
  }
  return roots;
}

// The difference is linear in w, so two exact zeros mean it vanishes everywhere.
bool identically_tied(const ScoringMatrix& m, std::size_t k, std::size_t a, std::size_t b) {
  for (const Rational w : {Rational(0), Rational(1, 2)}) {
    const auto s = selection::score(sensitivity::apply_perturbation(m, {m.criteria[k].id, w}));
    if (s.concepts[a].total != s.concepts[b].total) return false;
  }
  return true;
}

}  // namespace

TEST(Property, CompetitionRankMatchesSortOracle) {
  Gen g(1);
  for (int t = 0; t < kCases; ++t) {
    std::vector<int> scores(g.between(0, 12));
    for (auto& s : scores) s = g.between(-4, 4);
    const auto ranks = competition_rank(scores);
    ASSERT_EQ(ranks, sort_oracle_rank(scores));
    for (std::size_t i = 0; i < scores.size(); ++i)
      for (std::size_t j = 0; j < scores.size(); ++j) {
        if (scores[i] > scores[j]) ASSERT_LT(ranks[i], ranks[j]);
        if (scores[i] == scores[j]) ASSERT_EQ(ranks[i], ranks[j]);
      }
  }
}

TEST(Property, EnumerationCountIsProductOfColumnSizes) {
  Gen g(2);
  for (int t = 0; t < kCases; ++t) {
    auto chart = g.chart();
    BigInt product = 1;
    for (const auto& c : chart.columns) product *= c.fragments.size();
    ASSERT_EQ(morpho::combination_count(chart), product);

    morpho::ConceptEnumerator e(chart);
    std::set<morpho::Selection> seen;
    std::optional<morpho::Selection> prev;
    while (auto s = e.next()) {
      if (prev) ASSERT_LT(*prev, *s);
      ASSERT_TRUE(seen.insert(*s).second);
      prev = s;
    }
    ASSERT_EQ(BigInt(seen.size()), product);

    std::reverse(chart.columns.begin(), chart.columns.end());
    ASSERT_EQ(morpho::combination_count(chart), product);
  }
}

TEST(Property, DefinedConceptsAppearInEnumeration) {
  Gen g(3);
  for (int t = 0; t < kCases; ++t) {
    const auto chart = g.chart();
    std::map<std::string, std::string> sel;
    for (const auto& c : chart.columns) sel[c.name] = g.pick(c.fragments);
    const bool bogus = g.coin();
    if (bogus) sel[chart.columns[0].name] = "not-a-fragment";
    morpho::ConceptEnumerator e(chart);
    bool listed = false;
    while (auto s = e.next()) {
      const auto labels = e.labels(*s);
      bool same = true;
      for (std::size_t i = 0; i < labels.size(); ++i) same &= labels[i] == sel[chart.columns[i].name];
      listed |= same;
    }
    bool defined = true;
    try {
      morpho::define_concept(chart, "x", "x", sel);
    } catch (const morpho::ConceptError&) {
      defined = false;
    }
    ASSERT_EQ(defined, listed);
    ASSERT_EQ(defined, !bogus);
  }
}

TEST(Property, PughSumIdentity) {
  Gen g(4);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.pugh();
    const auto res = selection::screen(m);
    std::vector<int> nets;
    for (std::size_t c = 0; c < res.concepts.size(); ++c) {
      const auto& r = res.concepts[c];
      ASSERT_EQ(r.plus + r.zero + r.minus, static_cast<int>(m.criteria.size()));
      ASSERT_EQ(r.net, r.plus - r.minus);
      if (m.concepts[c] == m.reference) ASSERT_EQ(r.net, 0);
      nets.push_back(r.net);
    }
    for (std::size_t c = 0; c < res.concepts.size(); ++c) ASSERT_EQ(res.concepts[c].rank, sort_oracle_rank(nets)[c]);
  }
}

TEST(Property, ScoringConvexBound) {
  Gen g(5);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(8, 6);
    const auto res = selection::score(m);
    Rational wsum;
    for (const auto& c : m.criteria) wsum += c.weight;
    ASSERT_EQ(wsum, Rational(1));
    for (std::size_t c = 0; c < m.concepts.size(); ++c) {
      int lo = 5, hi = 1;
      for (const auto& row : m.ratings) {
        lo = std::min(lo, row[c]);
        hi = std::max(hi, row[c]);
      }
      ASSERT_LE(Rational(lo), res.concepts[c].total);
      ASSERT_LE(res.concepts[c].total, Rational(hi));
    }
  }
}

TEST(Property, ScalingWeightsKeepsOrder) {
  Gen g(6);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(6, 5);
    auto scaled = m;
    const Rational factor(g.between(1, 9), g.between(1, 9));
    Rational sum;
    for (auto& c : scaled.criteria) {
      c.weight *= factor;
      sum += c.weight;
    }
    for (auto& c : scaled.criteria) c.weight /= sum;
    const auto a = selection::score(m), b = selection::score(scaled);
    for (std::size_t c = 0; c < m.concepts.size(); ++c) ASSERT_EQ(a.concepts[c].rank, b.concepts[c].rank);
  }
}

TEST(Property, DerivePughAntisymmetry) {
  Gen g(7);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(6, 5);
    const auto r = static_cast<std::size_t>(g.between(0, static_cast<int>(m.concepts.size()) - 1));
    const auto c = static_cast<std::size_t>(g.between(0, static_cast<int>(m.concepts.size()) - 1));
    const auto from_r = selection::derive_pugh(m, m.concepts[r]);
    const auto from_c = selection::derive_pugh(m, m.concepts[c]);
    for (std::size_t k = 0; k < m.criteria.size(); ++k) {
      ASSERT_EQ(from_r.ratings[k][c], -from_c.ratings[k][r]);
      ASSERT_EQ(from_r.ratings[k][r], 0);
    }
  }
}

TEST(Property, RenormalizedWeightsSumToOne) {
  Gen g(8);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(8, 3);
    const auto k = static_cast<std::size_t>(g.between(0, static_cast<int>(m.criteria.size()) - 1));
    const Rational w(g.between(0, 999), 1000);
    const auto p = sensitivity::apply_perturbation(m, {m.criteria[k].id, w});
    Rational sum;
    for (const auto& c : p.criteria) sum += c.weight;
    ASSERT_EQ(sum, Rational(1));
    ASSERT_EQ(p.criteria[k].weight, w);
    ASSERT_EQ(p.ratings, m.ratings);
  }
}

TEST(Property, EqualRatingsKeepRankOrder) {
  Gen g(9);
  for (int t = 0; t < kCases; ++t) {
    auto m = g.scoring(6, 5);
    const auto k = static_cast<std::size_t>(g.between(0, static_cast<int>(m.criteria.size()) - 1));
    const int shared = g.between(1, 5);
    for (auto& r : m.ratings[k]) r = shared;
    const auto base = selection::score(m);
    const Rational w(g.between(0, 99), 100);
    const auto moved = selection::score(sensitivity::apply_perturbation(m, {m.criteria[k].id, w}));
    for (std::size_t c = 0; c < m.concepts.size(); ++c) ASSERT_EQ(base.concepts[c].rank, moved.concepts[c].rank);
  }
}

TEST(Property, CrossingsMatchSweepAndBisect) {
  Gen g(10);
  int crossings_seen = 0;
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(6, 5);
    const auto k = static_cast<std::size_t>(g.between(0, static_cast<int>(m.criteria.size()) - 1));
    for (std::size_t a = 0; a < m.concepts.size(); ++a) {
      for (std::size_t b = a + 1; b < m.concepts.size(); ++b) {
        const auto res = sensitivity::crossing_points(m, m.criteria[k].id, m.concepts[a], m.concepts[b]);
        if (identically_tied(m, k, a, b)) {
          ASSERT_TRUE(res.always_tied);
          continue;
        }
        ASSERT_FALSE(res.always_tied);
        const auto oracle = oracle_crossings(m, k, a, b);
        ASSERT_EQ(res.points.size(), oracle.size()) << "case " << t;
        for (std::size_t i = 0; i < oracle.size(); ++i) {
          const auto& pt = res.points[i];
          ASSERT_LE(Rational(0), pt.weight);
          ASSERT_LT(pt.weight, Rational(1));
          ASSERT_NEAR(pt.weight.to_double(), oracle[i], 1e-9) << "case " << t;
          const auto p = sensitivity::apply_perturbation(m, {m.criteria[k].id, pt.weight});
          const auto s = selection::score(p);
          ASSERT_EQ(s.concepts[a].total, s.concepts[b].total);
          ++crossings_seen;
        }
      }
    }
  }
  EXPECT_GT(crossings_seen, 100);
}

TEST(Property, TrajectoryOrderChangesAreBracketed) {
  Gen g(11);
  for (int t = 0; t < kCases; ++t) {
    const auto m = g.scoring(5, 4);
    const auto& crit = m.criteria[g.between(0, static_cast<int>(m.criteria.size()) - 1)].id;
    const auto traj = sensitivity::rank_trajectory(m, crit, static_cast<std::size_t>(g.between(2, 12)));
    const auto cross = sensitivity::all_crossing_points(m, crit);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      if (traj[i].ranks == traj[i - 1].ranks) continue;
      bool bracketed = false;
      for (const auto& c : cross) bracketed |= traj[i - 1].weight <= c.weight && c.weight <= traj[i].weight;
      ASSERT_TRUE(bracketed) << "case " << t;
    }
  }
}

TEST(Property, ConstraintRoundtrip) {
  Gen g(12);
  for (int t = 0; t < kCases; ++t) {
    const auto c = g.constraint();
    const auto text = needspec::render_constraint(c);
    ASSERT_EQ(needspec::parse_constraint(text), c) << text;
  }
}

TEST(Property, AtLeastAndAtMostAreMonotone) {
  Gen g(13);
  for (int t = 0; t < kCases; ++t) {
    const auto bound = g.decimal();
    auto v1 = g.decimal(), v2 = g.decimal();
    if (v2 < v1) std::swap(v1, v2);
    const needspec::Constraint at_least{needspec::AtLeast{bound}, ""};
    const needspec::Constraint at_most{needspec::AtMost{bound}, ""};
    if (needspec::satisfies(at_least, v1)) ASSERT_TRUE(needspec::satisfies(at_least, v2));
    if (needspec::satisfies(at_most, v2)) ASSERT_TRUE(needspec::satisfies(at_most, v1));
  }
}

TEST(Property, CoveragePartitionsNeeds) {
  Gen g(14);
  for (int t = 0; t < kCases; ++t) {
    std::vector<needspec::NeedStatement> needs(g.between(0, 12));
    std::vector<needspec::Metric> metrics(g.between(1, 12));
    for (std::size_t i = 0; i < needs.size(); ++i) needs[i].id = "n" + std::to_string(i);
    for (std::size_t i = 0; i < metrics.size(); ++i) metrics[i].id = "m" + std::to_string(i);
    std::vector<needspec::NeedMetricLink> links;
    std::set<std::string> covered;
    if (!needs.empty()) {
      const int n = g.between(0, 20);
      for (int i = 0; i < n; ++i) {
        links.push_back({g.pick(needs).id, g.pick(metrics).id});
        covered.insert(links.back().need);
      }
    }
    const auto r = needspec::coverage_report(needs, metrics, links);
    ASSERT_EQ(r.uncovered_needs.size() + covered.size(), needs.size());
    for (const auto& u : r.uncovered_needs) ASSERT_FALSE(covered.contains(u));
  }
}

TEST(Property, SatisfactionTotalsAreLinear) {
  Gen g(15);
  for (int t = 0; t < kCases; ++t) {
    std::vector<needspec::Metric> metrics(g.between(1, 10));
    for (std::size_t i = 0; i < metrics.size(); ++i) {
      metrics[i].id = "m" + std::to_string(i);
      metrics[i].importance = g.between(1, 5);
    }
    std::vector<needspec::BenchmarkProduct> products(g.between(1, 4));
    auto doubled = products;
    for (std::size_t p = 0; p < products.size(); ++p) {
      for (const auto& m : metrics) {
        if (g.coin()) continue;
        const int dots = g.between(1, 2);
        products[p].satisfaction[m.id] = dots;
        doubled[p].satisfaction[m.id] = 2 * dots;
      }
    }
    const auto a = needspec::benchmark_table(products, metrics, needspec::BenchmarkMode::satisfaction);
    const auto b = needspec::benchmark_table(doubled, metrics, needspec::BenchmarkMode::satisfaction);
    for (std::size_t p = 0; p < products.size(); ++p) ASSERT_EQ(b.weighted_totals[p], 2 * a.weighted_totals[p]);
  }
}

TEST(Property, ScoringMatrixPersistenceRoundtrip) {
  Gen g(16);
  for (int t = 0; t < kCases; ++t) {
    Project p;
    p.scoring_matrices.push_back(g.scoring(6, 5));
    p.targets.push_back({"m", g.constraint(), g.constraint()});
    ASSERT_EQ(io::load_project(io::save_project(p)), p);
  }
}
