#include "dforge/sensitivity/sensitivity.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

#include "dforge/selection/selection.hpp"

namespace dforge::sensitivity {

namespace {

std::size_t criterion_index(const selection::ScoringMatrix& m, const std::string& criterion) {
  for (std::size_t k = 0; k < m.criteria.size(); ++k) {
    if (m.criteria[k].id == criterion) return k;
  }
  throw PerturbationError("matrix '" + m.id + "' has no criterion '" + criterion + "'");
}

std::size_t concept_index(const selection::ScoringMatrix& m, const std::string& id) {
  for (std::size_t c = 0; c < m.concepts.size(); ++c) {
    if (m.concepts[c] == id) return c;
  }
  throw PerturbationError("matrix '" + m.id + "' has no concept '" + id + "'");
}

Rational total_of(const selection::ScoringMatrix& m, std::size_t c) {
  Rational t;
  for (std::size_t k = 0; k < m.criteria.size(); ++k) t += m.criteria[k].weight * Rational(m.ratings[k][c]);
  return t;
}

std::string order_text(int sign, const std::string& a, const std::string& b) {
  if (sign > 0) return a + ">" + b;
  if (sign < 0) return b + ">" + a;
  return a + "=" + b;
}

}  // namespace

selection::ScoringMatrix apply_perturbation(const selection::ScoringMatrix& matrix, const WeightPerturbation& p) {
  const std::size_t k = criterion_index(matrix, p.criterion);
  if (p.new_weight < Rational(0) || p.new_weight >= Rational(1)) {
    throw PerturbationError("new weight " + p.new_weight.to_display() + " is outside [0, 1)");
  }
  const Rational old = matrix.criteria[k].weight;
  if (old == Rational(1)) throw PerturbationError("degenerate renormalization: criterion weight is 1");
  if (p.new_weight == old) return matrix;
  const Rational factor = (Rational(1) - p.new_weight) / (Rational(1) - old);
  selection::ScoringMatrix out = matrix;
  for (std::size_t j = 0; j < out.criteria.size(); ++j) {
    out.criteria[j].weight = j == k ? p.new_weight : out.criteria[j].weight * factor;
  }
  // Declared aggregates describe the original weights only.
  out.declared.reset();
  return out;
}

CrossingResult crossing_points(const selection::ScoringMatrix& matrix, const std::string& criterion,
                               const std::string& first, const std::string& second) {
  const std::size_t k = criterion_index(matrix, criterion);
  const std::size_t i = concept_index(matrix, first);
  const std::size_t j = concept_index(matrix, second);
  const Rational wk = matrix.criteria[k].weight;
  if (wk == Rational(1)) throw PerturbationError("degenerate renormalization: criterion weight is 1");

  // d(w) = total_i(w) - total_j(w) = a*w + b*(1 - w), with a = d(1), b = d(0).
  const Rational a = Rational(matrix.ratings[k][i] - matrix.ratings[k][j]);
  const Rational b = (total_of(matrix, i) - total_of(matrix, j) - a * wk) / (Rational(1) - wk);

  CrossingResult result;
  if (a == b) {
    result.always_tied = a.is_zero();
    return result;
  }
  const Rational w = b / (b - a);
  if (w < Rational(0) || w >= Rational(1)) return result;
  const int slope = (a - b).sign();
  result.points.push_back({criterion, w, first, second, order_text(-slope, first, second),
                           order_text(slope, first, second)});
  return result;
}

std::vector<CrossingPoint> all_crossing_points(const selection::ScoringMatrix& matrix, const std::string& criterion) {
  std::vector<CrossingPoint> out;
  for (std::size_t i = 0; i < matrix.concepts.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.concepts.size(); ++j) {
      auto r = crossing_points(matrix, criterion, matrix.concepts[i], matrix.concepts[j]);
      out.insert(out.end(), r.points.begin(), r.points.end());
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CrossingPoint& x, const CrossingPoint& y) { return x.weight < y.weight; });
  return out;
}

std::vector<TrajectoryPoint> rank_trajectory(const selection::ScoringMatrix& matrix, const std::string& criterion,
                                             std::size_t samples, unsigned threads) {
  if (samples < 2) throw PerturbationError("a trajectory needs at least 2 samples");
  criterion_index(matrix, criterion);

  auto evaluate = [&](std::size_t s) {
    TrajectoryPoint pt;
    pt.weight = kSweepCap * Rational(static_cast<std::int64_t>(s)) / Rational(static_cast<std::int64_t>(samples - 1));
    const auto perturbed = apply_perturbation(matrix, {criterion, pt.weight});
    const auto scored = selection::score(perturbed);
    std::vector<std::size_t> idx(scored.concepts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return scored.concepts[x].rank < scored.concepts[y].rank;
    });
    for (const auto& c : scored.concepts) {
      pt.ranks.push_back(c.rank);
      pt.totals.push_back(c.total);
    }
    for (auto x : idx) pt.order.push_back(scored.concepts[x].concept_id);
    return pt;
  };

  std::vector<TrajectoryPoint> out(samples);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, samples));
  if (threads <= 1) {
    for (std::size_t s = 0; s < samples; ++s) out[s] = evaluate(s);
    return out;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t s = t; s < samples; s += threads) out[s] = evaluate(s);
    }));
  }
  for (auto& w : workers) w.get();
  return out;
}

}  // namespace dforge::sensitivity
