#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dforge/core/error.hpp"
#include "dforge/core/rational.hpp"
#include "dforge/selection/types.hpp"

namespace dforge::sensitivity {

class PerturbationError : public Error {
 public:
  using Error::Error;
};

struct WeightPerturbation {
  std::string criterion;
  Rational new_weight;
};

/// Sets one criterion's weight and rescales every other weight by
/// (1 - new) / (1 - old), so the weights still sum to exactly 1.
///
/// Throws PerturbationError for an unknown criterion, a new weight outside
/// [0, 1), or an old weight of 1 ("degenerate renormalization").
selection::ScoringMatrix apply_perturbation(const selection::ScoringMatrix& matrix, const WeightPerturbation& p);

struct CrossingPoint {
  std::string criterion;
  Rational weight;
  std::string first;   // concept ids of the pair
  std::string second;
  /// Which concept leads just below / just above the crossing, e.g. "D>F".
  std::string order_below;
  std::string order_above;

  bool operator==(const CrossingPoint&) const = default;
};

struct CrossingResult {
  bool always_tied = false;
  std::vector<CrossingPoint> points;  // at most one per pair
};

/// Weights w in [0, 1) for `criterion` at which the two concepts' totals are
/// equal under proportional renormalization. The total difference is linear
/// in w, so a pair crosses at most once.
CrossingResult crossing_points(const selection::ScoringMatrix& matrix, const std::string& criterion,
                               const std::string& first, const std::string& second);

/// Crossings for every concept pair, ordered by weight.
std::vector<CrossingPoint> all_crossing_points(const selection::ScoringMatrix& matrix, const std::string& criterion);

struct TrajectoryPoint {
  Rational weight;
  std::vector<int> ranks;           // per matrix concept
  std::vector<std::string> order;   // concept ids, best first (ties keep matrix order)
  std::vector<Rational> totals;     // per matrix concept
};

/// Upper end of sweeps; w -> 1 collapses every other weight to zero.
inline const Rational kSweepCap{BigInt(99), BigInt(100)};

/// Scores the matrix at `samples` evenly spaced weights in [0, 0.99].
/// Samples are evaluated on `threads` workers (0 = hardware concurrency).
std::vector<TrajectoryPoint> rank_trajectory(const selection::ScoringMatrix& matrix, const std::string& criterion,
                                             std::size_t samples, unsigned threads = 1);

}  // namespace dforge::sensitivity
