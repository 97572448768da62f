#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dforge {

/// Competition ("1,1,3") ranking by descending score: an item's rank is one
/// plus the number of items with a strictly greater score.
template <typename T>
std::vector<int> competition_rank(std::span<const T> scores) {
  std::vector<int> ranks(scores.size(), 1);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (scores[i] < scores[j]) ++ranks[i];
    }
  }
  return ranks;
}

template <typename T>
std::vector<int> competition_rank(const std::vector<T>& scores) {
  return competition_rank(std::span<const T>(scores));
}

}  // namespace dforge
