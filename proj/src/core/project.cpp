#include "dforge/core/project.hpp"

#include <algorithm>
#include <cctype>

namespace dforge {

namespace {

template <typename Range>
auto find_by_id(Range& range, std::string_view id) -> decltype(&*range.begin()) {
  auto it = std::find_if(range.begin(), range.end(), [&](const auto& x) { return x.id == id; });
  return it == range.end() ? nullptr : &*it;
}

}  // namespace

const Criterion* Project::find_criterion(std::string_view id) const {
  for (const auto& set : criterion_sets) {
    if (const auto* c = find_by_id(set.criteria, id)) return c;
  }
  return nullptr;
}

const morpho::MorphChart* Project::find_chart(std::string_view id) const { return find_by_id(charts, id); }
const morpho::Concept* Project::find_concept(std::string_view id) const { return find_by_id(concepts, id); }
const needspec::Metric* Project::find_metric(std::string_view id) const { return find_by_id(metrics, id); }
const selection::PughMatrix* Project::find_pugh(std::string_view id) const { return find_by_id(pugh_matrices, id); }
const selection::ScoringMatrix* Project::find_scoring(std::string_view id) const {
  return find_by_id(scoring_matrices, id);
}
selection::ScoringMatrix* Project::find_scoring(std::string_view id) { return find_by_id(scoring_matrices, id); }

bool is_valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace dforge
