#include "dforge/morpho/morph.hpp"

#include <algorithm>
#include <set>

namespace dforge::morpho {

std::vector<std::string> chart_problems(const MorphChart& chart) {
  std::vector<std::string> problems;
  if (chart.columns.empty()) problems.push_back("chart has no columns");
  std::set<std::string> names;
  for (const auto& col : chart.columns) {
    if (!names.insert(col.name).second) problems.push_back("duplicate column '" + col.name + "'");
    if (col.fragments.empty()) problems.push_back("column '" + col.name + "' has no fragments");
    std::set<std::string> labels;
    for (const auto& f : col.fragments) {
      if (!labels.insert(f).second) {
        problems.push_back("column '" + col.name + "' repeats fragment '" + f + "'");
      }
    }
  }
  return problems;
}

BigInt combination_count(const MorphChart& chart) {
  if (chart.columns.empty()) return 0;
  BigInt count = 1;
  for (const auto& col : chart.columns) count *= col.fragments.size();
  return count;
}

ConceptEnumerator::ConceptEnumerator(const MorphChart& chart, std::vector<Exclusion> exclusions,
                                     std::optional<std::size_t> limit)
    : chart_(&chart), limit_(limit) {
  for (const auto& col : chart.columns) {
    std::vector<std::size_t> allowed;
    for (std::size_t f = 0; f < col.fragments.size(); ++f) {
      const bool excluded = std::any_of(exclusions.begin(), exclusions.end(), [&](const Exclusion& e) {
        return (e.column.empty() || e.column == col.name) && e.fragment == col.fragments[f];
      });
      if (!excluded) allowed.push_back(f);
    }
    if (allowed.empty()) done_ = true;
    allowed_.push_back(std::move(allowed));
  }
  if (allowed_.empty()) done_ = true;
  cursor_.assign(allowed_.size(), 0);
}

std::optional<Selection> ConceptEnumerator::next() {
  if (done_ || (limit_ && produced_ >= *limit_)) return std::nullopt;
  Selection s(allowed_.size());
  for (std::size_t c = 0; c < allowed_.size(); ++c) s[c] = allowed_[c][cursor_[c]];
  ++produced_;

  // Odometer increment, last column fastest.
  std::size_t c = allowed_.size();
  while (c > 0) {
    --c;
    if (++cursor_[c] < allowed_[c].size()) break;
    cursor_[c] = 0;
    if (c == 0) done_ = true;
  }
  return s;
}

std::vector<std::string> ConceptEnumerator::labels(const Selection& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (std::size_t c = 0; c < s.size(); ++c) out.push_back(chart_->columns[c].fragments[s[c]]);
  return out;
}

Concept define_concept(const MorphChart& chart, std::string id, std::string name,
                       const std::map<std::string, std::string>& selection) {
  Concept result{std::move(id), std::move(name), chart.id, {}};
  std::vector<std::string> missing;
  for (const auto& col : chart.columns) {
    auto it = selection.find(col.name);
    if (it == selection.end()) {
      missing.push_back(col.name);
      continue;
    }
    if (std::find(col.fragments.begin(), col.fragments.end(), it->second) == col.fragments.end()) {
      throw ConceptError("unknown fragment '" + it->second + "' in column '" + col.name + "'");
    }
    result.selection.push_back(it->second);
  }
  if (!missing.empty()) {
    std::string msg = "missing column";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i == 0 ? " '" : ", '") + missing[i] + "'";
    throw ConceptError(msg);
  }
  for (const auto& [column, label] : selection) {
    const bool known = std::any_of(chart.columns.begin(), chart.columns.end(),
                                   [&](const MorphColumn& c) { return c.name == column; });
    if (!known) throw ConceptError("unknown column '" + column + "'");
  }
  return result;
}

std::vector<std::string> concept_problems(const MorphChart& chart, const Concept& c) {
  std::vector<std::string> problems;
  if (c.selection.size() != chart.columns.size()) {
    problems.push_back("selection has " + std::to_string(c.selection.size()) + " entries for " +
                       std::to_string(chart.columns.size()) + " columns");
    return problems;
  }
  for (std::size_t i = 0; i < chart.columns.size(); ++i) {
    const auto& col = chart.columns[i];
    if (std::find(col.fragments.begin(), col.fragments.end(), c.selection[i]) == col.fragments.end()) {
      problems.push_back("unknown fragment '" + c.selection[i] + "' in column '" + col.name + "'");
    }
  }
  return problems;
}

}  // namespace dforge::morpho
