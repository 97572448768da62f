#pragma once

#include <string>
#include <vector>

namespace dforge::morpho {

/// One subproblem of a concept combination table.
struct MorphColumn {
  std::string name;
  std::vector<std::string> fragments;
  /// Label of the classification tree the fragments were drawn from, if any.
  std::string tree;

  bool operator==(const MorphColumn&) const = default;
};

struct MorphChart {
  std::string id;
  std::string name;
  std::vector<MorphColumn> columns;

  bool operator==(const MorphChart&) const = default;
};

/// A concept picks exactly one fragment label per chart column.
/// `selection[i]` is the label chosen for `chart.columns[i]`.
struct Concept {
  std::string id;
  std::string name;
  std::string chart;
  std::vector<std::string> selection;

  bool operator==(const Concept&) const = default;
};

}  // namespace dforge::morpho
