#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dforge/core/decimal.hpp"
#include "dforge/core/error.hpp"
#include "dforge/morpho/types.hpp"

namespace dforge::morpho {

class ConceptError : public Error {
 public:
  using Error::Error;
};

/// Problems with the chart itself (empty columns, duplicate labels), as text.
std::vector<std::string> chart_problems(const MorphChart& chart);

/// Product of the column sizes.
BigInt combination_count(const MorphChart& chart);

/// Excludes `fragment` from `column`, or from every column when column is empty.
struct Exclusion {
  std::string column;
  std::string fragment;
};

/// Fragment indices, one per column.
using Selection = std::vector<std::size_t>;

/// Streams selections in lexicographic order (first column most significant,
/// fragments in chart order). Excluded fragments are skipped outright, so
/// filtering costs nothing per rejected combination.
class ConceptEnumerator {
 public:
  ConceptEnumerator(const MorphChart& chart, std::vector<Exclusion> exclusions = {},
                    std::optional<std::size_t> limit = std::nullopt);

  /// Next selection, or nullopt when the stream is exhausted.
  std::optional<Selection> next();

  /// Selection rendered as fragment labels.
  std::vector<std::string> labels(const Selection& s) const;

 private:
  const MorphChart* chart_;
  std::vector<std::vector<std::size_t>> allowed_;  // per column, allowed fragment indices
  std::vector<std::size_t> cursor_;                // per column, position in allowed_
  std::optional<std::size_t> limit_;
  std::size_t produced_ = 0;
  bool done_ = false;
};

/// Validates and builds a concept from a column-name -> fragment-label map.
/// Throws ConceptError naming the missing column or the unknown fragment.
Concept define_concept(const MorphChart& chart, std::string id, std::string name,
                       const std::map<std::string, std::string>& selection);

/// Checks an existing concept against its chart; empty when valid.
std::vector<std::string> concept_problems(const MorphChart& chart, const Concept& c);

}  // namespace dforge::morpho
