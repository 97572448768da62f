#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dforge/core/error.hpp"
#include "dforge/core/project.hpp"
#include "dforge/core/rational.hpp"
#include "dforge/morpho/types.hpp"
#include "dforge/selection/types.hpp"

namespace dforge::selection {

// ---------------------------------------------------------------------------
// Screening

/// Which concepts continue after screening.
struct ContinueRule {
  enum class Kind { net_positive, top_k, net_at_least };
  Kind kind = Kind::net_positive;
  int value = 0;  // k for top_k, threshold for net_at_least

  static ContinueRule net_positive() { return {Kind::net_positive, 0}; }
  static ContinueRule top_k(int k) { return {Kind::top_k, k}; }
  static ContinueRule net_at_least(int n) { return {Kind::net_at_least, n}; }
};

struct PughConceptResult {
  std::string concept_id;
  int plus = 0;
  int zero = 0;
  int minus = 0;
  int net = 0;
  int rank = 0;
  bool proceed = false;

  bool operator==(const PughConceptResult&) const = default;
};

struct PughResult {
  std::vector<PughConceptResult> concepts;
};

/// Sums +/0/- per concept, ranks by descending net with competition ranking.
PughResult screen(const PughMatrix& matrix, ContinueRule rule = ContinueRule::net_positive());

// ---------------------------------------------------------------------------
// Scoring

struct DecisionRule {
  /// Concepts ranked at or above this are marked develop.
  int develop_through_rank = 1;
};

struct ScoringConceptResult {
  std::string concept_id;
  std::vector<Rational> weighted;  // per criterion: weight * rating
  Rational total;
  int rank = 0;
  Decision decision = Decision::drop;
};

struct ScoringResult {
  std::vector<ScoringConceptResult> concepts;
};

/// Exact weighted sums. Ranks use competition ranking on totals.
ScoringResult score(const ScoringMatrix& matrix, DecisionRule rule = {});

/// Per-concept contribution of each root criterion of `set`: the sum of the
/// weighted scores of the matrix criteria beneath it. Matrix criteria not in
/// the set are reported under their own id.
std::map<std::string, std::vector<Rational>> root_contributions(const ScoringMatrix& matrix,
                                                                const ScoringResult& result,
                                                                const CriterionSet& set);

/// Adjacent concepts (in computed order) whose totals differ by less than
/// `threshold`, rendered as report annotations.
std::vector<std::string> significance_notes(const ScoringResult& result, const Rational& threshold);

// ---------------------------------------------------------------------------
// Audit

struct AuditFinding {
  std::string matrix;
  /// "total", "weighted", "rank", "decision", "plus", "zero", "minus", "net", "continue"
  std::string aggregate;
  std::string concept_id;
  std::string criterion;  // weighted cells only
  std::string declared;
  std::string computed;

  bool operator==(const AuditFinding&) const = default;
};

class NothingToAuditError : public Error {
 public:
  NothingToAuditError() : Error("nothing to audit: matrix has no declared overlay") {}
};

/// One finding per declared value that disagrees with recomputation.
std::vector<AuditFinding> audit(const PughMatrix& matrix, ContinueRule rule = ContinueRule::net_positive());
std::vector<AuditFinding> audit(const ScoringMatrix& matrix, DecisionRule rule = {});

// ---------------------------------------------------------------------------
// Concept combination and Pugh derivation

struct FromA {};
struct FromB {};
struct Explicit {
  std::string fragment;
};
using ColumnResolution = std::variant<FromA, FromB, Explicit>;

/// Builds a concept taking each column from `a`, `b` or an explicit fragment.
/// Columns where a and b agree need no resolution. Throws morpho::ConceptError
/// listing every disagreeing column left unresolved.
morpho::Concept combine_concepts(const morpho::MorphChart& chart, const morpho::Concept& a,
                                 const morpho::Concept& b, std::string id, std::string name,
                                 const std::map<std::string, ColumnResolution>& resolution);

/// Relative ratings: sign(cardinal(c, k) - cardinal(reference, k)).
PughMatrix derive_pugh(const ScoringMatrix& matrix, const std::string& reference);

}  // namespace dforge::selection
