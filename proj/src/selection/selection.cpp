#include "dforge/selection/selection.hpp"

#include <algorithm>
#include <numeric>

#include "dforge/core/ranking.hpp"
#include "dforge/morpho/morph.hpp"

namespace dforge::selection {

std::string_view to_string(Decision d) { return d == Decision::develop ? "develop" : "drop"; }

Decision parse_decision(std::string_view text) {
  if (text == "develop" || text == "Develop") return Decision::develop;
  if (text == "drop" || text == "Drop" || text == "no" || text == "No") return Decision::drop;
  throw Error("unknown decision '" + std::string(text) + "'");
}

namespace {

bool continues(const ContinueRule& rule, int net, int rank) {
  switch (rule.kind) {
    case ContinueRule::Kind::net_positive: return net > 0;
    case ContinueRule::Kind::top_k: return rank <= rule.value;
    case ContinueRule::Kind::net_at_least: return net >= rule.value;
  }
  return false;
}

void check_shape(const std::vector<std::vector<int>>& ratings, std::size_t criteria, std::size_t concepts,
                 const std::string& id) {
  if (ratings.size() != criteria) {
    throw Error("matrix '" + id + "': " + std::to_string(ratings.size()) + " rating rows for " +
                std::to_string(criteria) + " criteria");
  }
  for (const auto& row : ratings) {
    if (row.size() != concepts) {
      throw Error("matrix '" + id + "': rating row has " + std::to_string(row.size()) + " cells for " +
                  std::to_string(concepts) + " concepts");
    }
  }
}

}  // namespace

PughResult screen(const PughMatrix& matrix, ContinueRule rule) {
  check_shape(matrix.ratings, matrix.criteria.size(), matrix.concepts.size(), matrix.id);
  PughResult result;
  std::vector<int> nets;
  for (std::size_t c = 0; c < matrix.concepts.size(); ++c) {
    PughConceptResult r;
    r.concept_id = matrix.concepts[c];
    for (const auto& row : matrix.ratings) {
      if (row[c] > 0) ++r.plus;
      else if (row[c] < 0) ++r.minus;
      else ++r.zero;
    }
    r.net = r.plus - r.minus;
    nets.push_back(r.net);
    result.concepts.push_back(std::move(r));
  }
  const auto ranks = competition_rank(nets);
  for (std::size_t c = 0; c < result.concepts.size(); ++c) {
    auto& r = result.concepts[c];
    r.rank = ranks[c];
    r.proceed = continues(rule, r.net, r.rank);
  }
  return result;
}

ScoringResult score(const ScoringMatrix& matrix, DecisionRule rule) {
  check_shape(matrix.ratings, matrix.criteria.size(), matrix.concepts.size(), matrix.id);
  ScoringResult result;
  std::vector<Rational> totals;
  for (std::size_t c = 0; c < matrix.concepts.size(); ++c) {
    ScoringConceptResult r;
    r.concept_id = matrix.concepts[c];
    for (std::size_t k = 0; k < matrix.criteria.size(); ++k) {
      r.weighted.push_back(matrix.criteria[k].weight * Rational(matrix.ratings[k][c]));
      r.total += r.weighted.back();
    }
    totals.push_back(r.total);
    result.concepts.push_back(std::move(r));
  }
  const auto ranks = competition_rank(totals);
  for (std::size_t c = 0; c < result.concepts.size(); ++c) {
    auto& r = result.concepts[c];
    r.rank = ranks[c];
    r.decision = r.rank <= rule.develop_through_rank ? Decision::develop : Decision::drop;
  }
  return result;
}

std::map<std::string, std::vector<Rational>> root_contributions(const ScoringMatrix& matrix,
                                                                const ScoringResult& result,
                                                                const CriterionSet& set) {
  auto root_of = [&](const std::string& id) {
    std::string current = id;
    // Bounded walk so a malformed (cyclic) set cannot hang.
    for (std::size_t step = 0; step <= set.criteria.size(); ++step) {
      auto it = std::find_if(set.criteria.begin(), set.criteria.end(),
                             [&](const Criterion& c) { return c.id == current; });
      if (it == set.criteria.end() || !it->parent) return current;
      current = *it->parent;
    }
    return current;
  };
  std::map<std::string, std::vector<Rational>> out;
  for (std::size_t k = 0; k < matrix.criteria.size(); ++k) {
    auto& slot = out[root_of(matrix.criteria[k].id)];
    slot.resize(result.concepts.size());
    for (std::size_t c = 0; c < result.concepts.size(); ++c) slot[c] += result.concepts[c].weighted[k];
  }
  return out;
}

std::vector<std::string> significance_notes(const ScoringResult& result, const Rational& threshold) {
  std::vector<std::size_t> order(result.concepts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.concepts[a].total > result.concepts[b].total;
  });
  std::vector<std::string> notes;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& hi = result.concepts[order[i - 1]];
    const auto& lo = result.concepts[order[i]];
    const Rational gap = hi.total - lo.total;
    if (gap < threshold) {
      notes.push_back("difference between " + hi.concept_id + " and " + lo.concept_id + " (" +
                      gap.to_display() + ") is below the significance threshold " + threshold.to_display());
    }
  }
  return notes;
}

namespace {

template <typename T, typename Render>
void compare_row(std::vector<AuditFinding>& out, const std::string& matrix, const std::string& aggregate,
                 const std::vector<std::string>& concepts, const std::optional<std::vector<T>>& declared,
                 const std::vector<T>& computed, Render render) {
  if (!declared) return;
  if (declared->size() != computed.size()) {
    throw Error("matrix '" + matrix + "': declared " + aggregate + " has " + std::to_string(declared->size()) +
                " entries for " + std::to_string(computed.size()) + " concepts");
  }
  for (std::size_t c = 0; c < computed.size(); ++c) {
    if (!((*declared)[c] == computed[c])) {
      out.push_back({matrix, aggregate, concepts[c], "", render((*declared)[c]), render(computed[c])});
    }
  }
}

std::string int_text(int v) { return std::to_string(v); }
std::string bool_text(bool v) { return v ? "yes" : "no"; }

}  // namespace

std::vector<AuditFinding> audit(const PughMatrix& matrix, ContinueRule rule) {
  if (!matrix.declared) throw NothingToAuditError();
  const auto result = screen(matrix, rule);
  std::vector<int> plus, zero, minus, net, rank;
  std::vector<bool> proceed;
  for (const auto& r : result.concepts) {
    plus.push_back(r.plus);
    zero.push_back(r.zero);
    minus.push_back(r.minus);
    net.push_back(r.net);
    rank.push_back(r.rank);
    proceed.push_back(r.proceed);
  }
  const auto& d = *matrix.declared;
  std::vector<AuditFinding> out;
  compare_row(out, matrix.id, "plus", matrix.concepts, d.plus, plus, int_text);
  compare_row(out, matrix.id, "zero", matrix.concepts, d.zero, zero, int_text);
  compare_row(out, matrix.id, "minus", matrix.concepts, d.minus, minus, int_text);
  compare_row(out, matrix.id, "net", matrix.concepts, d.net, net, int_text);
  compare_row(out, matrix.id, "rank", matrix.concepts, d.rank, rank, int_text);
  compare_row(out, matrix.id, "continue", matrix.concepts, d.proceed, proceed, bool_text);
  return out;
}

std::vector<AuditFinding> audit(const ScoringMatrix& matrix, DecisionRule rule) {
  if (!matrix.declared) throw NothingToAuditError();
  const auto result = score(matrix, rule);
  const auto& d = *matrix.declared;
  std::vector<AuditFinding> out;

  if (d.weighted) {
    if (d.weighted->size() != matrix.criteria.size()) {
      throw Error("matrix '" + matrix.id + "': declared weighted scores have the wrong number of rows");
    }
    for (std::size_t k = 0; k < matrix.criteria.size(); ++k) {
      const auto& row = (*d.weighted)[k];
      if (row.size() != matrix.concepts.size()) {
        throw Error("matrix '" + matrix.id + "': declared weighted row has the wrong number of cells");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (!row[c]) continue;
        const Rational& computed = result.concepts[c].weighted[k];
        if (Rational(*row[c]) != computed) {
          out.push_back({matrix.id, "weighted", matrix.concepts[c], matrix.criteria[k].id, row[c]->to_string(),
                         computed.to_display()});
        }
      }
    }
  }

  std::vector<Rational> totals;
  std::vector<int> ranks;
  std::vector<Decision> decisions;
  for (const auto& r : result.concepts) {
    totals.push_back(r.total);
    ranks.push_back(r.rank);
    decisions.push_back(r.decision);
  }
  if (d.totals) {
    std::vector<Rational> declared(d.totals->begin(), d.totals->end());
    compare_row(out, matrix.id, "total", matrix.concepts, std::optional(declared), totals,
                [](const Rational& r) { return r.to_display(); });
  }
  compare_row(out, matrix.id, "rank", matrix.concepts, d.rank, ranks, int_text);
  compare_row(out, matrix.id, "decision", matrix.concepts, d.decision, decisions,
              [](Decision x) { return std::string(to_string(x)); });
  return out;
}

morpho::Concept combine_concepts(const morpho::MorphChart& chart, const morpho::Concept& a,
                                 const morpho::Concept& b, std::string id, std::string name,
                                 const std::map<std::string, ColumnResolution>& resolution) {
  if (a.chart != chart.id || b.chart != chart.id) {
    throw morpho::ConceptError("concepts '" + a.id + "' and '" + b.id + "' are not both on chart '" + chart.id + "'");
  }
  for (const auto* c : {&a, &b}) {
    if (auto problems = morpho::concept_problems(chart, *c); !problems.empty()) {
      throw morpho::ConceptError("concept '" + c->id + "': " + problems.front());
    }
  }
  for (const auto& [column, _] : resolution) {
    const bool known = std::any_of(chart.columns.begin(), chart.columns.end(),
                                   [&](const morpho::MorphColumn& col) { return col.name == column; });
    if (!known) throw morpho::ConceptError("resolution names unknown column '" + column + "'");
  }

  std::map<std::string, std::string> chosen;
  std::vector<std::string> unresolved;
  for (std::size_t i = 0; i < chart.columns.size(); ++i) {
    const auto& col = chart.columns[i];
    auto it = resolution.find(col.name);
    if (it == resolution.end()) {
      if (a.selection[i] == b.selection[i]) chosen[col.name] = a.selection[i];
      else unresolved.push_back(col.name);
      continue;
    }
    chosen[col.name] = std::visit(
        [&](const auto& r) -> std::string {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, FromA>) return a.selection[i];
          else if constexpr (std::is_same_v<R, FromB>) return b.selection[i];
          else return r.fragment;
        },
        it->second);
  }
  if (!unresolved.empty()) {
    std::string msg = "unresolved disagreeing columns:";
    for (const auto& c : unresolved) msg += " '" + c + "'";
    throw morpho::ConceptError(msg);
  }
  return morpho::define_concept(chart, std::move(id), std::move(name), chosen);
}

PughMatrix derive_pugh(const ScoringMatrix& matrix, const std::string& reference) {
  check_shape(matrix.ratings, matrix.criteria.size(), matrix.concepts.size(), matrix.id);
  const auto ref_it = std::find(matrix.concepts.begin(), matrix.concepts.end(), reference);
  if (ref_it == matrix.concepts.end()) {
    throw Error("matrix '" + matrix.id + "': reference '" + reference + "' is not one of its concepts");
  }
  const auto ref = static_cast<std::size_t>(ref_it - matrix.concepts.begin());
  PughMatrix out;
  out.id = matrix.id + "-vs-" + reference;
  out.concepts = matrix.concepts;
  out.reference = reference;
  for (std::size_t k = 0; k < matrix.criteria.size(); ++k) {
    out.criteria.push_back(matrix.criteria[k].id);
    std::vector<int> row;
    for (std::size_t c = 0; c < matrix.concepts.size(); ++c) {
      const int diff = matrix.ratings[k][c] - matrix.ratings[k][ref];
      row.push_back((diff > 0) - (diff < 0));
    }
    out.ratings.push_back(std::move(row));
  }
  return out;
}

}  // namespace dforge::selection
