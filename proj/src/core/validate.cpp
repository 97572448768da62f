#include "dforge/core/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dforge/morpho/morph.hpp"
#include "dforge/needspec/constraint.hpp"

namespace dforge {

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(),
                                                [](const Issue& i) { return i.severity == Severity::error; }));
}

namespace {

class Checker {
 public:
  explicit Checker(const Project& p) : p_(p) {}

  ValidationReport run() {
    check_criteria();
    check_opportunities();
    check_funnel();
    check_needs();
    check_targets();
    check_charts();
    check_pugh();
    check_scoring();
    return std::move(report_);
  }

 private:
  void error(std::string location, std::string message) {
    report_.issues.push_back({Severity::error, std::move(location), std::move(message)});
  }
  void warning(std::string location, std::string message) {
    report_.issues.push_back({Severity::warning, std::move(location), std::move(message)});
  }

  template <typename Range>
  std::set<std::string> unique_ids(const Range& items, const std::string& where) {
    std::set<std::string> seen;
    for (const auto& item : items) {
      if (!is_valid_id(item.id)) error(where + "/" + item.id, "invalid identifier '" + item.id + "'");
      if (!seen.insert(item.id).second) error(where + "/" + item.id, "duplicate id '" + item.id + "'");
    }
    return seen;
  }

  void check_criteria() {
    std::set<std::string> all;
    for (const auto& set : p_.criterion_sets) {
      const std::string where = "criterion_sets/" + set.id;
      if (!is_valid_id(set.id)) error(where, "invalid identifier '" + set.id + "'");
      std::map<std::string, const Criterion*> by_id;
      for (const auto& c : set.criteria) {
        const std::string loc = where + "/" + c.id;
        if (!is_valid_id(c.id)) error(loc, "invalid identifier '" + c.id + "'");
        if (!all.insert(c.id).second) error(loc, "duplicate criterion id '" + c.id + "'");
        by_id.emplace(c.id, &c);
        if (c.weight && (*c.weight < ExactDecimal(0) || *c.weight > ExactDecimal(1))) {
          error(loc, "criterion weight " + c.weight->to_string() + " outside [0, 1]");
        }
      }
      criteria_ids_.insert(all.begin(), all.end());

      bool forest_ok = true;
      for (const auto& c : set.criteria) {
        if (!c.parent) continue;
        if (!by_id.contains(*c.parent)) {
          error(where + "/" + c.id, "parent '" + *c.parent + "' is not a criterion of this set");
          forest_ok = false;
        }
      }
      // Cycle detection: walking parents must terminate within |set| steps.
      for (const auto& c : set.criteria) {
        const Criterion* cur = &c;
        std::size_t steps = 0;
        while (cur && cur->parent && steps <= set.criteria.size()) {
          auto it = by_id.find(*cur->parent);
          cur = it == by_id.end() ? nullptr : it->second;
          ++steps;
        }
        if (steps > set.criteria.size()) {
          error(where + "/" + c.id, "criterion graph has a cycle through '" + c.id + "'");
          forest_ok = false;
        }
      }
      if (forest_ok) check_weights(set, where);
    }
  }

  void check_weights(const CriterionSet& set, const std::string& where) {
    const bool weighted = std::any_of(set.criteria.begin(), set.criteria.end(),
                                      [](const Criterion& c) { return c.weight.has_value(); });
    if (!weighted) return;
    for (const auto& c : set.criteria) {
      if (!c.weight) error(where + "/" + c.id, "criterion has no weight in a weighted set");
    }
    ExactDecimal roots;
    std::map<std::string, std::vector<const Criterion*>> children;
    for (const auto& c : set.criteria) {
      if (c.parent) children[*c.parent].push_back(&c);
      else if (c.weight) roots += *c.weight;
    }
    if (roots != ExactDecimal(1)) {
      error(where, "criterion weights sum ≠ 1 (root weights sum to " + roots.to_string() + ")");
    }
    for (const auto& [parent_id, kids] : children) {
      auto parent = std::find_if(set.criteria.begin(), set.criteria.end(),
                                 [&](const Criterion& c) { return c.id == parent_id; });
      if (parent == set.criteria.end() || !parent->weight) continue;
      ExactDecimal sum;
      for (const auto* k : kids) {
        if (k->weight) sum += *k->weight;
      }
      if (sum != *parent->weight) {
        error(where + "/" + parent_id, "child criterion weights sum to " + sum.to_string() +
                                           ", parent weight is " + parent->weight->to_string());
      }
    }
  }

  void check_opportunities() { opportunity_ids_ = unique_ids(p_.opportunities, "opportunities"); }

  void check_funnel() {
    std::set<std::string> names;
    for (std::size_t s = 0; s < p_.funnel.stages.size(); ++s) {
      const auto& stage = p_.funnel.stages[s];
      const std::string where = "funnel/" + (stage.name.empty() ? std::to_string(s) : stage.name);
      if (!names.insert(stage.name).second) error(where, "duplicate stage name '" + stage.name + "'");
      if (stage.criteria.empty()) error(where, "stage has no criteria");
      for (const auto& c : stage.criteria) {
        if (!criteria_ids_.contains(c)) error(where, "unknown criterion '" + c + "'");
      }
      std::set<std::string> rows;
      for (const auto& row : stage.verdicts) {
        const std::string loc = where + "/" + row.opportunity;
        if (!opportunity_ids_.contains(row.opportunity)) error(loc, "unknown opportunity '" + row.opportunity + "'");
        if (!rows.insert(row.opportunity).second) error(loc, "duplicate verdict row");
        if (row.marks.size() != stage.criteria.size()) {
          error(loc, "verdict has " + std::to_string(row.marks.size()) + " marks for " +
                         std::to_string(stage.criteria.size()) + " criteria");
        }
      }
    }
  }

  void check_needs() {
    const auto groups = unique_ids(p_.need_groups, "need_groups");
    need_ids_ = unique_ids(p_.needs, "needs");
    for (const auto& n : p_.needs) {
      const std::string loc = "needs/" + n.id;
      if (n.importance && (*n.importance < 1 || *n.importance > 5)) {
        error(loc, "importance " + std::to_string(*n.importance) + " outside 1..5");
      }
      if (n.group && !groups.contains(*n.group)) error(loc, "unknown need group '" + *n.group + "'");
    }

    metric_ids_ = unique_ids(p_.metrics, "metrics");
    std::set<int> ordinals;
    for (const auto& m : p_.metrics) {
      const std::string loc = "metrics/" + m.id;
      if (!ordinals.insert(m.ordinal).second) error(loc, "duplicate metric ordinal " + std::to_string(m.ordinal));
      if (m.importance < 1 || m.importance > 5) {
        error(loc, "importance " + std::to_string(m.importance) + " outside 1..5");
      }
    }

    std::set<needspec::NeedMetricLink> seen;
    for (const auto& l : p_.links) {
      const std::string loc = "links/" + l.need + "->" + l.metric;
      if (!need_ids_.contains(l.need)) error(loc, "unknown need '" + l.need + "'");
      if (!metric_ids_.contains(l.metric)) error(loc, "unknown metric '" + l.metric + "'");
      if (!seen.insert(l).second) warning(loc, "duplicate need-metric link");
    }

    unique_ids(p_.benchmarks, "benchmarks");
    for (const auto& b : p_.benchmarks) {
      const std::string loc = "benchmarks/" + b.id;
      for (const auto& [metric, _] : b.values) {
        if (!metric_ids_.contains(metric)) error(loc, "value for unknown metric '" + metric + "'");
      }
      for (const auto& [metric, sat] : b.satisfaction) {
        if (!metric_ids_.contains(metric)) error(loc, "satisfaction for unknown metric '" + metric + "'");
        if (sat < 1 || sat > 5) error(loc + "/" + metric, "satisfaction " + std::to_string(sat) + " outside 1..5");
      }
      for (const auto& [metric, value] : b.values) {
        if (const auto* r = std::get_if<needspec::RangeValue>(&value); r && r->hi < r->lo) {
          error(loc + "/" + metric, "inverted range");
        }
      }
    }
  }

  void check_constraint(const needspec::Constraint& c, const std::string& loc) {
    if (const auto* b = std::get_if<needspec::Between>(&c.kind); b && b->hi < b->lo) {
      error(loc, "inverted range");
    }
    if (const auto* s = std::get_if<needspec::OneOf>(&c.kind); s && s->values.empty()) {
      error(loc, "empty set of discrete values");
    }
  }

  void check_targets() {
    std::set<std::string> seen;
    for (const auto& t : p_.targets) {
      const std::string loc = "targets/" + t.metric;
      if (!metric_ids_.contains(t.metric)) error(loc, "unknown metric '" + t.metric + "'");
      if (!seen.insert(t.metric).second) error(loc, "duplicate target for metric");
      check_constraint(t.marginal, loc + "/marginal");
      check_constraint(t.ideal, loc + "/ideal");
    }
  }

  void check_charts() {
    chart_ids_ = unique_ids(p_.charts, "charts");
    for (const auto& chart : p_.charts) {
      for (const auto& problem : morpho::chart_problems(chart)) error("charts/" + chart.id, problem);
    }
    concept_ids_ = unique_ids(p_.concepts, "concepts");
    for (const auto& c : p_.concepts) {
      const std::string loc = "concepts/" + c.id;
      const auto* chart = p_.find_chart(c.chart);
      if (!chart) {
        error(loc, "unknown chart '" + c.chart + "'");
        continue;
      }
      for (const auto& problem : morpho::concept_problems(*chart, c)) error(loc, problem);
    }
  }

  bool check_grid(const std::vector<std::vector<int>>& ratings, std::size_t rows, std::size_t cols,
                  const std::string& loc) {
    bool ok = ratings.size() == rows;
    for (const auto& r : ratings) ok = ok && r.size() == cols;
    if (!ok) error(loc, "ratings grid is not " + std::to_string(rows) + " x " + std::to_string(cols));
    return ok;
  }

  void check_concept_refs(const std::vector<std::string>& concepts, const std::string& loc) {
    std::set<std::string> seen;
    for (const auto& c : concepts) {
      if (!concept_ids_.contains(c)) error(loc, "unknown concept '" + c + "'");
      if (!seen.insert(c).second) error(loc, "concept '" + c + "' listed twice");
    }
  }

  template <typename T>
  void check_declared_size(const std::optional<std::vector<T>>& v, std::size_t n, const std::string& loc,
                           const char* what) {
    if (v && v->size() != n) error(loc, std::string("declared ") + what + " has the wrong number of entries");
  }

  void check_pugh() {
    unique_ids(p_.pugh_matrices, "pugh_matrices");
    for (const auto& m : p_.pugh_matrices) {
      const std::string loc = "pugh_matrices/" + m.id;
      for (const auto& c : m.criteria) {
        if (!criteria_ids_.contains(c)) error(loc, "unknown criterion '" + c + "'");
      }
      check_concept_refs(m.concepts, loc);
      const auto ref = std::find(m.concepts.begin(), m.concepts.end(), m.reference);
      if (ref == m.concepts.end()) error(loc, "reference '" + m.reference + "' is not one of the matrix concepts");
      if (!check_grid(m.ratings, m.criteria.size(), m.concepts.size(), loc)) continue;
      for (std::size_t k = 0; k < m.ratings.size(); ++k) {
        for (std::size_t c = 0; c < m.ratings[k].size(); ++c) {
          const int r = m.ratings[k][c];
          if (r < -1 || r > 1) error(loc, "rating " + std::to_string(r) + " outside {+1, 0, -1}");
          if (ref != m.concepts.end() && m.concepts[c] == m.reference && r != 0) {
            warning(loc, "reference concept rated non-zero on '" + m.criteria[k] + "'");
          }
        }
      }
      if (m.declared) {
        const auto n = m.concepts.size();
        check_declared_size(m.declared->plus, n, loc, "plus");
        check_declared_size(m.declared->zero, n, loc, "zero");
        check_declared_size(m.declared->minus, n, loc, "minus");
        check_declared_size(m.declared->net, n, loc, "net");
        check_declared_size(m.declared->rank, n, loc, "rank");
        check_declared_size(m.declared->proceed, n, loc, "continue");
      }
    }
  }

  void check_scoring() {
    unique_ids(p_.scoring_matrices, "scoring_matrices");
    for (const auto& m : p_.scoring_matrices) {
      const std::string loc = "scoring_matrices/" + m.id;
      Rational sum;
      std::set<std::string> listed;
      for (const auto& c : m.criteria) {
        if (!criteria_ids_.contains(c.id)) error(loc, "unknown criterion '" + c.id + "'");
        if (!listed.insert(c.id).second) error(loc, "criterion '" + c.id + "' listed twice");
        if (c.weight < Rational(0) || c.weight > Rational(1)) {
          error(loc + "/" + c.id, "weight " + c.weight.to_display() + " outside [0, 1]");
        }
        sum += c.weight;
      }
      if (sum != Rational(1)) error(loc, "criterion weights sum ≠ 1 (sum is " + sum.to_display() + ")");
      // A criterion and one of its ancestors would count the same weight twice.
      for (const auto& c : m.criteria) {
        const Criterion* cur = p_.find_criterion(c.id);
        std::size_t guard = 0;
        while (cur && cur->parent && guard++ < 64) {
          if (listed.contains(*cur->parent)) {
            error(loc, "criterion '" + c.id + "' and its ancestor '" + *cur->parent + "' are both scored");
          }
          cur = p_.find_criterion(*cur->parent);
        }
      }
      check_concept_refs(m.concepts, loc);
      if (m.reference && std::find(m.concepts.begin(), m.concepts.end(), *m.reference) == m.concepts.end()) {
        error(loc, "reference '" + *m.reference + "' is not one of the matrix concepts");
      }
      if (check_grid(m.ratings, m.criteria.size(), m.concepts.size(), loc)) {
        for (const auto& row : m.ratings) {
          for (int r : row) {
            if (r < 1 || r > 5) error(loc, "rating " + std::to_string(r) + " outside 1..5");
          }
        }
      }
      if (m.declared) {
        const auto n = m.concepts.size();
        check_declared_size(m.declared->totals, n, loc, "totals");
        check_declared_size(m.declared->rank, n, loc, "rank");
        check_declared_size(m.declared->decision, n, loc, "decision");
        if (m.declared->weighted) {
          bool ok = m.declared->weighted->size() == m.criteria.size();
          for (const auto& row : *m.declared->weighted) ok = ok && row.size() == n;
          if (!ok) error(loc, "declared weighted scores grid has the wrong shape");
        }
      }
    }
  }

  const Project& p_;
  ValidationReport report_;
  std::set<std::string> criteria_ids_;
  std::set<std::string> opportunity_ids_;
  std::set<std::string> need_ids_;
  std::set<std::string> metric_ids_;
  std::set<std::string> chart_ids_;
  std::set<std::string> concept_ids_;
};

}  // namespace

ValidationReport validate_project(const Project& project) { return Checker(project).run(); }

}  // namespace dforge
