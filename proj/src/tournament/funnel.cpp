#include "dforge/tournament/funnel.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace dforge::tournament {

MissingVerdictError::MissingVerdictError(const std::string& opportunity, const std::string& stage)
    : Error("stage '" + stage + "': no verdict row for opportunity '" + opportunity + "'"),
      opportunity_(opportunity) {}

std::string_view to_string(FlagKind kind) {
  switch (kind) {
    case FlagKind::declared_outcome_mismatch: return "declared-outcome-mismatch";
    case FlagKind::unknown_mark: return "unknown-mark";
    case FlagKind::verdict_outside_input: return "verdict-outside-input";
    case FlagKind::declared_count_mismatch: return "declared-count-mismatch";
  }
  return "?";
}

namespace {

Outcome resolve(const VerdictRow& row, const Stage& stage, UnknownPolicy policy, bool& had_unknown) {
  had_unknown = false;
  bool pass = true;
  for (std::size_t k = 0; k < row.marks.size(); ++k) {
    switch (row.marks[k]) {
      case Mark::pass: break;
      case Mark::fail: pass = false; break;
      case Mark::unknown:
        had_unknown = true;
        if (policy == UnknownPolicy::require_explicit) {
          throw UnknownMarkError("stage '" + stage.name + "': opportunity '" + row.opportunity +
                                 "' has an unknown mark for criterion '" + stage.criteria[k] +
                                 "' and the stage requires explicit marks");
        }
        if (policy == UnknownPolicy::strict_fail) pass = false;
        break;
    }
  }
  return pass ? Outcome::pass : Outcome::fail;
}

StageResult evaluate(std::span<const std::string> input, const Stage& stage,
                     std::span<const VerdictRow> verdicts, UnknownPolicy policy) {
  std::unordered_map<std::string, const VerdictRow*> by_id;
  for (const auto& row : verdicts) by_id.emplace(row.opportunity, &row);

  StageResult result;
  result.stage = stage.name;
  result.input.assign(input.begin(), input.end());
  result.declared_survivors = stage.declared_survivors;

  for (const auto& id : input) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw MissingVerdictError(id, stage.name);
    const VerdictRow& row = *it->second;
    if (row.marks.size() != stage.criteria.size()) {
      throw Error("stage '" + stage.name + "': opportunity '" + id + "' has " +
                  std::to_string(row.marks.size()) + " marks for " +
                  std::to_string(stage.criteria.size()) + " criteria");
    }
    RowResult r{id, Outcome::fail, row.declared, false};
    r.computed = resolve(row, stage, policy, r.had_unknown);
    if (r.had_unknown) {
      result.flags.push_back({FlagKind::unknown_mark, stage.name, id,
                              "unknown mark resolved as " +
                                  std::string(to_string(r.computed)) + " by " +
                                  std::string(to_string(policy))});
    }
    if (r.declared && *r.declared != r.computed) {
      result.flags.push_back({FlagKind::declared_outcome_mismatch, stage.name, id,
                              "declared " + std::string(to_string(*r.declared)) + ", computed " +
                                  std::string(to_string(r.computed))});
    }
    if (r.computed == Outcome::pass) result.survivors.push_back(id);
    result.rows.push_back(std::move(r));
  }

  const std::unordered_set<std::string> in(input.begin(), input.end());
  for (const auto& row : verdicts) {
    if (!in.contains(row.opportunity)) {
      result.flags.push_back({FlagKind::verdict_outside_input, stage.name, row.opportunity,
                              "verdict row present but opportunity did not enter this stage"});
    }
  }

  if (stage.declared_survivors && *stage.declared_survivors != result.survivors.size()) {
    result.flags.push_back({FlagKind::declared_count_mismatch, stage.name, "",
                            "declared " + std::to_string(*stage.declared_survivors) +
                                " survivors, computed " + std::to_string(result.survivors.size())});
  }
  return result;
}

}  // namespace

StageResult evaluate_stage(std::span<const std::string> input, const Stage& stage,
                           std::span<const VerdictRow> verdicts) {
  return evaluate(input, stage, verdicts, stage.unknown_policy);
}

StageResult evaluate_stage(std::span<const std::string> input, const Stage& stage) {
  return evaluate_stage(input, stage, stage.verdicts);
}

std::vector<std::string> survivors_under(std::span<const std::string> input, const Stage& stage,
                                         UnknownPolicy policy) {
  return evaluate(input, stage, stage.verdicts, policy).survivors;
}

std::vector<Flag> FunnelReport::discrepancies() const {
  std::vector<Flag> all;
  for (const auto& s : stages) all.insert(all.end(), s.flags.begin(), s.flags.end());
  return all;
}

FunnelReport run_funnel(const Project& project, const Funnel& funnel) {
  FunnelReport report;
  std::vector<std::string> current;
  current.reserve(project.opportunities.size());
  for (const auto& o : project.opportunities) current.push_back(o.id);

  for (const auto& stage : funnel.stages) {
    auto result = evaluate_stage(current, stage);
    current = result.survivors;
    report.stages.push_back(std::move(result));
  }
  report.survivors = std::move(current);
  return report;
}

FunnelReport run_funnel(const Project& project) { return run_funnel(project, project.funnel); }

}  // namespace dforge::tournament
