#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dforge/core/error.hpp"
#include "dforge/core/project.hpp"
#include "dforge/tournament/types.hpp"

namespace dforge::tournament {

class MissingVerdictError : public Error {
 public:
  explicit MissingVerdictError(const std::string& opportunity, const std::string& stage);
  const std::string& opportunity() const { return opportunity_; }

 private:
  std::string opportunity_;
};

class UnknownMarkError : public Error {
 public:
  using Error::Error;
};

enum class FlagKind {
  declared_outcome_mismatch,  // computed row outcome differs from declared
  unknown_mark,               // unknown mark resolved by policy
  verdict_outside_input,      // verdict row for an opportunity not entering the stage
  declared_count_mismatch,    // stage survivor count differs from declared
};

std::string_view to_string(FlagKind kind);

struct Flag {
  FlagKind kind;
  std::string stage;
  std::string opportunity;  // empty for count-level flags
  std::string message;

  bool operator==(const Flag&) const = default;
};

struct RowResult {
  std::string opportunity;
  Outcome computed;
  std::optional<Outcome> declared;
  bool had_unknown = false;
};

struct StageResult {
  std::string stage;
  std::vector<std::string> input;
  std::vector<RowResult> rows;
  std::vector<std::string> survivors;
  std::optional<std::size_t> declared_survivors;
  std::vector<Flag> flags;
};

/// Evaluates one stage over `input` (opportunity ids, in order). A row passes
/// iff every mark passes once unknown marks are resolved by the stage policy.
///
/// Throws MissingVerdictError when an input opportunity has no verdict row,
/// UnknownMarkError for unknown marks under require_explicit, and Error when
/// a row's mark count differs from the stage's criterion count.
StageResult evaluate_stage(std::span<const std::string> input, const Stage& stage,
                           std::span<const VerdictRow> verdicts);

/// Convenience overload using the stage's own verdict rows.
StageResult evaluate_stage(std::span<const std::string> input, const Stage& stage);

struct FunnelReport {
  std::vector<StageResult> stages;
  std::vector<std::string> survivors;

  /// Every flag from every stage, in stage order.
  std::vector<Flag> discrepancies() const;
};

/// Chains the stages: stage k+1 sees only stage k's computed survivors.
/// An empty funnel passes every opportunity through.
FunnelReport run_funnel(const Project& project, const Funnel& funnel);
FunnelReport run_funnel(const Project& project);

/// Computed survivor ids of `stage` under a different unknown policy, used by
/// audit output to show how declared verdicts relate to each policy.
std::vector<std::string> survivors_under(std::span<const std::string> input, const Stage& stage,
                                         UnknownPolicy policy);

}  // namespace dforge::tournament
