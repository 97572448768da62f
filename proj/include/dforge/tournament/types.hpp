#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dforge::tournament {

enum class Mark { pass, fail, unknown };
enum class Outcome { pass, fail };

/// How an unknown (blank) mark is resolved when computing a stage outcome.
enum class UnknownPolicy { strict_fail, lenient_pass, require_explicit };

/// One opportunity's marks for a stage, aligned with Stage::criteria.
struct VerdictRow {
  std::string opportunity;
  std::vector<Mark> marks;
  std::optional<Outcome> declared;

  bool operator==(const VerdictRow&) const = default;
};

struct Stage {
  std::string name;
  std::vector<std::string> criteria;
  UnknownPolicy unknown_policy = UnknownPolicy::require_explicit;
  /// Survivor count stated by the source document, audited only.
  std::optional<std::size_t> declared_survivors;
  std::vector<VerdictRow> verdicts;

  bool operator==(const Stage&) const = default;
};

struct Funnel {
  std::vector<Stage> stages;

  bool operator==(const Funnel&) const = default;
};

std::string_view to_string(Mark m);
std::string_view to_string(Outcome o);
std::string_view to_string(UnknownPolicy p);
Outcome parse_outcome(std::string_view text);
UnknownPolicy parse_unknown_policy(std::string_view text);
Mark parse_mark(std::string_view text);

}  // namespace dforge::tournament
