#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dforge/core/error.hpp"
#include "dforge/needspec/types.hpp"

namespace dforge::needspec {

class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Parses a target-value expression. Keywords are case-insensitive:
///
///   at least <n> [unit]        at most <n> [unit]
///   >= <n> [unit]              <= <n> [unit]
///   between <a> and <b> [unit] <a>-<b> [unit]     <a> to <b> [unit]
///   exactly <n> [unit]         <n> [unit]
///   one of {v, ...} [unit]
///
/// Numbers may carry a "$" prefix, which becomes the unit when no trailing
/// unit is given. Units are kept verbatim and may be glued to the number
/// ("4gb"). Anything that does not fit becomes Qualitative(text).
///
/// Throws ConstraintError("inverted range") when a range has lo > hi.
Constraint parse_constraint(std::string_view text);

/// Canonical text; parse_constraint(render_constraint(c)) == c for every
/// constraint the grammar can produce.
std::string render_constraint(const Constraint& c);

using CheckInput = std::variant<ExactDecimal, std::string>;

struct CheckResult {
  bool meets_ideal = false;
  bool meets_marginal = false;
  std::vector<std::string> notes;

  bool operator==(const CheckResult&) const = default;
};

/// Tests `value` against the ideal and marginal constraints independently.
/// Qualitative constraints never match and add a "qualitative" note.
/// Throws ConstraintError on a numeric/text mismatch.
CheckResult check_value(const TargetSpec& spec, const CheckInput& value);

/// Whether `value` satisfies `c`; same rules and errors as check_value.
bool satisfies(const Constraint& c, const CheckInput& value, std::vector<std::string>* notes = nullptr);

/// Whether every value satisfying `inner` also satisfies `outer`. Returns
/// nullopt when the question cannot be answered (qualitative constraints,
/// mixed numeric/text sets, or differing non-empty units).
std::optional<bool> constraint_contains(const Constraint& outer, const Constraint& inner);

}  // namespace dforge::needspec
