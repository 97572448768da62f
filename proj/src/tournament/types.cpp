#include "dforge/tournament/types.hpp"

#include "dforge/core/error.hpp"

namespace dforge::tournament {

std::string_view to_string(Mark m) {
  switch (m) {
    case Mark::pass: return "pass";
    case Mark::fail: return "fail";
    case Mark::unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(Outcome o) { return o == Outcome::pass ? "Pass" : "Fail"; }

std::string_view to_string(UnknownPolicy p) {
  switch (p) {
    case UnknownPolicy::strict_fail: return "strict-fail";
    case UnknownPolicy::lenient_pass: return "lenient-pass";
    case UnknownPolicy::require_explicit: return "require-explicit";
  }
  return "?";
}

Outcome parse_outcome(std::string_view text) {
  if (text == "Pass" || text == "pass") return Outcome::pass;
  if (text == "Fail" || text == "fail") return Outcome::fail;
  throw Error("unknown outcome '" + std::string(text) + "'");
}

UnknownPolicy parse_unknown_policy(std::string_view text) {
  if (text == "strict-fail") return UnknownPolicy::strict_fail;
  if (text == "lenient-pass") return UnknownPolicy::lenient_pass;
  if (text == "require-explicit") return UnknownPolicy::require_explicit;
  throw Error("unknown policy '" + std::string(text) + "'");
}

Mark parse_mark(std::string_view text) {
  if (text == "1" || text == "pass") return Mark::pass;
  if (text == "0" || text == "fail") return Mark::fail;
  if (text.empty() || text == "unknown") return Mark::unknown;
  throw Error("unknown verdict mark '" + std::string(text) + "'");
}

}  // namespace dforge::tournament
