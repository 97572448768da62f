#include "dforge/needspec/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace dforge::needspec {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

/// Cursor over the expression text. Keyword matching is case-insensitive;
/// everything else is taken verbatim.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  /// Consumes `word` if it appears next (case-insensitively) and is not
  /// immediately followed by a letter.
  bool keyword(std::string_view word) {
    skip_space();
    if (text_.size() - pos_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) != word[i]) return false;
    }
    const std::size_t end = pos_ + word.size();
    if (std::isalpha(static_cast<unsigned char>(word.back())) && end < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[end]))) {
      return false;
    }
    pos_ = end;
    return true;
  }

  bool symbol(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  /// [$][+-]digits[.digits]
  std::optional<ExactDecimal> number(bool& dollar) {
    skip_space();
    std::size_t p = pos_;
    bool had_dollar = false;
    if (p < text_.size() && text_[p] == '$') {
      had_dollar = true;
      ++p;
    }
    const std::size_t start = p;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    const std::size_t digits_start = p;
    while (p < text_.size() && is_digit(text_[p])) ++p;
    if (p < text_.size() && text_[p] == '.' && p + 1 < text_.size() && is_digit(text_[p + 1])) {
      ++p;
      while (p < text_.size() && is_digit(text_[p])) ++p;
    }
    if (p == digits_start) return std::nullopt;
    auto value = ExactDecimal::parse(text_.substr(start, p - start));
    dollar = dollar || had_dollar;
    pos_ = p;
    return value;
  }

  std::string_view rest() {
    skip_space();
    return trim(text_.substr(pos_));
  }

  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool unit_ok(std::string_view unit) {
  return std::none_of(unit.begin(), unit.end(), [](char c) { return is_digit(c) || c == '{' || c == '}'; });
}

std::optional<std::string> take_unit(Scanner& s, bool dollar) {
  const auto unit = s.rest();
  if (!unit_ok(unit)) return std::nullopt;
  if (unit.empty() && dollar) return std::string("$");
  return std::string(unit);
}

Constraint make_between(ExactDecimal lo, ExactDecimal hi, std::string unit) {
  if (hi < lo) {
    throw ConstraintError("inverted range: " + lo.to_string() + " > " + hi.to_string());
  }
  return {Between{std::move(lo), std::move(hi)}, std::move(unit)};
}

std::optional<Constraint> parse_single(Scanner& s, ConstraintKind (*make)(ExactDecimal)) {
  bool dollar = false;
  auto value = s.number(dollar);
  if (!value) return std::nullopt;
  auto unit = take_unit(s, dollar);
  if (!unit) return std::nullopt;
  return Constraint{make(std::move(*value)), std::move(*unit)};
}

std::optional<Constraint> parse_one_of(Scanner& s) {
  if (!s.symbol('{')) return std::nullopt;
  const auto body_and_rest = s.rest();
  const auto close = body_and_rest.find('}');
  if (close == std::string_view::npos) return std::nullopt;
  OneOf set;
  std::string_view body = body_and_rest.substr(0, close);
  while (true) {
    const auto comma = body.find(',');
    const auto item = trim(body.substr(0, comma));
    if (!item.empty()) set.values.emplace_back(item);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (set.values.empty()) return std::nullopt;
  const auto unit = trim(body_and_rest.substr(close + 1));
  return Constraint{std::move(set), std::string(unit)};
}

std::optional<Constraint> parse_grammar(std::string_view text) {
  Scanner s(text);
  if (s.keyword("at least")) return parse_single(s, [](ExactDecimal v) -> ConstraintKind { return AtLeast{std::move(v)}; });
  if (s.keyword("at most")) return parse_single(s, [](ExactDecimal v) -> ConstraintKind { return AtMost{std::move(v)}; });
  if (s.keyword(">=")) return parse_single(s, [](ExactDecimal v) -> ConstraintKind { return AtLeast{std::move(v)}; });
  if (s.keyword("<=")) return parse_single(s, [](ExactDecimal v) -> ConstraintKind { return AtMost{std::move(v)}; });
  if (s.keyword("exactly")) return parse_single(s, [](ExactDecimal v) -> ConstraintKind { return Exactly{std::move(v)}; });
  if (s.keyword("one of")) return parse_one_of(s);
  if (s.keyword("between")) {
    bool dollar = false;
    auto lo = s.number(dollar);
    if (!lo || !s.keyword("and")) return std::nullopt;
    auto hi = s.number(dollar);
    if (!hi) return std::nullopt;
    auto unit = take_unit(s, dollar);
    if (!unit) return std::nullopt;
    return make_between(std::move(*lo), std::move(*hi), std::move(*unit));
  }

  // Bare number: "<n> [unit]", "<a>-<b> [unit]" or "<a> to <b> [unit]".
  bool dollar = false;
  auto first = s.number(dollar);
  if (!first) return std::nullopt;
  const auto after_first = s.pos();
  if (s.symbol('-') || s.keyword("to")) {
    if (auto second = s.number(dollar)) {
      auto unit = take_unit(s, dollar);
      if (!unit) return std::nullopt;
      return make_between(std::move(*first), std::move(*second), std::move(*unit));
    }
    s.reset(after_first);
  }
  auto unit = take_unit(s, dollar);
  if (!unit) return std::nullopt;
  return Constraint{Exactly{std::move(*first)}, std::move(*unit)};
}

std::string with_unit(std::string text, const std::string& unit) {
  if (!unit.empty()) text += " " + unit;
  return text;
}

}  // namespace

Constraint parse_constraint(std::string_view text) {
  const auto trimmed = trim(text);
  if (auto c = parse_grammar(trimmed)) return std::move(*c);
  return Constraint{Qualitative{std::string(trimmed)}, ""};
}

std::string render_constraint(const Constraint& c) {
  return std::visit(
      [&](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AtLeast>) {
          return with_unit("at least " + k.value.to_string(), c.unit);
        } else if constexpr (std::is_same_v<K, AtMost>) {
          return with_unit("at most " + k.value.to_string(), c.unit);
        } else if constexpr (std::is_same_v<K, Between>) {
          return with_unit("between " + k.lo.to_string() + " and " + k.hi.to_string(), c.unit);
        } else if constexpr (std::is_same_v<K, Exactly>) {
          return with_unit("exactly " + k.value.to_string(), c.unit);
        } else if constexpr (std::is_same_v<K, OneOf>) {
          std::string out = "one of {";
          for (std::size_t i = 0; i < k.values.size(); ++i) {
            if (i > 0) out += ", ";
            out += k.values[i];
          }
          return with_unit(out + "}", c.unit);
        } else {
          return k.text;
        }
      },
      c.kind);
}

bool satisfies(const Constraint& c, const CheckInput& value, std::vector<std::string>* notes) {
  if (std::holds_alternative<Qualitative>(c.kind)) {
    if (notes) notes->push_back("qualitative");
    return false;
  }
  if (const auto* set = std::get_if<OneOf>(&c.kind)) {
    const auto* text = std::get_if<std::string>(&value);
    if (!text) throw ConstraintError("numeric value checked against a set of discrete values");
    return std::find(set->values.begin(), set->values.end(), trim(*text)) != set->values.end();
  }
  const auto* v = std::get_if<ExactDecimal>(&value);
  if (!v) throw ConstraintError("text value checked against a numeric constraint");
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AtLeast>) return *v >= k.value;
        else if constexpr (std::is_same_v<K, AtMost>) return *v <= k.value;
        else if constexpr (std::is_same_v<K, Between>) return k.lo <= *v && *v <= k.hi;
        else if constexpr (std::is_same_v<K, Exactly>) return *v == k.value;
        else return false;
      },
      c.kind);
}

CheckResult check_value(const TargetSpec& spec, const CheckInput& value) {
  CheckResult r;
  std::vector<std::string> notes;
  r.meets_ideal = satisfies(spec.ideal, value, &notes);
  r.meets_marginal = satisfies(spec.marginal, value, &notes);
  std::sort(notes.begin(), notes.end());
  notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
  r.notes = std::move(notes);
  return r;
}

namespace {

struct Interval {
  std::optional<ExactDecimal> lo;  // nullopt: unbounded
  std::optional<ExactDecimal> hi;
};

std::optional<Interval> as_interval(const Constraint& c) {
  return std::visit(
      [](const auto& k) -> std::optional<Interval> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AtLeast>) return Interval{k.value, std::nullopt};
        else if constexpr (std::is_same_v<K, AtMost>) return Interval{std::nullopt, k.value};
        else if constexpr (std::is_same_v<K, Between>) return Interval{k.lo, k.hi};
        else if constexpr (std::is_same_v<K, Exactly>) return Interval{k.value, k.value};
        else return std::nullopt;
      },
      c.kind);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

}  // namespace

std::optional<bool> constraint_contains(const Constraint& outer, const Constraint& inner) {
  if (std::holds_alternative<Qualitative>(outer.kind) || std::holds_alternative<Qualitative>(inner.kind)) {
    return std::nullopt;
  }
  if (!outer.unit.empty() && !inner.unit.empty() && lower(outer.unit) != lower(inner.unit)) {
    return std::nullopt;
  }
  const auto* outer_set = std::get_if<OneOf>(&outer.kind);
  const auto* inner_set = std::get_if<OneOf>(&inner.kind);
  if (outer_set && inner_set) {
    return std::all_of(inner_set->values.begin(), inner_set->values.end(), [&](const std::string& v) {
      return std::find(outer_set->values.begin(), outer_set->values.end(), v) != outer_set->values.end();
    });
  }
  if (outer_set || inner_set) return std::nullopt;

  const auto o = *as_interval(outer);
  const auto i = *as_interval(inner);
  const bool lo_ok = !o.lo || (i.lo && *o.lo <= *i.lo);
  const bool hi_ok = !o.hi || (i.hi && *i.hi <= *o.hi);
  return lo_ok && hi_ok;
}

}  // namespace dforge::needspec
