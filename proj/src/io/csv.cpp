#include "dforge/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"

namespace dforge::io {

namespace {

constexpr std::string_view kDeclared = "#declared:";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

int to_int(const std::string& cell, std::string_view what) {
  const std::string t = trim(cell);
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw CsvError(std::string(what) + ": '" + cell + "' is not an integer");
  }
  return v;
}

const CsvRow& header_of(const std::vector<CsvRow>& rows, std::string_view what) {
  if (rows.empty()) throw CsvError(std::string(what) + ": missing header row");
  return rows.front();
}

void expect_width(const CsvRow& row, std::size_t width, std::size_t line, std::string_view what) {
  if (row.size() != width) {
    throw CsvError(std::string(what) + ": row " + std::to_string(line + 1) + " has " + std::to_string(row.size()) +
                   " cells, expected " + std::to_string(width));
  }
}

void expect_header(const CsvRow& header, std::initializer_list<std::string_view> names, std::string_view what) {
  if (header.size() != names.size() || !std::equal(names.begin(), names.end(), header.begin())) {
    std::string want;
    for (auto n : names) want += (want.empty() ? "" : ",") + std::string(n);
    throw CsvError(std::string(what) + ": expected header '" + want + "'");
  }
}

/// Splits a matrix header (after the leading non-concept cells) into concept
/// ids and the reference, marked by a trailing '*'.
std::pair<std::vector<std::string>, std::optional<std::string>> read_concepts(const CsvRow& header,
                                                                              std::size_t skip) {
  std::vector<std::string> concepts;
  std::optional<std::string> reference;
  for (std::size_t i = skip; i < header.size(); ++i) {
    std::string name = trim(header[i]);
    if (!name.empty() && name.back() == '*') {
      name.pop_back();
      if (reference) throw CsvError("matrix: more than one reference concept");
      reference = name;
    }
    concepts.push_back(name);
  }
  return {concepts, reference};
}

std::string mark_cell(tournament::Mark m) {
  switch (m) {
    case tournament::Mark::pass: return "1";
    case tournament::Mark::fail: return "0";
    case tournament::Mark::unknown: return "";
  }
  return "";
}

std::string pugh_cell(int r) { return r > 0 ? "+" : r < 0 ? "-" : "0"; }

int parse_pugh_cell(const std::string& cell) {
  const std::string t = trim(cell);
  if (t == "+" || t == "1" || t == "+1") return 1;
  if (t == "0") return 0;
  if (t == "-" || t == "-1") return -1;
  throw CsvError("pugh matrix: cell '" + cell + "' is not one of +, 0, -");
}

template <typename T, typename F>
std::vector<std::string> cells(const std::vector<T>& values, F&& render) {
  std::vector<std::string> out;
  for (const auto& v : values) out.push_back(render(v));
  return out;
}

CsvRow declared_row(const std::string& aggregate, std::size_t pad, std::vector<std::string> values) {
  CsvRow row{std::string(kDeclared) + aggregate};
  for (std::size_t i = 0; i < pad; ++i) row.emplace_back();
  row.insert(row.end(), values.begin(), values.end());
  return row;
}

}  // namespace

std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool row_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    row_started = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_started = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw CsvError("unterminated quoted field");
  if (row_started) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_csv(const std::vector<CsvRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const std::string& f = row[i];
      if (f.find_first_of(",\"\r\n") != std::string::npos || (!f.empty() && (f.front() == ' ' || f.back() == ' '))) {
        out += '"';
        for (char c : f) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += f;
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdicts

std::string verdicts_to_csv(const tournament::Stage& stage) {
  std::vector<CsvRow> rows;
  CsvRow header{"opportunity"};
  header.insert(header.end(), stage.criteria.begin(), stage.criteria.end());
  header.emplace_back("declared");
  rows.push_back(header);
  for (const auto& v : stage.verdicts) {
    CsvRow row{v.opportunity};
    for (auto m : v.marks) row.push_back(mark_cell(m));
    row.push_back(v.declared ? std::string(tournament::to_string(*v.declared)) : "");
    rows.push_back(row);
  }
  return write_csv(rows);
}

void verdicts_from_csv(std::string_view text, tournament::Stage& stage) {
  const auto rows = parse_csv(text);
  const CsvRow& header = header_of(rows, "verdicts");
  if (header.empty() || trim(header[0]) != "opportunity") throw CsvError("verdicts: first column must be 'opportunity'");
  const bool has_declared = header.size() > 1 && trim(header.back()) == "declared";
  const std::size_t n_criteria = header.size() - 1 - (has_declared ? 1 : 0);
  std::vector<std::string> criteria;
  for (std::size_t i = 1; i <= n_criteria; ++i) criteria.push_back(trim(header[i]));
  std::vector<tournament::VerdictRow> verdicts;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], header.size(), r, "verdicts");
    tournament::VerdictRow v;
    v.opportunity = trim(rows[r][0]);
    for (std::size_t i = 1; i <= n_criteria; ++i) {
      try {
        v.marks.push_back(tournament::parse_mark(trim(rows[r][i])));
      } catch (const Error& e) {
        throw CsvError("verdicts: row " + std::to_string(r + 1) + ": " + e.what());
      }
    }
    if (has_declared) {
      const std::string d = trim(rows[r].back());
      if (!d.empty()) v.declared = tournament::parse_outcome(d);
    }
    verdicts.push_back(std::move(v));
  }
  stage.criteria = std::move(criteria);
  stage.verdicts = std::move(verdicts);
}

// ---------------------------------------------------------------------------
// Morph chart

std::string chart_to_csv(const morpho::MorphChart& chart) {
  std::vector<CsvRow> rows;
  CsvRow header;
  std::size_t depth = 0;
  for (const auto& c : chart.columns) {
    header.push_back(c.name);
    depth = std::max(depth, c.fragments.size());
  }
  rows.push_back(header);
  for (std::size_t r = 0; r < depth; ++r) {
    CsvRow row;
    for (const auto& c : chart.columns) row.push_back(r < c.fragments.size() ? c.fragments[r] : "");
    rows.push_back(row);
  }
  return write_csv(rows);
}

morpho::MorphChart chart_from_csv(std::string_view text, std::string id, std::string name) {
  const auto rows = parse_csv(text);
  const CsvRow& header = header_of(rows, "chart");
  morpho::MorphChart chart{std::move(id), std::move(name), {}};
  for (const auto& h : header) chart.columns.push_back({trim(h), {}, ""});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() > header.size()) {
      throw CsvError("chart: row " + std::to_string(r + 1) + " has more cells than the header");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      std::string cell = trim(rows[r][c]);
      if (cell.empty()) continue;
      chart.columns[c].fragments.push_back(std::move(cell));
    }
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Matrices

std::string pugh_to_csv(const selection::PughMatrix& m) {
  std::vector<CsvRow> rows;
  CsvRow header{"criterion"};
  for (const auto& c : m.concepts) header.push_back(c == m.reference ? c + "*" : c);
  rows.push_back(header);
  for (std::size_t k = 0; k < m.criteria.size(); ++k) {
    CsvRow row{m.criteria[k]};
    for (std::size_t c = 0; c < m.concepts.size(); ++c) {
      row.push_back(k < m.ratings.size() && c < m.ratings[k].size() ? pugh_cell(m.ratings[k][c]) : "");
    }
    rows.push_back(row);
  }
  if (m.declared) {
    const auto& d = *m.declared;
    auto num = [](int v) { return std::to_string(v); };
    if (d.plus) rows.push_back(declared_row("plus", 0, cells(*d.plus, num)));
    if (d.zero) rows.push_back(declared_row("zero", 0, cells(*d.zero, num)));
    if (d.minus) rows.push_back(declared_row("minus", 0, cells(*d.minus, num)));
    if (d.net) rows.push_back(declared_row("net", 0, cells(*d.net, num)));
    if (d.rank) rows.push_back(declared_row("rank", 0, cells(*d.rank, num)));
    if (d.proceed) {
      rows.push_back(declared_row("continue", 0, cells(*d.proceed, [](bool b) { return std::string(b ? "yes" : "no"); })));
    }
  }
  return write_csv(rows);
}

selection::PughMatrix pugh_from_csv(std::string_view text, std::string id) {
  const auto rows = parse_csv(text);
  const CsvRow& header = header_of(rows, "pugh matrix");
  if (header.empty() || trim(header[0]) != "criterion") throw CsvError("pugh matrix: first column must be 'criterion'");
  auto [concepts, reference] = read_concepts(header, 1);
  if (!reference) throw CsvError("pugh matrix: no reference concept marked with '*'");
  selection::PughMatrix m;
  m.id = std::move(id);
  m.concepts = concepts;
  m.reference = *reference;
  selection::PughDeclared d;
  bool any_declared = false;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    expect_width(row, header.size(), r, "pugh matrix");
    const std::string first = trim(row[0]);
    if (first.rfind(kDeclared, 0) == 0) {
      const std::string agg = first.substr(kDeclared.size());
      any_declared = true;
      std::vector<int> values;
      if (agg == "continue") {
        std::vector<bool> flags;
        for (std::size_t c = 1; c < row.size(); ++c) {
          const std::string t = trim(row[c]);
          if (t != "yes" && t != "no") throw CsvError("pugh matrix: continue cell '" + t + "' is not yes/no");
          flags.push_back(t == "yes");
        }
        d.proceed = flags;
        continue;
      }
      for (std::size_t c = 1; c < row.size(); ++c) values.push_back(to_int(row[c], "pugh matrix " + agg));
      if (agg == "plus") d.plus = values;
      else if (agg == "zero") d.zero = values;
      else if (agg == "minus") d.minus = values;
      else if (agg == "net") d.net = values;
      else if (agg == "rank") d.rank = values;
      else throw CsvError("pugh matrix: unknown declared aggregate '" + agg + "'");
      continue;
    }
    m.criteria.push_back(first);
    std::vector<int> ratings;
    for (std::size_t c = 1; c < row.size(); ++c) ratings.push_back(parse_pugh_cell(row[c]));
    m.ratings.push_back(std::move(ratings));
  }
  if (any_declared) m.declared = d;
  return m;
}

std::string scoring_to_csv(const selection::ScoringMatrix& m) {
  std::vector<CsvRow> rows;
  CsvRow header{"criterion", "weight"};
  for (const auto& c : m.concepts) header.push_back(m.reference && c == *m.reference ? c + "*" : c);
  rows.push_back(header);
  for (std::size_t k = 0; k < m.criteria.size(); ++k) {
    CsvRow row{m.criteria[k].id, m.criteria[k].weight.to_string()};
    for (std::size_t c = 0; c < m.concepts.size(); ++c) {
      row.push_back(k < m.ratings.size() && c < m.ratings[k].size() ? std::to_string(m.ratings[k][c]) : "");
    }
    rows.push_back(row);
  }
  if (m.declared) {
    const auto& d = *m.declared;
    if (d.weighted) {
      for (std::size_t k = 0; k < d.weighted->size() && k < m.criteria.size(); ++k) {
        rows.push_back(declared_row("weighted:" + m.criteria[k].id, 1,
                                    cells((*d.weighted)[k], [](const std::optional<ExactDecimal>& x) {
                                      return x ? x->to_string() : std::string();
                                    })));
      }
    }
    if (d.totals) {
      rows.push_back(declared_row("total", 1, cells(*d.totals, [](const ExactDecimal& x) { return x.to_string(); })));
    }
    if (d.rank) rows.push_back(declared_row("rank", 1, cells(*d.rank, [](int v) { return std::to_string(v); })));
    if (d.decision) {
      rows.push_back(declared_row("decision", 1, cells(*d.decision, [](selection::Decision x) {
                                    return std::string(selection::to_string(x));
                                  })));
    }
  }
  return write_csv(rows);
}

selection::ScoringMatrix scoring_from_csv(std::string_view text, std::string id) {
  const auto rows = parse_csv(text);
  const CsvRow& header = header_of(rows, "scoring matrix");
  if (header.size() < 2 || trim(header[0]) != "criterion" || trim(header[1]) != "weight") {
    throw CsvError("scoring matrix: header must start with 'criterion,weight'");
  }
  auto [concepts, reference] = read_concepts(header, 2);
  selection::ScoringMatrix m;
  m.id = std::move(id);
  m.concepts = concepts;
  m.reference = reference;
  selection::ScoringDeclared d;
  bool any_declared = false;
  std::map<std::string, std::vector<std::optional<ExactDecimal>>> weighted;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    expect_width(row, header.size(), r, "scoring matrix");
    const std::string first = trim(row[0]);
    if (first.rfind(kDeclared, 0) == 0) {
      const std::string agg = first.substr(kDeclared.size());
      any_declared = true;
      if (agg.rfind("weighted:", 0) == 0) {
        std::vector<std::optional<ExactDecimal>> cells_;
        for (std::size_t c = 2; c < row.size(); ++c) {
          const std::string t = trim(row[c]);
          cells_.push_back(t.empty() ? std::nullopt : std::optional(ExactDecimal::parse(t)));
        }
        weighted[agg.substr(9)] = std::move(cells_);
      } else if (agg == "total") {
        std::vector<ExactDecimal> totals;
        for (std::size_t c = 2; c < row.size(); ++c) totals.push_back(ExactDecimal::parse(trim(row[c])));
        d.totals = std::move(totals);
      } else if (agg == "rank") {
        std::vector<int> ranks;
        for (std::size_t c = 2; c < row.size(); ++c) ranks.push_back(to_int(row[c], "scoring matrix rank"));
        d.rank = std::move(ranks);
      } else if (agg == "decision") {
        std::vector<selection::Decision> decisions;
        for (std::size_t c = 2; c < row.size(); ++c) decisions.push_back(selection::parse_decision(trim(row[c])));
        d.decision = std::move(decisions);
      } else {
        throw CsvError("scoring matrix: unknown declared aggregate '" + agg + "'");
      }
      continue;
    }
    m.criteria.push_back({first, Rational::parse(trim(row[1]))});
    std::vector<int> ratings;
    for (std::size_t c = 2; c < row.size(); ++c) ratings.push_back(to_int(row[c], "scoring matrix rating"));
    m.ratings.push_back(std::move(ratings));
  }
  if (!weighted.empty()) {
    std::vector<std::vector<std::optional<ExactDecimal>>> grid;
    for (const auto& c : m.criteria) {
      auto it = weighted.find(c.id);
      grid.push_back(it == weighted.end() ? std::vector<std::optional<ExactDecimal>>(m.concepts.size()) : it->second);
      if (it != weighted.end()) weighted.erase(it);
    }
    if (!weighted.empty()) {
      throw CsvError("scoring matrix: declared weighted row for unknown criterion '" + weighted.begin()->first + "'");
    }
    d.weighted = std::move(grid);
  }
  if (any_declared) m.declared = std::move(d);
  return m;
}

// ---------------------------------------------------------------------------
// Needs and specifications

std::string metrics_to_csv(const std::vector<needspec::Metric>& metrics) {
  std::vector<CsvRow> rows{{"id", "ordinal", "name", "importance", "unit"}};
  for (const auto& m : metrics) {
    rows.push_back({m.id, std::to_string(m.ordinal), m.name, std::to_string(m.importance), m.unit});
  }
  return write_csv(rows);
}

std::vector<needspec::Metric> metrics_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(header_of(rows, "metrics"), {"id", "ordinal", "name", "importance", "unit"}, "metrics");
  std::vector<needspec::Metric> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 5, r, "metrics");
    out.push_back({rows[r][0], to_int(rows[r][1], "metrics ordinal"), rows[r][2], to_int(rows[r][3], "metrics importance"),
                   rows[r][4]});
  }
  return out;
}

std::string links_to_csv(const std::vector<needspec::NeedMetricLink>& links) {
  std::vector<CsvRow> rows{{"need", "metric"}};
  for (const auto& l : links) rows.push_back({l.need, l.metric});
  return write_csv(rows);
}

std::vector<needspec::NeedMetricLink> links_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(header_of(rows, "links"), {"need", "metric"}, "links");
  std::vector<needspec::NeedMetricLink> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 2, r, "links");
    out.push_back({trim(rows[r][0]), trim(rows[r][1])});
  }
  return out;
}

std::string benchmarks_to_csv(const std::vector<needspec::BenchmarkProduct>& products) {
  std::vector<CsvRow> rows{{"product", "product_name", "metric", "kind", "value", "satisfaction"}};
  for (const auto& p : products) {
    std::map<std::string, int> metrics_seen;
    for (const auto& [metric, _] : p.values) metrics_seen[metric];
    for (const auto& [metric, _] : p.satisfaction) metrics_seen[metric];
    for (const auto& [metric, _] : metrics_seen) {
      std::string kind = "none";
      std::string value;
      if (auto it = p.values.find(metric); it != p.values.end()) {
        std::visit(
            [&](const auto& v) {
              using V = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<V, needspec::NumberValue>) {
                kind = "number";
                value = v.value.to_string();
              } else if constexpr (std::is_same_v<V, needspec::RangeValue>) {
                kind = "range";
                value = v.lo.to_string() + "-" + v.hi.to_string();
              } else if constexpr (std::is_same_v<V, needspec::QualitativeValue>) {
                kind = "text";
                value = v.text;
              }
            },
            it->second);
      } else {
        kind = "";
      }
      auto s = p.satisfaction.find(metric);
      rows.push_back({p.id, p.name, metric, kind, value, s == p.satisfaction.end() ? "" : std::to_string(s->second)});
    }
  }
  return write_csv(rows);
}

std::vector<needspec::BenchmarkProduct> benchmarks_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(header_of(rows, "benchmarks"), {"product", "product_name", "metric", "kind", "value", "satisfaction"},
                "benchmarks");
  std::vector<needspec::BenchmarkProduct> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    expect_width(row, 6, r, "benchmarks");
    if (out.empty() || out.back().id != row[0]) out.push_back({row[0], row[1], {}, {}});
    auto& p = out.back();
    const std::string& kind = row[3];
    const std::string& metric = row[2];
    if (kind == "none") {
      p.values[metric] = needspec::NoValue{};
    } else if (kind == "number") {
      p.values[metric] = needspec::NumberValue{ExactDecimal::parse(row[4])};
    } else if (kind == "range") {
      const auto dash = row[4].find('-', 1);
      if (dash == std::string::npos) throw CsvError("benchmarks: range '" + row[4] + "' has no '-'");
      p.values[metric] = needspec::RangeValue{ExactDecimal::parse(row[4].substr(0, dash)),
                                              ExactDecimal::parse(row[4].substr(dash + 1))};
    } else if (kind == "text") {
      p.values[metric] = needspec::QualitativeValue{row[4]};
    } else if (!kind.empty()) {
      throw CsvError("benchmarks: unknown value kind '" + kind + "'");
    }
    if (!trim(row[5]).empty()) p.satisfaction[metric] = to_int(row[5], "benchmarks satisfaction");
  }
  return out;
}

std::string targets_to_csv(const std::vector<needspec::TargetSpec>& targets) {
  std::vector<CsvRow> rows{{"metric", "marginal", "ideal"}};
  for (const auto& t : targets) {
    rows.push_back({t.metric, needspec::render_constraint(t.marginal), needspec::render_constraint(t.ideal)});
  }
  return write_csv(rows);
}

std::vector<needspec::TargetSpec> targets_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(header_of(rows, "targets"), {"metric", "marginal", "ideal"}, "targets");
  std::vector<needspec::TargetSpec> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 3, r, "targets");
    out.push_back({trim(rows[r][0]), needspec::parse_constraint(rows[r][1]), needspec::parse_constraint(rows[r][2])});
  }
  return out;
}

std::string trajectory_to_csv(const std::vector<sensitivity::TrajectoryPoint>& points,
                              const std::vector<std::string>& concepts) {
  std::vector<CsvRow> rows;
  CsvRow header{"weight"};
  header.insert(header.end(), concepts.begin(), concepts.end());
  rows.push_back(header);
  for (const auto& pt : points) {
    CsvRow row{pt.weight.to_display()};
    for (int r : pt.ranks) row.push_back(std::to_string(r));
    rows.push_back(row);
  }
  return write_csv(rows);
}

}  // namespace dforge::io
