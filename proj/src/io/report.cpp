#include "dforge/io/report.hpp"

#include <sstream>

#include "dforge/io/csv.hpp"
#include "dforge/morpho/morph.hpp"
#include "dforge/needspec/constraint.hpp"
#include "dforge/needspec/needspec.hpp"
#include "dforge/sensitivity/sensitivity.hpp"
#include "dforge/tournament/funnel.hpp"

namespace dforge::io {

namespace {

using Row = std::vector<std::string>;

std::string escape(const std::string& cell) {
  std::string out;
  for (char c : cell) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

void table(std::ostream& os, const Row& header, const std::vector<Row>& rows) {
  os << "|";
  for (const auto& h : header) os << ' ' << escape(h) << " |";
  os << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) os << " --- |";
  os << "\n";
  for (const auto& r : rows) {
    os << "|";
    for (std::size_t i = 0; i < header.size(); ++i) os << ' ' << (i < r.size() ? escape(r[i]) : "") << " |";
    os << "\n";
  }
  os << "\n";
}

void none(std::ostream& os) { os << "_none_\n\n"; }

std::string mark_text(tournament::Mark m) {
  switch (m) {
    case tournament::Mark::pass: return "1";
    case tournament::Mark::fail: return "0";
    case tournament::Mark::unknown: return "?";
  }
  return "";
}

std::string sign_text(int r) { return r > 0 ? "+" : r < 0 ? "-" : "0"; }

const std::string kDeclared = " (declared)";

struct Context {
  const Project& p;
  const ReportOptions& options;
  std::ostream& os;
};

void funnel_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Funnel\n\n";
  if (ctx.p.funnel.stages.empty()) return none(os);
  tournament::FunnelReport report;
  try {
    report = tournament::run_funnel(ctx.p);
  } catch (const Error& e) {
    os << "Funnel could not be evaluated: " << e.what() << "\n\n";
    return;
  }
  for (std::size_t s = 0; s < report.stages.size(); ++s) {
    const auto& stage = ctx.p.funnel.stages[s];
    const auto& result = report.stages[s];
    os << "### " << stage.name << "\n\n";
    os << "Unknown marks: " << tournament::to_string(stage.unknown_policy) << ". Entering: " << result.input.size()
       << ". Computed survivors: " << result.survivors.size();
    if (result.declared_survivors) os << ". Survivors" << kDeclared << ": " << *result.declared_survivors;
    os << ".\n\n";
    Row header{"Opportunity"};
    header.insert(header.end(), stage.criteria.begin(), stage.criteria.end());
    header.push_back("Computed");
    header.push_back("Outcome" + kDeclared);
    std::vector<Row> rows;
    for (const auto& row : result.rows) {
      Row r{row.opportunity};
      for (const auto& v : stage.verdicts) {
        if (v.opportunity != row.opportunity) continue;
        for (auto m : v.marks) r.push_back(mark_text(m));
        break;
      }
      r.emplace_back(tournament::to_string(row.computed));
      r.push_back(row.declared ? std::string(tournament::to_string(*row.declared)) : "");
      rows.push_back(std::move(r));
    }
    table(os, header, rows);
  }
  os << "Final survivors:";
  for (const auto& s : report.survivors) os << ' ' << s;
  os << "\n\n";
}

void needs_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Needs\n\n";
  if (ctx.p.needs.empty()) return none(os);
  std::vector<Row> rows;
  for (const auto& n : ctx.p.needs) {
    rows.push_back({n.id, n.group.value_or(""), n.importance ? std::to_string(*n.importance) : "", n.interpreted});
  }
  table(os, {"Need", "Group", "Importance", "Statement"}, rows);
  const auto cov = needspec::coverage_report(ctx.p.needs, ctx.p.metrics, ctx.p.links);
  os << "Needs without a metric: " << cov.uncovered_needs.size() << ". Metrics without a need: "
     << cov.unused_metrics.size() << ".\n\n";
}

void metrics_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Metrics\n\n";
  if (ctx.p.metrics.empty()) return none(os);
  std::vector<Row> rows;
  for (const auto& m : ctx.p.metrics) {
    std::string needs;
    for (const auto& l : ctx.p.links) {
      if (l.metric == m.id) needs += (needs.empty() ? "" : ", ") + l.need;
    }
    rows.push_back({std::to_string(m.ordinal), m.name, std::to_string(m.importance), m.unit, needs});
  }
  table(os, {"#", "Metric", "Importance", "Unit", "Needs"}, rows);
}

void benchmark_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Benchmark\n\n";
  if (ctx.p.benchmarks.empty()) return none(os);
  for (auto mode : {needspec::BenchmarkMode::values, needspec::BenchmarkMode::satisfaction}) {
    const auto grid = needspec::benchmark_table(ctx.p.benchmarks, ctx.p.metrics, mode);
    os << (mode == needspec::BenchmarkMode::values ? "### Values\n\n" : "### Satisfaction\n\n");
    Row header{"Metric"};
    header.insert(header.end(), grid.products.begin(), grid.products.end());
    std::vector<Row> rows;
    for (std::size_t m = 0; m < grid.metrics.size(); ++m) {
      Row r{grid.metrics[m]};
      r.insert(r.end(), grid.cells[m].begin(), grid.cells[m].end());
      rows.push_back(std::move(r));
    }
    if (mode == needspec::BenchmarkMode::satisfaction) {
      Row total{"Importance x satisfaction"};
      for (auto t : grid.weighted_totals) total.push_back(std::to_string(t));
      rows.push_back(std::move(total));
    }
    table(os, header, rows);
  }
}

void targets_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Targets\n\n";
  if (ctx.p.targets.empty()) return none(os);
  std::vector<Row> rows;
  for (const auto& t : ctx.p.targets) {
    rows.push_back({t.metric, needspec::render_constraint(t.marginal), needspec::render_constraint(t.ideal)});
  }
  table(os, {"Metric", "Marginal", "Ideal"}, rows);
  const auto findings = needspec::target_consistency(ctx.p);
  if (findings.empty()) return;
  std::vector<Row> frows;
  for (const auto& f : findings) frows.push_back({f.metric, std::string(needspec::to_string(f.kind)), f.message});
  table(os, {"Metric", "Finding", "Detail"}, frows);
}

void charts_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Charts\n\n";
  if (ctx.p.charts.empty()) return none(os);
  for (const auto& chart : ctx.p.charts) {
    os << "### " << chart.name << "\n\n";
    Row header;
    std::size_t depth = 0;
    for (const auto& c : chart.columns) {
      header.push_back(c.name);
      depth = std::max(depth, c.fragments.size());
    }
    std::vector<Row> rows;
    for (std::size_t r = 0; r < depth; ++r) {
      Row row;
      for (const auto& c : chart.columns) row.push_back(r < c.fragments.size() ? c.fragments[r] : "");
      rows.push_back(std::move(row));
    }
    table(os, header, rows);
    os << "Combinations: " << morpho::combination_count(chart).str() << "\n\n";
    std::vector<Row> concepts;
    for (const auto& c : ctx.p.concepts) {
      if (c.chart != chart.id) continue;
      Row row{c.id, c.name};
      row.insert(row.end(), c.selection.begin(), c.selection.end());
      concepts.push_back(std::move(row));
    }
    if (!concepts.empty()) {
      Row cheader{"Concept", "Name"};
      cheader.insert(cheader.end(), header.begin(), header.end());
      table(os, cheader, concepts);
    }
  }
}

void screening_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Screening\n\n";
  if (ctx.p.pugh_matrices.empty()) return none(os);
  for (const auto& m : ctx.p.pugh_matrices) {
    os << "### " << m.id << "\n\n";
    selection::PughResult result;
    try {
      result = selection::screen(m, ctx.options.continue_rule);
    } catch (const Error& e) {
      os << "Matrix could not be screened: " << e.what() << "\n\n";
      continue;
    }
    Row header{"Selection criteria"};
    for (const auto& c : m.concepts) header.push_back(c == m.reference ? c + " (Reference)" : c);
    std::vector<Row> rows;
    for (std::size_t k = 0; k < m.criteria.size(); ++k) {
      Row r{m.criteria[k]};
      for (int v : m.ratings[k]) r.push_back(sign_text(v));
      rows.push_back(std::move(r));
    }
    auto agg = [&](const std::string& label, auto get) {
      Row r{label};
      for (const auto& c : result.concepts) r.push_back(get(c));
      rows.push_back(std::move(r));
    };
    agg("Sum +'s", [](const auto& c) { return std::to_string(c.plus); });
    agg("Sum 0's", [](const auto& c) { return std::to_string(c.zero); });
    agg("Sum -'s", [](const auto& c) { return std::to_string(c.minus); });
    agg("Net score", [](const auto& c) { return std::to_string(c.net); });
    agg("Rank", [](const auto& c) { return std::to_string(c.rank); });
    agg("Continue?", [](const auto& c) { return std::string(c.proceed ? "yes" : "no"); });
    table(os, header, rows);
  }
}

void scoring_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Scoring\n\n";
  if (ctx.p.scoring_matrices.empty()) return none(os);
  for (const auto& m : ctx.p.scoring_matrices) {
    os << "### " << m.id << "\n\n";
    selection::ScoringResult result;
    try {
      result = selection::score(m, ctx.options.decision_rule);
    } catch (const Error& e) {
      os << "Matrix could not be scored: " << e.what() << "\n\n";
      continue;
    }
    Row header{"Selection criteria", "Weight"};
    for (const auto& c : m.concepts) {
      header.push_back(c + " rating");
      header.push_back(c + " weighted");
    }
    std::vector<Row> rows;
    for (std::size_t k = 0; k < m.criteria.size(); ++k) {
      Row r{m.criteria[k].id, m.criteria[k].weight.to_display()};
      for (std::size_t c = 0; c < m.concepts.size(); ++c) {
        r.push_back(std::to_string(m.ratings[k][c]));
        r.push_back(result.concepts[c].weighted[k].to_display());
      }
      rows.push_back(std::move(r));
    }
    auto agg = [&](const std::string& label, auto get) {
      Row r{label, ""};
      for (const auto& c : result.concepts) {
        r.emplace_back();
        r.push_back(get(c));
      }
      rows.push_back(std::move(r));
    };
    agg("Total score", [](const auto& c) { return c.total.to_display(); });
    agg("Rank", [](const auto& c) { return std::to_string(c.rank); });
    agg("Decision", [](const auto& c) { return std::string(selection::to_string(c.decision)); });
    table(os, header, rows);
    if (ctx.options.significance_threshold) {
      for (const auto& note : selection::significance_notes(result, *ctx.options.significance_threshold)) {
        os << "- " << note << "\n";
      }
      os << "\n";
    }
  }
}

void audit_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Audit\n\n";
  std::vector<Row> rows;
  for (const auto& m : ctx.p.pugh_matrices) {
    if (!m.declared) continue;
    try {
      for (const auto& f : selection::audit(m, ctx.options.continue_rule)) {
        rows.push_back({f.matrix, f.aggregate, f.concept_id, f.criterion, f.declared, f.computed});
      }
    } catch (const Error& e) {
      rows.push_back({m.id, "error", "", "", "", e.what()});
    }
  }
  for (const auto& m : ctx.p.scoring_matrices) {
    if (!m.declared) continue;
    try {
      for (const auto& f : selection::audit(m, ctx.options.decision_rule)) {
        rows.push_back({f.matrix, f.aggregate, f.concept_id, f.criterion, f.declared, f.computed});
      }
    } catch (const Error& e) {
      rows.push_back({m.id, "error", "", "", "", e.what()});
    }
  }
  if (!ctx.p.funnel.stages.empty()) {
    try {
      const auto report = tournament::run_funnel(ctx.p);
      for (const auto& f : report.discrepancies()) {
        if (f.kind == tournament::FlagKind::unknown_mark) continue;
        rows.push_back({"funnel", std::string(tournament::to_string(f.kind)), f.opportunity, f.stage, "", f.message});
      }
    } catch (const Error& e) {
      rows.push_back({"funnel", "error", "", "", "", e.what()});
    }
  }
  if (rows.empty()) return none(os);
  table(os, {"Matrix", "Aggregate", "Concept", "Criterion / stage", "Declared", "Computed"}, rows);
}

void sensitivity_section(Context& ctx) {
  auto& os = ctx.os;
  os << "## Sensitivity\n\n";
  if (ctx.p.scoring_matrices.empty()) return none(os);
  for (const auto& m : ctx.p.scoring_matrices) {
    os << "### " << m.id << "\n\n";
    std::vector<Row> rows;
    try {
      for (const auto& c : m.criteria) {
        for (const auto& x : sensitivity::all_crossing_points(m, c.id)) {
          rows.push_back({c.id, c.weight.to_display(), x.weight.to_fixed(9), x.first + "/" + x.second, x.order_below,
                          x.order_above});
        }
      }
    } catch (const Error& e) {
      os << "Crossings could not be computed: " << e.what() << "\n\n";
      continue;
    }
    if (rows.empty()) {
      none(os);
      continue;
    }
    table(os, {"Criterion", "Current weight", "Crossing weight", "Pair", "Below", "Above"}, rows);
  }
}

std::string screening_csv(const selection::PughMatrix& m, const ReportOptions& options) {
  std::vector<CsvRow> rows{{"concept", "plus", "zero", "minus", "net", "rank", "continue"}};
  for (const auto& c : selection::screen(m, options.continue_rule).concepts) {
    rows.push_back({c.concept_id, std::to_string(c.plus), std::to_string(c.zero), std::to_string(c.minus),
                    std::to_string(c.net), std::to_string(c.rank), c.proceed ? "yes" : "no"});
  }
  return write_csv(rows);
}

std::string scoring_csv(const selection::ScoringMatrix& m, const ReportOptions& options) {
  CsvRow header{"concept"};
  for (const auto& c : m.criteria) header.push_back(c.id);
  header.insert(header.end(), {"total", "rank", "decision"});
  std::vector<CsvRow> rows{header};
  for (const auto& c : selection::score(m, options.decision_rule).concepts) {
    CsvRow r{c.concept_id};
    for (const auto& w : c.weighted) r.push_back(w.to_display());
    r.insert(r.end(), {c.total.to_display(), std::to_string(c.rank), std::string(selection::to_string(c.decision))});
    rows.push_back(std::move(r));
  }
  return write_csv(rows);
}

}  // namespace

std::string markdown_report(const Project& project, const ReportOptions& options) {
  std::ostringstream os;
  auto title = project.metadata.find("project");
  os << "# Decision report" << (title == project.metadata.end() ? "" : ": " + title->second) << "\n\n";
  Context ctx{project, options, os};
  funnel_section(ctx);
  needs_section(ctx);
  metrics_section(ctx);
  benchmark_section(ctx);
  targets_section(ctx);
  charts_section(ctx);
  screening_section(ctx);
  scoring_section(ctx);
  audit_section(ctx);
  sensitivity_section(ctx);
  return os.str();
}

ReportArtifact generate_report(const Project& project, ReportFormat format, const ReportOptions& options) {
  ReportArtifact out;
  if (format == ReportFormat::markdown) {
    out["report.md"] = markdown_report(project, options);
    return out;
  }
  for (std::size_t s = 0; s < project.funnel.stages.size(); ++s) {
    out["funnel-stage-" + std::to_string(s + 1) + ".csv"] = verdicts_to_csv(project.funnel.stages[s]);
  }
  out["metrics.csv"] = metrics_to_csv(project.metrics);
  out["links.csv"] = links_to_csv(project.links);
  out["benchmarks.csv"] = benchmarks_to_csv(project.benchmarks);
  out["targets.csv"] = targets_to_csv(project.targets);
  for (const auto& c : project.charts) out["chart-" + c.id + ".csv"] = chart_to_csv(c);
  for (const auto& m : project.pugh_matrices) {
    out["pugh-" + m.id + ".csv"] = pugh_to_csv(m);
    try {
      out["screening-" + m.id + ".csv"] = screening_csv(m, options);
    } catch (const Error&) {
    }
  }
  std::vector<CsvRow> audit_rows{{"matrix", "aggregate", "concept", "criterion", "declared", "computed"}};
  for (const auto& m : project.scoring_matrices) {
    out["scoring-matrix-" + m.id + ".csv"] = scoring_to_csv(m);
    try {
      out["scoring-" + m.id + ".csv"] = scoring_csv(m, options);
      if (m.declared) {
        for (const auto& f : selection::audit(m, options.decision_rule)) {
          audit_rows.push_back({f.matrix, f.aggregate, f.concept_id, f.criterion, f.declared, f.computed});
        }
      }
      std::vector<CsvRow> crossings{{"criterion", "weight", "first", "second", "order_below", "order_above"}};
      for (const auto& c : m.criteria) {
        for (const auto& x : sensitivity::all_crossing_points(m, c.id)) {
          crossings.push_back({c.id, x.weight.to_fixed(9), x.first, x.second, x.order_below, x.order_above});
        }
      }
      out["crossings-" + m.id + ".csv"] = write_csv(crossings);
    } catch (const Error&) {
    }
  }
  for (const auto& m : project.pugh_matrices) {
    if (!m.declared) continue;
    try {
      for (const auto& f : selection::audit(m, options.continue_rule)) {
        audit_rows.push_back({f.matrix, f.aggregate, f.concept_id, f.criterion, f.declared, f.computed});
      }
    } catch (const Error&) {
    }
  }
  out["audit.csv"] = write_csv(audit_rows);
  return out;
}

}  // namespace dforge::io
