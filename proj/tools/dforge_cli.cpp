#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dforge/core/validate.hpp"
#include "dforge/io/csv.hpp"
#include "dforge/io/json.hpp"
#include "dforge/io/report.hpp"
#include "dforge/io/service.hpp"
#include "dforge/morpho/morph.hpp"
#include "dforge/selection/selection.hpp"
#include "dforge/sensitivity/sensitivity.hpp"
#include "dforge/tournament/funnel.hpp"

using namespace dforge;

namespace {

constexpr int kExitError = 1;
constexpr int kExitStrictAudit = 3;

struct Globals {
  std::string project;
  std::string format = "text";
  bool strict_audit = false;
};

bool json_out(const Globals& g) { return g.format == "json"; }

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    if (widths.size() < r.size()) widths.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(widths[i] - r[i].size() + 2, ' ');
    }
    std::cout << line << "\n";
  }
}

Project load(const Globals& g) {
  if (g.project.empty()) throw Error("--project is required");
  return io::load_project_file(g.project);
}

/// Loads and validates; validation errors go to stderr and abort the verb.
Project load_valid(const Globals& g) {
  Project p = load(g);
  const auto report = validate_project(p);
  if (report.has_errors()) {
    for (const auto& i : report.issues) {
      if (i.severity == Severity::error) std::cerr << "error: " << i.location << ": " << i.message << "\n";
    }
    throw Error("project has " + std::to_string(report.error_count()) + " validation error(s)");
  }
  return p;
}

const selection::ScoringMatrix& pick_scoring(const Project& p, const std::string& id) {
  if (id.empty()) {
    if (p.scoring_matrices.size() == 1) return p.scoring_matrices.front();
    throw Error("--matrix is required when the project has " + std::to_string(p.scoring_matrices.size()) +
                " scoring matrices");
  }
  const auto* m = p.find_scoring(id);
  if (!m) throw Error("no scoring matrix '" + id + "'");
  return *m;
}

const morpho::MorphChart& pick_chart(const Project& p, const std::string& id) {
  if (id.empty()) {
    if (p.charts.size() == 1) return p.charts.front();
    throw Error("--chart is required when the project has " + std::to_string(p.charts.size()) + " charts");
  }
  const auto* c = p.find_chart(id);
  if (!c) throw Error("no chart '" + id + "'");
  return *c;
}

selection::ContinueRule parse_continue(const std::string& text) {
  if (text == "net-positive") return selection::ContinueRule::net_positive();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const int value = std::stoi(text.substr(colon + 1));
    if (kind == "top-k") return selection::ContinueRule::top_k(value);
    if (kind == "net-at-least") return selection::ContinueRule::net_at_least(value);
  }
  throw Error("continue rule must be net-positive, top-k:N or net-at-least:N");
}

std::string pair_order(const sensitivity::CrossingPoint& c) { return c.order_below + " -> " + c.order_above; }

// ---------------------------------------------------------------------------

int cmd_validate(const Globals& g) {
  const Project p = load(g);
  const auto report = validate_project(p);
  if (json_out(g)) {
    std::cout << io::to_json(report).dump(2) << "\n";
  } else if (report.empty()) {
    std::cout << "ok\n";
  } else {
    for (const auto& i : report.issues) {
      std::cout << (i.severity == Severity::error ? "error" : "warning") << ": " << i.location << ": " << i.message
                << "\n";
    }
  }
  return report.has_errors() ? kExitError : 0;
}

int cmd_funnel(const Globals& g) {
  const Project p = load_valid(g);
  const auto report = tournament::run_funnel(p);
  if (json_out(g)) {
    std::cout << io::to_json(report).dump(2) << "\n";
    return 0;
  }
  for (const auto& s : report.stages) {
    std::cout << s.stage << ": " << s.input.size() << " in, " << s.survivors.size() << " survive";
    if (s.declared_survivors) std::cout << " (declared " << *s.declared_survivors << ")";
    std::cout << "\n";
    for (const auto& f : s.flags) std::cout << "  " << tournament::to_string(f.kind) << ": " << f.message << "\n";
  }
  std::cout << "survivors:";
  for (const auto& s : report.survivors) {
    const auto it = std::find_if(p.opportunities.begin(), p.opportunities.end(),
                                 [&](const Opportunity& o) { return o.id == s; });
    std::cout << "\n  " << s << (it != p.opportunities.end() ? "  " + it->title : "");
  }
  std::cout << "\n";
  return 0;
}

int cmd_morph_count(const Globals& g, const std::string& chart_id) {
  const Project p = load_valid(g);
  const auto& chart = pick_chart(p, chart_id);
  const auto n = morpho::combination_count(chart);
  if (json_out(g)) std::cout << io::Json{{"chart", chart.id}, {"count", n.str()}}.dump(2) << "\n";
  else std::cout << n.str() << "\n";
  return 0;
}

int cmd_morph_enum(const Globals& g, const std::string& chart_id, const std::vector<std::string>& excludes,
                   std::optional<std::size_t> limit) {
  const Project p = load_valid(g);
  const auto& chart = pick_chart(p, chart_id);
  std::vector<morpho::Exclusion> exclusions;
  for (const auto& e : excludes) {
    const auto eq = e.find('=');
    if (eq == std::string::npos) exclusions.push_back({"", e});
    else exclusions.push_back({e.substr(0, eq), e.substr(eq + 1)});
  }
  morpho::ConceptEnumerator en(chart, exclusions, limit);
  std::vector<io::CsvRow> rows;
  io::CsvRow header;
  for (const auto& c : chart.columns) header.push_back(c.name);
  rows.push_back(header);
  while (auto s = en.next()) rows.push_back(en.labels(*s));
  if (json_out(g)) {
    io::Json out = io::Json::array();
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(rows[i]);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << io::write_csv(rows);
  }
  return 0;
}

int cmd_screen(const Globals& g, const std::string& matrix, const std::string& rule_text) {
  const Project p = load_valid(g);
  const auto rule = parse_continue(rule_text);
  io::Json all = io::Json::array();
  bool found = false;
  for (const auto& m : p.pugh_matrices) {
    if (!matrix.empty() && m.id != matrix) continue;
    found = true;
    const auto r = selection::screen(m, rule);
    if (json_out(g)) {
      auto j = io::to_json(r);
      j["matrix"] = m.id;
      all.push_back(j);
      continue;
    }
    std::cout << "matrix " << m.id << " (reference " << m.reference << ")\n";
    std::vector<std::vector<std::string>> rows{{"concept", "+", "0", "-", "net", "rank", "continue"}};
    for (const auto& c : r.concepts) {
      rows.push_back({c.concept_id, std::to_string(c.plus), std::to_string(c.zero), std::to_string(c.minus),
                      std::to_string(c.net), std::to_string(c.rank), c.proceed ? "yes" : "no"});
    }
    print_table(rows);
  }
  if (!found) throw Error(matrix.empty() ? "project has no screening matrices" : "no screening matrix '" + matrix + "'");
  if (json_out(g)) std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_score(const Globals& g, const std::string& matrix, int develop_through, const std::string& threshold) {
  const Project p = load_valid(g);
  io::Json all = io::Json::array();
  bool found = false;
  for (const auto& m : p.scoring_matrices) {
    if (!matrix.empty() && m.id != matrix) continue;
    found = true;
    const auto r = selection::score(m, {develop_through});
    if (json_out(g)) {
      auto j = io::to_json(r);
      j["matrix"] = m.id;
      all.push_back(j);
      continue;
    }
    std::cout << "matrix " << m.id << "\n";
    std::vector<std::vector<std::string>> rows{{"concept", "total", "rank", "decision"}};
    for (const auto& c : r.concepts) {
      rows.push_back({c.concept_id, c.total.to_display(), std::to_string(c.rank),
                      std::string(selection::to_string(c.decision))});
    }
    print_table(rows);
    if (!threshold.empty()) {
      for (const auto& n : selection::significance_notes(r, Rational::parse(threshold))) std::cout << "note: " << n << "\n";
    }
  }
  if (!found) throw Error(matrix.empty() ? "project has no scoring matrices" : "no scoring matrix '" + matrix + "'");
  if (json_out(g)) std::cout << all.dump(2) << "\n";
  return 0;
}

int cmd_audit(const Globals& g, const std::string& matrix) {
  const Project p = load_valid(g);
  std::vector<selection::AuditFinding> findings;
  std::vector<tournament::Flag> flags;
  bool audited = false;
  for (const auto& m : p.pugh_matrices) {
    if ((!matrix.empty() && m.id != matrix) || (matrix.empty() && !m.declared)) continue;
    auto f = selection::audit(m);
    findings.insert(findings.end(), f.begin(), f.end());
    audited = true;
  }
  for (const auto& m : p.scoring_matrices) {
    if ((!matrix.empty() && m.id != matrix) || (matrix.empty() && !m.declared)) continue;
    auto f = selection::audit(m);
    findings.insert(findings.end(), f.begin(), f.end());
    audited = true;
  }
  if ((matrix.empty() || matrix == "funnel") && !p.funnel.stages.empty()) {
    for (const auto& f : tournament::run_funnel(p).discrepancies()) {
      if (f.kind != tournament::FlagKind::unknown_mark) flags.push_back(f);
    }
    audited = true;
  }
  if (!audited) throw Error(matrix.empty() ? "nothing to audit" : "no matrix '" + matrix + "' with declared values");

  if (json_out(g)) {
    io::Json fl = io::Json::array();
    for (const auto& f : flags) {
      fl.push_back({{"stage", f.stage}, {"kind", std::string(tournament::to_string(f.kind))},
                    {"opportunity", f.opportunity}, {"message", f.message}});
    }
    std::cout << io::Json{{"findings", io::to_json(findings)}, {"funnel", fl}}.dump(2) << "\n";
  } else {
    for (const auto& f : findings) {
      std::cout << f.matrix << ": " << f.aggregate << " " << f.concept_id;
      if (!f.criterion.empty()) std::cout << "/" << f.criterion;
      std::cout << ": declared " << f.declared << ", computed " << f.computed << "\n";
    }
    for (const auto& f : flags) std::cout << "funnel: " << f.stage << ": " << f.message << "\n";
    if (findings.empty() && flags.empty()) std::cout << "no findings\n";
  }
  if (g.strict_audit && !(findings.empty() && flags.empty())) return kExitStrictAudit;
  return 0;
}

int cmd_derive_pugh(const Globals& g, const std::string& matrix, const std::string& reference) {
  const Project p = load_valid(g);
  const auto& m = pick_scoring(p, matrix);
  const auto pugh = selection::derive_pugh(m, reference);
  if (json_out(g)) std::cout << io::to_json(selection::screen(pugh)).dump(2) << "\n";
  else std::cout << io::pugh_to_csv(pugh);
  return 0;
}

int cmd_sweep(const Globals& g, const std::string& matrix, const std::string& criterion, std::size_t samples,
              unsigned threads, const std::string& output) {
  const Project p = load_valid(g);
  const auto& m = pick_scoring(p, matrix);
  const auto traj = sensitivity::rank_trajectory(m, criterion, samples, threads);
  std::string text = json_out(g) ? io::to_json(traj, m.concepts).dump(2) + "\n" : io::trajectory_to_csv(traj, m.concepts);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error("cannot write '" + output + "'");
    out << text;
  }
  return 0;
}

int cmd_cross(const Globals& g, const std::string& matrix, const std::string& criterion) {
  const Project p = load_valid(g);
  const auto& m = pick_scoring(p, matrix);
  const auto points = sensitivity::all_crossing_points(m, criterion);
  if (json_out(g)) {
    std::cout << io::to_json(points).dump(2) << "\n";
    return 0;
  }
  if (points.empty()) std::cout << "no crossings in [0, 1)\n";
  std::vector<std::vector<std::string>> rows{{"weight", "pair", "order"}};
  for (const auto& c : points) rows.push_back({c.weight.to_fixed(9), c.first + "/" + c.second, pair_order(c)});
  if (!points.empty()) print_table(rows);
  return 0;
}

int cmd_report(const Globals& g, const std::string& output, const std::string& threshold) {
  const Project p = load_valid(g);
  io::ReportOptions options;
  if (!threshold.empty()) options.significance_threshold = Rational::parse(threshold);
  const bool bundle = g.format == "csv-bundle" || g.format == "csv";
  const auto artifact = io::generate_report(p, bundle ? io::ReportFormat::csv_bundle : io::ReportFormat::markdown, options);
  if (!bundle) {
    const std::string& md = artifact.at("report.md");
    if (output.empty()) {
      std::cout << md;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw Error("cannot write '" + output + "'");
      out << md;
    }
    return 0;
  }
  if (output.empty()) throw Error("csv-bundle reports need --output <directory>");
  std::filesystem::create_directories(output);
  for (const auto& [name, content] : artifact) {
    std::ofstream out(std::filesystem::path(output) / name, std::ios::binary);
    if (!out) throw Error("cannot write '" + name + "'");
    out << content;
  }
  std::cout << "wrote " << artifact.size() << " files to " << output << "\n";
  return 0;
}

int cmd_serve(const Globals& g, const std::string& bind_flag) {
  if (g.project.empty()) throw Error("--project is required");
  const auto bind = io::resolve_bind(bind_flag.empty() ? std::nullopt : std::optional(bind_flag),
                                     std::getenv("DECISIONFORGE_BIND"));
  io::serve(g.project, bind);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision tooling for early-stage product design"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--project,-p", g.project, "Project file (JSON)");
  app.add_option("--format,-f", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv", "markdown", "csv-bundle"}));
  app.add_flag("--strict-audit", g.strict_audit, "Exit nonzero when audit finds discrepancies");

  int rc = 0;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Check invariants and cross-references");
  validate->callback([&] { run = [&] { return cmd_validate(g); }; });

  auto* funnel = app.add_subcommand("funnel", "Run the opportunity funnel");
  funnel->callback([&] { run = [&] { return cmd_funnel(g); }; });

  auto* morph = app.add_subcommand("morph", "Morphological chart tools");
  morph->require_subcommand(1);
  std::string chart_id;
  std::vector<std::string> excludes;
  std::optional<std::size_t> limit;
  auto* count = morph->add_subcommand("count", "Number of combinations");
  count->add_option("--chart", chart_id);
  count->callback([&] { run = [&] { return cmd_morph_count(g, chart_id); }; });
  auto* enumerate = morph->add_subcommand("enum", "Stream combinations as CSV");
  enumerate->add_option("--chart", chart_id);
  enumerate->add_option("--exclude", excludes, "FRAGMENT or COLUMN=FRAGMENT");
  enumerate->add_option("--limit", limit);
  enumerate->callback([&] { run = [&] { return cmd_morph_enum(g, chart_id, excludes, limit); }; });

  std::string matrix;
  auto* screen = app.add_subcommand("screen", "Pugh screening");
  std::string rule = "net-positive";
  screen->add_option("--matrix,-m", matrix);
  screen->add_option("--continue", rule, "net-positive | top-k:N | net-at-least:N");
  screen->callback([&] { run = [&] { return cmd_screen(g, matrix, rule); }; });

  auto* score = app.add_subcommand("score", "Weighted concept scoring");
  int develop_through = 1;
  std::string threshold;
  score->add_option("--matrix,-m", matrix);
  score->add_option("--develop-through", develop_through, "Ranks up to this are marked develop");
  score->add_option("--threshold", threshold, "Annotate adjacent totals closer than this");
  score->callback([&] { run = [&] { return cmd_score(g, matrix, develop_through, threshold); }; });

  auto* audit = app.add_subcommand("audit", "Compare declared aggregates with recomputation");
  audit->add_option("--matrix,-m", matrix, "Matrix id, or 'funnel'");
  audit->callback([&] { run = [&] { return cmd_audit(g, matrix); }; });

  auto* derive = app.add_subcommand("derive-pugh", "Relative ratings from a scoring matrix");
  std::string reference;
  derive->add_option("--matrix,-m", matrix);
  derive->add_option("--reference,-r", reference)->required();
  derive->callback([&] { run = [&] { return cmd_derive_pugh(g, matrix, reference); }; });

  auto* sens = app.add_subcommand("sensitivity", "Weight sensitivity");
  sens->require_subcommand(1);
  std::string criterion;
  std::size_t samples = 21;
  unsigned threads = 0;
  std::string output;
  auto* sweep = sens->add_subcommand("sweep", "Rank trajectory over [0, 0.99]");
  sweep->add_option("--matrix,-m", matrix);
  sweep->add_option("--criterion,-c", criterion)->required();
  sweep->add_option("--samples,-n", samples)->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--output,-o", output);
  sweep->callback([&] { run = [&] { return cmd_sweep(g, matrix, criterion, samples, threads, output); }; });
  auto* cross = sens->add_subcommand("cross", "Exact crossing weights");
  cross->add_option("--matrix,-m", matrix);
  cross->add_option("--criterion,-c", criterion)->required();
  cross->callback([&] { run = [&] { return cmd_cross(g, matrix, criterion); }; });

  auto* report = app.add_subcommand("report", "Markdown or CSV bundle report");
  std::string report_out;
  report->add_option("--output,-o", report_out, "File (markdown) or directory (csv-bundle)");
  report->add_option("--threshold", threshold);
  report->callback([&] { run = [&] { return cmd_report(g, report_out, threshold); }; });

  auto* serve = app.add_subcommand("serve", "HTTP service for the workbench");
  std::string bind;
  serve->add_option("--bind", bind, "host:port (overrides DECISIONFORGE_BIND)");
  serve->callback([&] { run = [&] { return cmd_serve(g, bind); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    rc = run ? run() : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
