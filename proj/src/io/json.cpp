#include "dforge/io/json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dforge::io {

namespace {

using needspec::Constraint;

/// Reads one JSON object, remembering which keys were consumed so that
/// leftovers can be rejected.
class Obj {
 public:
  Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("expected an object");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw PersistenceError((path_.empty() ? std::string("<root>") : path_) + ": " + what);
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const Json& at(const char* key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
    return j_.at(key);
  }

  std::string sub(const char* key) const { return path_.empty() ? key : path_ + "/" + key; }

  std::string str(const char* key) {
    const Json& v = at(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<std::string> opt_str(const char* key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return str(key);
  }

  long long integer(const char* key) {
    const Json& v = at(key);
    if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
    return v.get<long long>();
  }

  std::optional<long long> opt_integer(const char* key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return integer(key);
  }

  const Json& array(const char* key) {
    const Json& v = at(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    return v;
  }

  const Json* opt_array(const char* key) {
    if (!has(key)) {
      seen_.insert(key);
      return nullptr;
    }
    return &array(key);
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        fail("unknown field '" + it.key() + "' (format_version " + std::to_string(kFormatVersion) + ")");
      }
    }
  }

  /// Marks an absent or null optional field as handled.
  void skip(const char* key) { seen_.insert(key); }

  const std::string& path() const { return path_; }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw PersistenceError(path + ": " + what);
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) fail_at(path, "expected a string");
  return v.get<std::string>();
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail_at(path, "expected an integer");
  return v.get<int>();
}

ExactDecimal as_decimal(const Json& v, const std::string& path) {
  try {
    return ExactDecimal::parse(as_string(v, path));
  } catch (const DecimalParseError& e) {
    fail_at(path, e.what());
  }
}

Rational as_rational(const Json& v, const std::string& path) {
  try {
    return Rational::parse(as_string(v, path));
  } catch (const std::exception& e) {
    fail_at(path, e.what());
  }
}

std::vector<std::string> strings(const Json& arr, const std::string& path) {
  if (!arr.is_array()) fail_at(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_string(arr[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<int> ints(const Json& arr, const std::string& path) {
  if (!arr.is_array()) fail_at(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_int(arr[i], path + "/" + std::to_string(i)));
  return out;
}

std::vector<std::vector<int>> int_grid(const Json& arr, const std::string& path) {
  if (!arr.is_array()) fail_at(path, "expected an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(ints(arr[i], path + "/" + std::to_string(i)));
  return out;
}

template <typename T, typename F>
std::vector<T> each(const Json& arr, const std::string& path, F&& read) {
  if (!arr.is_array()) fail_at(path, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read(arr[i], path + "/" + std::to_string(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Writers

Json write(const Constraint& c) {
  Json j = Json::object();
  j["unit"] = c.unit;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, needspec::AtLeast>) {
          j["kind"] = "at_least";
          j["value"] = k.value.to_string();
        } else if constexpr (std::is_same_v<K, needspec::AtMost>) {
          j["kind"] = "at_most";
          j["value"] = k.value.to_string();
        } else if constexpr (std::is_same_v<K, needspec::Between>) {
          j["kind"] = "between";
          j["lo"] = k.lo.to_string();
          j["hi"] = k.hi.to_string();
        } else if constexpr (std::is_same_v<K, needspec::Exactly>) {
          j["kind"] = "exactly";
          j["value"] = k.value.to_string();
        } else if constexpr (std::is_same_v<K, needspec::OneOf>) {
          j["kind"] = "one_of";
          j["values"] = k.values;
        } else {
          j["kind"] = "qualitative";
          j["text"] = k.text;
        }
      },
      c.kind);
  return j;
}

Json write(const needspec::BenchmarkValue& v) {
  Json j = Json::object();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, needspec::NoValue>) {
          j["kind"] = "none";
        } else if constexpr (std::is_same_v<K, needspec::NumberValue>) {
          j["kind"] = "number";
          j["value"] = k.value.to_string();
        } else if constexpr (std::is_same_v<K, needspec::RangeValue>) {
          j["kind"] = "range";
          j["lo"] = k.lo.to_string();
          j["hi"] = k.hi.to_string();
        } else {
          j["kind"] = "text";
          j["text"] = k.text;
        }
      },
      v);
  return j;
}

Json write(const tournament::Stage& s) {
  Json j = Json::object();
  j["name"] = s.name;
  j["criteria"] = s.criteria;
  j["unknown_policy"] = std::string(tournament::to_string(s.unknown_policy));
  if (s.declared_survivors) j["declared_survivors"] = *s.declared_survivors;
  Json rows = Json::array();
  for (const auto& r : s.verdicts) {
    Json row = Json::object();
    row["opportunity"] = r.opportunity;
    Json marks = Json::array();
    for (auto m : r.marks) {
      if (m == tournament::Mark::unknown) marks.push_back(nullptr);
      else marks.push_back(m == tournament::Mark::pass ? 1 : 0);
    }
    row["marks"] = marks;
    if (r.declared) row["declared"] = std::string(tournament::to_string(*r.declared));
    rows.push_back(row);
  }
  j["verdicts"] = rows;
  return j;
}

Json write(const selection::PughMatrix& m) {
  Json j = Json::object();
  j["id"] = m.id;
  j["criteria"] = m.criteria;
  j["concepts"] = m.concepts;
  j["reference"] = m.reference;
  j["ratings"] = m.ratings;
  if (m.declared) {
    const auto& d = *m.declared;
    Json dj = Json::object();
    if (d.plus) dj["plus"] = *d.plus;
    if (d.zero) dj["zero"] = *d.zero;
    if (d.minus) dj["minus"] = *d.minus;
    if (d.net) dj["net"] = *d.net;
    if (d.rank) dj["rank"] = *d.rank;
    if (d.proceed) dj["continue"] = *d.proceed;
    j["declared"] = dj;
  }
  return j;
}

Json write(const selection::ScoringMatrix& m) {
  Json j = Json::object();
  j["id"] = m.id;
  Json crit = Json::array();
  for (const auto& c : m.criteria) crit.push_back({{"id", c.id}, {"weight", c.weight.to_string()}});
  j["criteria"] = crit;
  j["concepts"] = m.concepts;
  if (m.reference) j["reference"] = *m.reference;
  j["ratings"] = m.ratings;
  if (m.declared) {
    const auto& d = *m.declared;
    Json dj = Json::object();
    if (d.weighted) {
      Json grid = Json::array();
      for (const auto& row : *d.weighted) {
        Json r = Json::array();
        for (const auto& cell : row) {
          if (cell) r.push_back(cell->to_string());
          else r.push_back(nullptr);
        }
        grid.push_back(r);
      }
      dj["weighted"] = grid;
    }
    if (d.totals) {
      Json t = Json::array();
      for (const auto& x : *d.totals) t.push_back(x.to_string());
      dj["totals"] = t;
    }
    if (d.rank) dj["rank"] = *d.rank;
    if (d.decision) {
      Json t = Json::array();
      for (auto x : *d.decision) t.push_back(std::string(selection::to_string(x)));
      dj["decision"] = t;
    }
    j["declared"] = dj;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Readers

Constraint read_constraint(const Json& v, const std::string& path) {
  Obj o(v, path);
  Constraint c;
  c.unit = o.str("unit");
  const std::string kind = o.str("kind");
  auto dec = [&](const char* key) { return as_decimal(o.at(key), o.sub(key)); };
  if (kind == "at_least") c.kind = needspec::AtLeast{dec("value")};
  else if (kind == "at_most") c.kind = needspec::AtMost{dec("value")};
  else if (kind == "between") c.kind = needspec::Between{dec("lo"), dec("hi")};
  else if (kind == "exactly") c.kind = needspec::Exactly{dec("value")};
  else if (kind == "one_of") c.kind = needspec::OneOf{strings(o.at("values"), o.sub("values"))};
  else if (kind == "qualitative") c.kind = needspec::Qualitative{o.str("text")};
  else o.fail("unknown constraint kind '" + kind + "'");
  o.finish();
  return c;
}

needspec::BenchmarkValue read_benchmark_value(const Json& v, const std::string& path) {
  Obj o(v, path);
  const std::string kind = o.str("kind");
  needspec::BenchmarkValue out;
  if (kind == "none") out = needspec::NoValue{};
  else if (kind == "number") out = needspec::NumberValue{as_decimal(o.at("value"), o.sub("value"))};
  else if (kind == "range")
    out = needspec::RangeValue{as_decimal(o.at("lo"), o.sub("lo")), as_decimal(o.at("hi"), o.sub("hi"))};
  else if (kind == "text") out = needspec::QualitativeValue{o.str("text")};
  else o.fail("unknown benchmark value kind '" + kind + "'");
  o.finish();
  return out;
}

tournament::Stage read_stage(const Json& v, const std::string& path) {
  Obj o(v, path);
  tournament::Stage s;
  s.name = o.str("name");
  s.criteria = strings(o.at("criteria"), o.sub("criteria"));
  try {
    s.unknown_policy = tournament::parse_unknown_policy(o.str("unknown_policy"));
  } catch (const Error& e) {
    o.fail(e.what());
  }
  if (auto n = o.opt_integer("declared_survivors")) {
    if (*n < 0) o.fail("declared_survivors must not be negative");
    s.declared_survivors = static_cast<std::size_t>(*n);
  }
  s.verdicts = each<tournament::VerdictRow>(o.array("verdicts"), o.sub("verdicts"), [](const Json& rv, const std::string& rp) {
    Obj r(rv, rp);
    tournament::VerdictRow row;
    row.opportunity = r.str("opportunity");
    const Json& marks = r.array("marks");
    for (std::size_t i = 0; i < marks.size(); ++i) {
      const Json& m = marks[i];
      if (m.is_null()) row.marks.push_back(tournament::Mark::unknown);
      else if (m == 1) row.marks.push_back(tournament::Mark::pass);
      else if (m == 0) row.marks.push_back(tournament::Mark::fail);
      else r.fail("marks/" + std::to_string(i) + " must be 1, 0 or null");
    }
    if (auto d = r.opt_str("declared")) {
      try {
        row.declared = tournament::parse_outcome(*d);
      } catch (const Error& e) {
        r.fail(e.what());
      }
    }
    r.finish();
    return row;
  });
  o.finish();
  return s;
}

selection::PughMatrix read_pugh(const Json& v, const std::string& path) {
  Obj o(v, path);
  selection::PughMatrix m;
  m.id = o.str("id");
  m.criteria = strings(o.at("criteria"), o.sub("criteria"));
  m.concepts = strings(o.at("concepts"), o.sub("concepts"));
  m.reference = o.str("reference");
  m.ratings = int_grid(o.at("ratings"), o.sub("ratings"));
  if (o.has("declared")) {
    Obj d(o.at("declared"), o.sub("declared"));
    selection::PughDeclared pd;
    if (const Json* a = d.opt_array("plus")) pd.plus = ints(*a, d.sub("plus"));
    if (const Json* a = d.opt_array("zero")) pd.zero = ints(*a, d.sub("zero"));
    if (const Json* a = d.opt_array("minus")) pd.minus = ints(*a, d.sub("minus"));
    if (const Json* a = d.opt_array("net")) pd.net = ints(*a, d.sub("net"));
    if (const Json* a = d.opt_array("rank")) pd.rank = ints(*a, d.sub("rank"));
    if (const Json* a = d.opt_array("continue")) {
      pd.proceed = each<bool>(*a, d.sub("continue"), [](const Json& b, const std::string& bp) {
        if (!b.is_boolean()) fail_at(bp, "expected a boolean");
        return b.get<bool>();
      });
    }
    d.finish();
    m.declared = pd;
  } else {
    o.skip("declared");
  }
  o.finish();
  return m;
}

selection::ScoringMatrix read_scoring(const Json& v, const std::string& path) {
  Obj o(v, path);
  selection::ScoringMatrix m;
  m.id = o.str("id");
  m.criteria = each<selection::WeightedCriterion>(o.array("criteria"), o.sub("criteria"),
                                                  [](const Json& cv, const std::string& cp) {
                                                    Obj c(cv, cp);
                                                    selection::WeightedCriterion wc;
                                                    wc.id = c.str("id");
                                                    wc.weight = as_rational(c.at("weight"), c.sub("weight"));
                                                    c.finish();
                                                    return wc;
                                                  });
  m.concepts = strings(o.at("concepts"), o.sub("concepts"));
  m.reference = o.opt_str("reference");
  m.ratings = int_grid(o.at("ratings"), o.sub("ratings"));
  if (o.has("declared")) {
    Obj d(o.at("declared"), o.sub("declared"));
    selection::ScoringDeclared sd;
    if (const Json* grid = d.opt_array("weighted")) {
      sd.weighted = each<std::vector<std::optional<ExactDecimal>>>(
          *grid, d.sub("weighted"), [](const Json& rv, const std::string& rp) {
            return each<std::optional<ExactDecimal>>(rv, rp, [](const Json& cell, const std::string& cp) {
              return cell.is_null() ? std::optional<ExactDecimal>() : std::optional(as_decimal(cell, cp));
            });
          });
    }
    if (const Json* a = d.opt_array("totals")) sd.totals = each<ExactDecimal>(*a, d.sub("totals"), as_decimal);
    if (const Json* a = d.opt_array("rank")) sd.rank = ints(*a, d.sub("rank"));
    if (const Json* a = d.opt_array("decision")) {
      sd.decision = each<selection::Decision>(*a, d.sub("decision"), [](const Json& x, const std::string& xp) {
        try {
          return selection::parse_decision(as_string(x, xp));
        } catch (const Error& e) {
          fail_at(xp, e.what());
        }
      });
    }
    d.finish();
    m.declared = std::move(sd);
  } else {
    o.skip("declared");
  }
  o.finish();
  return m;
}

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& detail)
    : PersistenceError("parse error at byte " + std::to_string(offset) + ": " + detail), offset_(offset) {}

Json project_to_json(const Project& p) {
  Json j = Json::object();
  j["metadata"] = p.metadata;

  Json sets = Json::array();
  for (const auto& s : p.criterion_sets) {
    Json crit = Json::array();
    for (const auto& c : s.criteria) {
      Json cj = {{"id", c.id}, {"name", c.name}};
      if (c.weight) cj["weight"] = c.weight->to_string();
      if (c.parent) cj["parent"] = *c.parent;
      crit.push_back(cj);
    }
    sets.push_back({{"id", s.id}, {"name", s.name}, {"criteria", crit}});
  }
  j["criterion_sets"] = sets;

  Json opps = Json::array();
  for (const auto& o : p.opportunities) {
    opps.push_back({{"id", o.id}, {"title", o.title}, {"description", o.description}});
  }
  j["opportunities"] = opps;

  Json stages = Json::array();
  for (const auto& s : p.funnel.stages) stages.push_back(write(s));
  j["funnel"] = {{"stages", stages}};

  Json groups = Json::array();
  for (const auto& g : p.need_groups) groups.push_back({{"id", g.id}, {"label", g.label}});
  j["need_groups"] = groups;

  Json needs = Json::array();
  for (const auto& n : p.needs) {
    Json nj = {{"id", n.id}, {"raw_statement", n.raw_statement}, {"interpreted", n.interpreted}};
    if (n.group) nj["group"] = *n.group;
    if (n.importance) nj["importance"] = *n.importance;
    needs.push_back(nj);
  }
  j["needs"] = needs;

  Json metrics = Json::array();
  for (const auto& m : p.metrics) {
    metrics.push_back(
        {{"id", m.id}, {"ordinal", m.ordinal}, {"name", m.name}, {"importance", m.importance}, {"unit", m.unit}});
  }
  j["metrics"] = metrics;

  Json links = Json::array();
  for (const auto& l : p.links) links.push_back({{"need", l.need}, {"metric", l.metric}});
  j["links"] = links;

  Json benches = Json::array();
  for (const auto& b : p.benchmarks) {
    Json values = Json::object();
    for (const auto& [k, v] : b.values) values[k] = write(v);
    benches.push_back({{"id", b.id}, {"name", b.name}, {"values", values}, {"satisfaction", b.satisfaction}});
  }
  j["benchmarks"] = benches;

  Json targets = Json::array();
  for (const auto& t : p.targets) {
    targets.push_back({{"metric", t.metric}, {"marginal", write(t.marginal)}, {"ideal", write(t.ideal)}});
  }
  j["targets"] = targets;

  Json charts = Json::array();
  for (const auto& c : p.charts) {
    Json cols = Json::array();
    for (const auto& col : c.columns) {
      cols.push_back({{"name", col.name}, {"fragments", col.fragments}, {"tree", col.tree}});
    }
    charts.push_back({{"id", c.id}, {"name", c.name}, {"columns", cols}});
  }
  j["charts"] = charts;

  Json concepts = Json::array();
  for (const auto& c : p.concepts) {
    concepts.push_back({{"id", c.id}, {"name", c.name}, {"chart", c.chart}, {"selection", c.selection}});
  }
  j["concepts"] = concepts;

  Json pugh = Json::array();
  for (const auto& m : p.pugh_matrices) pugh.push_back(write(m));
  j["pugh_matrices"] = pugh;

  Json scoring = Json::array();
  for (const auto& m : p.scoring_matrices) scoring.push_back(write(m));
  j["scoring_matrices"] = scoring;
  return j;
}

Project project_from_json(const Json& j) {
  Obj o(j, "project");
  Project p;

  {
    Obj meta(o.at("metadata"), o.sub("metadata"));
    for (auto it = o.at("metadata").begin(); it != o.at("metadata").end(); ++it) {
      p.metadata[it.key()] = meta.str(it.key().c_str());
    }
    meta.finish();
  }

  p.criterion_sets = each<CriterionSet>(o.array("criterion_sets"), o.sub("criterion_sets"),
                                        [](const Json& v, const std::string& path) {
                                          Obj s(v, path);
                                          CriterionSet set;
                                          set.id = s.str("id");
                                          set.name = s.str("name");
                                          set.criteria = each<Criterion>(
                                              s.array("criteria"), s.sub("criteria"),
                                              [](const Json& cv, const std::string& cp) {
                                                Obj c(cv, cp);
                                                Criterion crit;
                                                crit.id = c.str("id");
                                                crit.name = c.str("name");
                                                if (c.has("weight")) crit.weight = as_decimal(c.at("weight"), c.sub("weight"));
                                                else c.skip("weight");
                                                crit.parent = c.opt_str("parent");
                                                c.finish();
                                                return crit;
                                              });
                                          s.finish();
                                          return set;
                                        });

  p.opportunities = each<Opportunity>(o.array("opportunities"), o.sub("opportunities"),
                                      [](const Json& v, const std::string& path) {
                                        Obj x(v, path);
                                        Opportunity opp{x.str("id"), x.str("title"), x.str("description")};
                                        x.finish();
                                        return opp;
                                      });

  {
    Obj f(o.at("funnel"), o.sub("funnel"));
    p.funnel.stages = each<tournament::Stage>(f.array("stages"), f.sub("stages"), read_stage);
    f.finish();
  }

  p.need_groups = each<needspec::NeedGroup>(o.array("need_groups"), o.sub("need_groups"),
                                            [](const Json& v, const std::string& path) {
                                              Obj x(v, path);
                                              needspec::NeedGroup g{x.str("id"), x.str("label")};
                                              x.finish();
                                              return g;
                                            });

  p.needs = each<needspec::NeedStatement>(o.array("needs"), o.sub("needs"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    needspec::NeedStatement n;
    n.id = x.str("id");
    n.raw_statement = x.str("raw_statement");
    n.interpreted = x.str("interpreted");
    n.group = x.opt_str("group");
    if (auto i = x.opt_integer("importance")) n.importance = static_cast<int>(*i);
    x.finish();
    return n;
  });

  p.metrics = each<needspec::Metric>(o.array("metrics"), o.sub("metrics"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    needspec::Metric m;
    m.id = x.str("id");
    m.ordinal = static_cast<int>(x.integer("ordinal"));
    m.name = x.str("name");
    m.importance = static_cast<int>(x.integer("importance"));
    m.unit = x.str("unit");
    x.finish();
    return m;
  });

  p.links = each<needspec::NeedMetricLink>(o.array("links"), o.sub("links"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    needspec::NeedMetricLink l{x.str("need"), x.str("metric")};
    x.finish();
    return l;
  });

  p.benchmarks = each<needspec::BenchmarkProduct>(
      o.array("benchmarks"), o.sub("benchmarks"), [](const Json& v, const std::string& path) {
        Obj x(v, path);
        needspec::BenchmarkProduct b;
        b.id = x.str("id");
        b.name = x.str("name");
        const Json& values = x.at("values");
        if (!values.is_object()) x.fail("values must be an object");
        for (auto it = values.begin(); it != values.end(); ++it) {
          b.values[it.key()] = read_benchmark_value(it.value(), x.sub("values") + "/" + it.key());
        }
        const Json& sat = x.at("satisfaction");
        if (!sat.is_object()) x.fail("satisfaction must be an object");
        for (auto it = sat.begin(); it != sat.end(); ++it) {
          b.satisfaction[it.key()] = as_int(it.value(), x.sub("satisfaction") + "/" + it.key());
        }
        x.finish();
        return b;
      });

  p.targets = each<needspec::TargetSpec>(o.array("targets"), o.sub("targets"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    needspec::TargetSpec t;
    t.metric = x.str("metric");
    t.marginal = read_constraint(x.at("marginal"), x.sub("marginal"));
    t.ideal = read_constraint(x.at("ideal"), x.sub("ideal"));
    x.finish();
    return t;
  });

  p.charts = each<morpho::MorphChart>(o.array("charts"), o.sub("charts"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    morpho::MorphChart c;
    c.id = x.str("id");
    c.name = x.str("name");
    c.columns = each<morpho::MorphColumn>(x.array("columns"), x.sub("columns"), [](const Json& cv, const std::string& cp) {
      Obj col(cv, cp);
      morpho::MorphColumn mc;
      mc.name = col.str("name");
      mc.fragments = strings(col.at("fragments"), col.sub("fragments"));
      mc.tree = col.str("tree");
      col.finish();
      return mc;
    });
    x.finish();
    return c;
  });

  p.concepts = each<morpho::Concept>(o.array("concepts"), o.sub("concepts"), [](const Json& v, const std::string& path) {
    Obj x(v, path);
    morpho::Concept c;
    c.id = x.str("id");
    c.name = x.str("name");
    c.chart = x.str("chart");
    c.selection = strings(x.at("selection"), x.sub("selection"));
    x.finish();
    return c;
  });

  p.pugh_matrices = each<selection::PughMatrix>(o.array("pugh_matrices"), o.sub("pugh_matrices"), read_pugh);
  p.scoring_matrices =
      each<selection::ScoringMatrix>(o.array("scoring_matrices"), o.sub("scoring_matrices"), read_scoring);
  o.finish();
  return p;
}

std::string save_project(const Project& project) {
  Json file = Json::object();
  file["format_version"] = kFormatVersion;
  file["project"] = project_to_json(project);
  return file.dump(2) + "\n";
}

Project load_project(std::string_view text) {
  Json file;
  try {
    file = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  if (!file.is_object()) throw PersistenceError("<root>: expected an object");
  if (!file.contains("format_version")) throw VersionError("missing format_version");
  const Json& version = file.at("format_version");
  if (!version.is_number_integer()) throw VersionError("format_version must be an integer");
  if (version.get<long long>() != kFormatVersion) {
    throw VersionError("unsupported format_version " + version.dump() + " (supported: " +
                       std::to_string(kFormatVersion) + ")");
  }
  Obj root(file, "");
  root.at("format_version");
  Project p = project_from_json(root.at("project"));
  root.finish();
  return p;
}

void save_project_file(const Project& project, const std::filesystem::path& path) {
  const std::string text = save_project(project);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw PersistenceError("cannot write '" + tmp + "'");
    out << text;
    if (!out.flush()) throw PersistenceError("cannot write '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

Project load_project_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_project(ss.str());
}

// ---------------------------------------------------------------------------
// Result encodings

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues) {
    issues.push_back({{"severity", i.severity == Severity::error ? "error" : "warning"},
                      {"location", i.location},
                      {"message", i.message}});
  }
  return {{"errors", report.error_count()}, {"issues", issues}};
}

Json to_json(const tournament::FunnelReport& report) {
  Json stages = Json::array();
  for (const auto& s : report.stages) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
      Json rj = {{"opportunity", r.opportunity},
                 {"computed", std::string(tournament::to_string(r.computed))},
                 {"had_unknown", r.had_unknown}};
      if (r.declared) rj["declared"] = std::string(tournament::to_string(*r.declared));
      rows.push_back(rj);
    }
    Json flags = Json::array();
    for (const auto& f : s.flags) {
      flags.push_back({{"kind", std::string(tournament::to_string(f.kind))},
                       {"opportunity", f.opportunity},
                       {"message", f.message}});
    }
    Json sj = {{"stage", s.stage}, {"input", s.input}, {"rows", rows}, {"survivors", s.survivors}, {"flags", flags}};
    if (s.declared_survivors) sj["declared_survivors"] = *s.declared_survivors;
    stages.push_back(sj);
  }
  return {{"stages", stages}, {"survivors", report.survivors}};
}

Json to_json(const selection::PughResult& result) {
  Json out = Json::array();
  for (const auto& c : result.concepts) {
    out.push_back({{"concept", c.concept_id},
                   {"plus", c.plus},
                   {"zero", c.zero},
                   {"minus", c.minus},
                   {"net", c.net},
                   {"rank", c.rank},
                   {"continue", c.proceed}});
  }
  return {{"concepts", out}};
}

Json to_json(const selection::ScoringResult& result) {
  Json out = Json::array();
  for (const auto& c : result.concepts) {
    Json weighted = Json::array();
    for (const auto& w : c.weighted) weighted.push_back(w.to_display());
    out.push_back({{"concept", c.concept_id},
                   {"weighted", weighted},
                   {"total", c.total.to_display()},
                   {"rank", c.rank},
                   {"decision", std::string(selection::to_string(c.decision))}});
  }
  return {{"concepts", out}};
}

Json to_json(const std::vector<selection::AuditFinding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings) {
    Json fj = {{"matrix", f.matrix},
               {"aggregate", f.aggregate},
               {"concept", f.concept_id},
               {"declared", f.declared},
               {"computed", f.computed}};
    if (!f.criterion.empty()) fj["criterion"] = f.criterion;
    out.push_back(fj);
  }
  return out;
}

Json to_json(const std::vector<sensitivity::CrossingPoint>& crossings) {
  Json out = Json::array();
  for (const auto& c : crossings) {
    out.push_back({{"criterion", c.criterion},
                   {"weight", c.weight.to_fixed(9)},
                   {"exact", c.weight.to_string()},
                   {"pair", {c.first, c.second}},
                   {"order_below", c.order_below},
                   {"order_above", c.order_above}});
  }
  return out;
}

Json to_json(const std::vector<sensitivity::TrajectoryPoint>& trajectory, const std::vector<std::string>& concepts) {
  Json out = Json::array();
  for (const auto& pt : trajectory) {
    Json ranks = Json::object();
    Json totals = Json::object();
    for (std::size_t c = 0; c < concepts.size() && c < pt.ranks.size(); ++c) {
      ranks[concepts[c]] = pt.ranks[c];
      totals[concepts[c]] = pt.totals[c].to_display();
    }
    out.push_back({{"weight", pt.weight.to_display()}, {"ranks", ranks}, {"totals", totals}, {"order", pt.order}});
  }
  return out;
}

}  // namespace dforge::io
