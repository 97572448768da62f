#include "dforge/io/service.hpp"

#include <charconv>
#include <iostream>
#include <mutex>

#include <httplib.h>

#include "dforge/core/validate.hpp"
#include "dforge/selection/selection.hpp"
#include "dforge/sensitivity/sensitivity.hpp"
#include "dforge/tournament/funnel.hpp"

namespace dforge::io {

namespace {

ServiceResponse error_response(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

ServiceResponse not_found(const std::string& what, const std::string& id) {
  return error_response(404, "no " + what + " '" + id + "'");
}

Json scoring_payload(const selection::ScoringMatrix& m) {
  Json weights = Json::object();
  for (const auto& c : m.criteria) weights[c.id] = c.weight.to_display();
  Json ratings = Json::object();
  for (std::size_t k = 0; k < m.criteria.size(); ++k) {
    Json row = Json::object();
    for (std::size_t c = 0; c < m.concepts.size(); ++c) row[m.concepts[c]] = m.ratings[k][c];
    ratings[m.criteria[k].id] = row;
  }
  Json out = to_json(selection::score(m));
  out["matrix"] = m.id;
  out["weights"] = weights;
  out["ratings"] = ratings;
  return out;
}

std::optional<std::size_t> index_of(const std::vector<std::string>& v, const std::string& x) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == x) return i;
  }
  return std::nullopt;
}

const std::string* string_field(const Json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body.at(key).is_string()) return nullptr;
  return body.at(key).get_ptr<const std::string*>();
}

}  // namespace

ProjectService::ProjectService(Project project, std::optional<std::filesystem::path> persist_to)
    : project_(std::make_shared<const Project>(std::move(project))), persist_to_(std::move(persist_to)) {}

ProjectService::State ProjectService::state() const {
  std::shared_lock lock(mutex_);
  return {project_, revision_};
}

std::uint64_t ProjectService::revision() const { return state().revision; }

std::shared_ptr<const Project> ProjectService::snapshot() const { return state().project; }

ServiceResponse ProjectService::get_project() const {
  const auto s = state();
  return {200, Json{{"revision", s.revision}, {"project", project_to_json(*s.project)}}};
}

ServiceResponse ProjectService::screening(const std::string& id) const {
  const auto s = state();
  const auto* m = s.project->find_pugh(id);
  if (!m) return not_found("screening matrix", id);
  try {
    Json out = to_json(selection::screen(*m));
    out["matrix"] = id;
    out["reference"] = m->reference;
    out["revision"] = s.revision;
    return {200, out};
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

ServiceResponse ProjectService::scoring(const std::string& id) const {
  const auto s = state();
  const auto* m = s.project->find_scoring(id);
  if (!m) return not_found("scoring matrix", id);
  try {
    Json out = scoring_payload(*m);
    out["revision"] = s.revision;
    return {200, out};
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

ServiceResponse ProjectService::audit(const std::string& id) const {
  const auto s = state();
  Json out{{"matrix", id}, {"revision", s.revision}};
  try {
    if (const auto* m = s.project->find_pugh(id)) {
      out["findings"] = to_json(selection::audit(*m));
    } else if (const auto* m = s.project->find_scoring(id)) {
      out["findings"] = to_json(selection::audit(*m));
    } else if (id == "funnel") {
      out["funnel"] = to_json(tournament::run_funnel(*s.project));
    } else {
      return not_found("matrix", id);
    }
  } catch (const selection::NothingToAuditError& e) {
    return error_response(422, e.what());
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
  return {200, out};
}

ServiceResponse ProjectService::sensitivity(const std::string& id, const std::string& criterion,
                                            const std::string& samples) const {
  const auto s = state();
  const auto* m = s.project->find_scoring(id);
  if (!m) return not_found("scoring matrix", id);
  if (criterion.empty()) return error_response(400, "query parameter 'criterion' is required");
  std::size_t n = 21;
  if (!samples.empty()) {
    auto [ptr, ec] = std::from_chars(samples.data(), samples.data() + samples.size(), n);
    if (ec != std::errc() || ptr != samples.data() + samples.size() || n < 2 || n > 10001) {
      return error_response(400, "samples must be an integer in [2, 10001]");
    }
  }
  try {
    Json out{{"matrix", id}, {"criterion", criterion}, {"revision", s.revision}};
    out["crossings"] = to_json(sensitivity::all_crossing_points(*m, criterion));
    out["trajectory"] = to_json(sensitivity::rank_trajectory(*m, criterion, n), m->concepts);
    for (const auto& c : m->criteria) {
      if (c.id == criterion) out["weight"] = c.weight.to_display();
    }
    return {200, out};
  } catch (const sensitivity::PerturbationError& e) {
    return error_response(400, e.what());
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
}

ServiceResponse ProjectService::mutate(const Json& body, const std::function<ServiceResponse(Project&)>& change) {
  if (!body.is_object()) return error_response(400, "request body must be a JSON object");
  if (!body.contains("revision") || !body.at("revision").is_number_integer() || body.at("revision").get<long long>() < 0) {
    return error_response(400, "field 'revision' is required");
  }
  const auto expected = body.at("revision").get<std::uint64_t>();

  std::unique_lock lock(mutex_);
  if (expected != revision_) {
    return {409, Json{{"error", "stale revision"}, {"revision", revision_}}};
  }
  Project draft = *project_;
  ServiceResponse response;
  try {
    response = change(draft);
  } catch (const Error& e) {
    return error_response(422, e.what());
  }
  if (response.status != 200) return response;

  const auto report = validate_project(draft);
  if (report.has_errors()) {
    Json out = to_json(report);
    out["error"] = "change rejected by validation";
    return {422, out};
  }
  if (persist_to_) {
    try {
      save_project_file(draft, *persist_to_);
    } catch (const std::exception& e) {
      return error_response(500, e.what());
    }
  }
  project_ = std::make_shared<const Project>(std::move(draft));
  ++revision_;
  response.body["revision"] = revision_;
  response.body["validation"] = to_json(report);
  return response;
}

ServiceResponse ProjectService::patch_ratings(const std::string& id, const Json& body) {
  if (!snapshot()->find_scoring(id)) return not_found("scoring matrix", id);
  const auto* concept_id = string_field(body, "concept");
  const auto* criterion = string_field(body, "criterion");
  if (!concept_id || !criterion) return error_response(400, "fields 'concept' and 'criterion' are required");
  if (!body.contains("rating") || !body.at("rating").is_number_integer()) {
    return error_response(400, "field 'rating' must be an integer");
  }
  const int rating = body.at("rating").get<int>();
  return mutate(body, [&](Project& p) -> ServiceResponse {
    auto* m = p.find_scoring(id);
    if (!m) return not_found("scoring matrix", id);
    const auto c = index_of(m->concepts, *concept_id);
    if (!c) return not_found("concept", *concept_id);
    std::optional<std::size_t> k;
    for (std::size_t i = 0; i < m->criteria.size(); ++i) {
      if (m->criteria[i].id == *criterion) k = i;
    }
    if (!k) return not_found("criterion", *criterion);
    m->ratings[*k][*c] = rating;
    return {200, scoring_payload(*m)};
  });
}

ServiceResponse ProjectService::patch_weights(const std::string& id, const Json& body) {
  if (!snapshot()->find_scoring(id)) return not_found("scoring matrix", id);
  if (body.is_object() && body.contains("weights")) {
    const Json& weights = body.at("weights");
    if (!weights.is_object()) return error_response(400, "field 'weights' must be an object");
    return mutate(body, [&](Project& p) -> ServiceResponse {
      auto* m = p.find_scoring(id);
      for (auto it = weights.begin(); it != weights.end(); ++it) {
        if (!it.value().is_string()) return error_response(400, "weights must be decimal strings");
        bool found = false;
        for (auto& c : m->criteria) {
          if (c.id != it.key()) continue;
          try {
            c.weight = Rational::parse(it.value().get<std::string>());
          } catch (const std::exception& e) {
            return error_response(400, e.what());
          }
          found = true;
        }
        if (!found) return not_found("criterion", it.key());
      }
      return {200, scoring_payload(*m)};
    });
  }
  const auto* criterion = string_field(body, "criterion");
  const auto* weight = string_field(body, "weight");
  if (!criterion || !weight) {
    return error_response(400, "expected {criterion, weight} or {weights} with decimal string weights");
  }
  Rational w;
  try {
    w = Rational::parse(*weight);
  } catch (const std::exception& e) {
    return error_response(400, e.what());
  }
  return mutate(body, [&](Project& p) -> ServiceResponse {
    auto* m = p.find_scoring(id);
    try {
      *m = sensitivity::apply_perturbation(*m, {*criterion, w});
    } catch (const sensitivity::PerturbationError& e) {
      return error_response(400, e.what());
    }
    return {200, scoring_payload(*m)};
  });
}

ServiceResponse ProjectService::combine(const Json& body) {
  const auto* a = string_field(body, "a");
  const auto* b = string_field(body, "b");
  const auto* new_id = string_field(body, "id");
  if (!a || !b || !new_id) return error_response(400, "fields 'a', 'b' and 'id' are required");
  const auto* name = string_field(body, "name");
  std::map<std::string, selection::ColumnResolution> resolution;
  if (body.contains("resolution")) {
    const Json& r = body.at("resolution");
    if (!r.is_object()) return error_response(400, "field 'resolution' must be an object");
    for (auto it = r.begin(); it != r.end(); ++it) {
      const Json& v = it.value();
      if (v == "a") resolution[it.key()] = selection::FromA{};
      else if (v == "b") resolution[it.key()] = selection::FromB{};
      else if (v.is_object() && v.contains("fragment") && v.at("fragment").is_string())
        resolution[it.key()] = selection::Explicit{v.at("fragment").get<std::string>()};
      else return error_response(400, "resolution for '" + it.key() + "' must be \"a\", \"b\" or {fragment}");
    }
  }
  return mutate(body, [&](Project& p) -> ServiceResponse {
    const auto* ca = p.find_concept(*a);
    const auto* cb = p.find_concept(*b);
    if (!ca) return not_found("concept", *a);
    if (!cb) return not_found("concept", *b);
    if (ca->chart != cb->chart) return error_response(422, "concepts belong to different charts");
    const auto* chart = p.find_chart(ca->chart);
    if (!chart) return not_found("chart", ca->chart);
    if (p.find_concept(*new_id)) return error_response(409, "concept '" + *new_id + "' already exists");
    auto combined = selection::combine_concepts(*chart, *ca, *cb, *new_id, name ? *name : *new_id, resolution);
    Json selection = Json::object();
    for (std::size_t i = 0; i < chart->columns.size(); ++i) selection[chart->columns[i].name] = combined.selection[i];
    Json out{{"concept", {{"id", combined.id}, {"name", combined.name}, {"chart", combined.chart},
                          {"selection", selection}}}};
    p.concepts.push_back(std::move(combined));
    return {200, out};
  });
}

void ProjectService::mount(httplib::Server& server) {
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto with_body = [reply](const httplib::Request& req, httplib::Response& res,
                           const std::function<ServiceResponse(const Json&)>& handle) {
    Json body;
    try {
      body = Json::parse(req.body);
    } catch (const Json::parse_error& e) {
      return reply(res, error_response(400, std::string("malformed JSON body: ") + e.what()));
    }
    reply(res, handle(body));
  };

  server.Get("/api/project", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, get_project());
  });
  server.Get(R"(/api/results/screening/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, screening(req.matches[1]));
  });
  server.Get(R"(/api/results/scoring/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, scoring(req.matches[1]));
  });
  server.Get(R"(/api/audit/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, audit(req.matches[1]));
  });
  server.Get(R"(/api/sensitivity/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, sensitivity(req.matches[1], req.get_param_value("criterion"), req.get_param_value("samples")));
  });
  server.Patch(R"(/api/scoring/([^/]+)/ratings)", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    with_body(req, res, [&](const Json& body) { return patch_ratings(id, body); });
  });
  server.Patch(R"(/api/scoring/([^/]+)/weights)", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    with_body(req, res, [&](const Json& body) { return patch_weights(id, body); });
  });
  server.Post("/api/concepts/combine", [this, with_body](const httplib::Request& req, httplib::Response& res) {
    with_body(req, res, [&](const Json& body) { return combine(body); });
  });
}

BindAddress parse_bind(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error("bind address '" + text + "' must be host:port");
  BindAddress out;
  out.host = colon == 0 ? "127.0.0.1" : text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || out.port < 0 || out.port > 65535) {
    throw Error("bind address '" + text + "' has an invalid port");
  }
  return out;
}

BindAddress resolve_bind(const std::optional<std::string>& flag, const char* env_value) {
  if (flag && !flag->empty()) return parse_bind(*flag);
  if (env_value && *env_value) return parse_bind(env_value);
  return parse_bind(kDefaultBind);
}

void serve(const std::filesystem::path& project_path, const BindAddress& bind) {
  Project project = load_project_file(project_path);
  const auto report = validate_project(project);
  if (report.has_errors()) {
    throw Error("project has " + std::to_string(report.error_count()) + " validation error(s); run 'validate'");
  }
  ProjectService service(std::move(project), project_path);
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(bind.host, bind.port)) {
    throw Error("cannot bind " + bind.host + ":" + std::to_string(bind.port));
  }
  std::cerr << "serving " << project_path.string() << " on " << bind.host << ":" << bind.port << "\n";
  if (!server.listen_after_bind()) throw Error("server stopped unexpectedly");
}

}  // namespace dforge::io
