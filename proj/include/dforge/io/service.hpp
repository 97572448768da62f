#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "dforge/core/error.hpp"
#include "dforge/core/project.hpp"
#include "dforge/io/json.hpp"

namespace httplib {
class Server;
}

namespace dforge::io {

struct ServiceResponse {
  int status = 200;
  Json body;
};

/// One authoritative in-memory project behind the HTTP endpoints.
///
/// Readers grab an immutable snapshot and compute without holding the lock.
/// Writers are serialized: each mutation checks the caller's revision,
/// applies the change to a copy, re-validates, and publishes the copy with
/// the next revision. A stale revision gets 409 and leaves the project as is.
class ProjectService {
 public:
  explicit ProjectService(Project project, std::optional<std::filesystem::path> persist_to = std::nullopt);

  std::uint64_t revision() const;
  std::shared_ptr<const Project> snapshot() const;

  ServiceResponse get_project() const;
  ServiceResponse screening(const std::string& id) const;
  ServiceResponse scoring(const std::string& id) const;
  ServiceResponse audit(const std::string& id) const;
  ServiceResponse sensitivity(const std::string& id, const std::string& criterion, const std::string& samples) const;

  /// {concept, criterion, rating, revision}
  ServiceResponse patch_ratings(const std::string& id, const Json& body);
  /// {criterion, weight, revision} renormalizes the other weights;
  /// {weights: {criterion: weight, ...}, revision} replaces them outright.
  ServiceResponse patch_weights(const std::string& id, const Json& body);
  /// {a, b, id, name, resolution: {column: "a" | "b" | {fragment}}, revision}
  ServiceResponse combine(const Json& body);

  /// Registers every endpoint on `server`.
  void mount(httplib::Server& server);

 private:
  struct State {
    std::shared_ptr<const Project> project;
    std::uint64_t revision = 0;
  };

  State state() const;
  ServiceResponse mutate(const Json& body, const std::function<ServiceResponse(Project&)>& change);

  mutable std::shared_mutex mutex_;
  std::shared_ptr<const Project> project_;
  std::uint64_t revision_ = 1;
  std::optional<std::filesystem::path> persist_to_;
};

struct BindAddress {
  std::string host;
  int port = 0;
};

inline constexpr const char* kDefaultBind = "127.0.0.1:8080";

/// "host:port" or ":port". Throws Error on malformed text.
BindAddress parse_bind(const std::string& text);
/// Command-line flag, then DECISIONFORGE_BIND, then the default.
BindAddress resolve_bind(const std::optional<std::string>& flag, const char* env_value);

/// Loads the project file, validates it, and serves until the process ends.
/// Throws Error on an invalid project or a bind failure.
void serve(const std::filesystem::path& project_path, const BindAddress& bind);

}  // namespace dforge::io
