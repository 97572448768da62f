#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dforge/core/error.hpp"
#include "dforge/core/project.hpp"
#include "dforge/core/validate.hpp"
#include "dforge/selection/selection.hpp"
#include "dforge/sensitivity/sensitivity.hpp"
#include "dforge/tournament/funnel.hpp"

namespace dforge::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

class PersistenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON text; `offset` is the byte position reported by the parser.
class ParseError : public PersistenceError {
 public:
  ParseError(std::size_t offset, const std::string& detail);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class VersionError : public PersistenceError {
 public:
  explicit VersionError(const std::string& message) : PersistenceError(message) {}
};

Json project_to_json(const Project& project);
/// Strict: unknown or missing fields throw PersistenceError naming the path.
Project project_from_json(const Json& j);

/// Whole project file. Keys are sorted, so equal projects give equal bytes.
std::string save_project(const Project& project);
/// Checks format_version before reading anything else, so a version
/// mismatch never yields a partially loaded project.
Project load_project(std::string_view text);

void save_project_file(const Project& project, const std::filesystem::path& path);
Project load_project_file(const std::filesystem::path& path);

// Result encodings shared by the CLI and the HTTP service.
Json to_json(const ValidationReport& report);
Json to_json(const tournament::FunnelReport& report);
Json to_json(const selection::PughResult& result);
Json to_json(const selection::ScoringResult& result);
Json to_json(const std::vector<selection::AuditFinding>& findings);
Json to_json(const std::vector<sensitivity::CrossingPoint>& crossings);
Json to_json(const std::vector<sensitivity::TrajectoryPoint>& trajectory, const std::vector<std::string>& concepts);

}  // namespace dforge::io
