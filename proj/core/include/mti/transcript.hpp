#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mti/battery.hpp"

namespace mti {

enum class Role { user, assistant };

std::string role_name(Role r);
Role role_from_name(std::string_view name);

struct TurnRecord {
  Role role = Role::user;
  std::string text;
  int turn_index = 0;
};

struct RunMetadata {
  std::string timestamp;
  std::string endpoint_url;
  double temperature = 0.0;
  std::string battery_version;
};

/// Transcript stages beyond the plain scenario prompt.
namespace stage {
inline constexpr const char* main = "";
inline constexpr const char* capability = "capability";
inline constexpr const char* likert = "likert";
} // namespace stage

struct Transcript {
  std::string scenario_id;
  std::string variant_id;
  std::string model_tag;
  std::vector<TurnRecord> turns;
  RunMetadata run_metadata;
  int stress_level = 0;   // Resilience tag
  std::string stage;      // "", "capability" or "likert"

  /// Text of the assistant turn at position `i` among assistant turns.
  const std::string& assistant_text(std::size_t i = 0) const;
  std::size_t assistant_turn_count() const;
  /// Throws ValidationError when turn invariants are broken (roles must
  /// alternate starting with user, indices strictly increasing).
  void check() const;
};

void to_json(nlohmann::json& j, const Transcript& t);
void from_json(const nlohmann::json& j, Transcript& t);

/// Directory of JSONL transcript files, one per axis.
class TranscriptStore {
public:
  explicit TranscriptStore(std::filesystem::path dir);

  static std::string axis_filename(Axis a);

  void append(Axis axis, const Transcript& t);
  std::vector<Transcript> load(Axis axis) const;
  bool has_axis(Axis axis) const;
  const std::filesystem::path& dir() const { return dir_; }

private:
  std::filesystem::path dir_;
};

struct RunManifest {
  std::string model_tag;
  std::string battery_id;
  std::string started;
  std::string finished;
  std::map<std::string, int> counts; // per axis-file transcript counts
  std::vector<std::string> skips;    // "scenario_id: reason"
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

void save_manifest(const RunManifest& m, const std::filesystem::path& dir);
RunManifest load_manifest(const std::filesystem::path& dir);

} // namespace mti
