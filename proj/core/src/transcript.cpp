#include "mti/transcript.hpp"

#include <fstream>

#include "mti/errors.hpp"

namespace mti {

using nlohmann::json;

std::string role_name(Role r) { return r == Role::user ? "user" : "assistant"; }

Role role_from_name(std::string_view name) {
  if (name == "user") return Role::user;
  if (name == "assistant") return Role::assistant;
  throw SchemaError("unknown role: " + std::string(name));
}

const std::string& Transcript::assistant_text(std::size_t i) const {
  std::size_t seen = 0;
  for (const auto& t : turns) {
    if (t.role == Role::assistant) {
      if (seen == i) return t.text;
      ++seen;
    }
  }
  throw ValidationError("transcript " + scenario_id + "/" + variant_id +
                        " has no assistant turn #" + std::to_string(i));
}

std::size_t Transcript::assistant_turn_count() const {
  std::size_t n = 0;
  for (const auto& t : turns)
    if (t.role == Role::assistant) ++n;
  return n;
}

void Transcript::check() const {
  if (turns.empty()) throw ValidationError("transcript has no turns");
  int last_index = -1;
  Role expected = Role::user;
  bool saw_user = false, saw_assistant = false;
  for (const auto& t : turns) {
    if (t.role != expected)
      throw ValidationError("transcript " + scenario_id + ": roles must alternate starting with user");
    if (t.turn_index <= last_index)
      throw ValidationError("transcript " + scenario_id + ": turn_index must be strictly increasing");
    last_index = t.turn_index;
    (t.role == Role::user ? saw_user : saw_assistant) = true;
    expected = expected == Role::user ? Role::assistant : Role::user;
  }
  if (!saw_user || !saw_assistant)
    throw ValidationError("transcript " + scenario_id + ": needs at least one user and one assistant turn");
}

void to_json(json& j, const Transcript& t) {
  json turns = json::array();
  for (const auto& turn : t.turns) {
    turns.push_back(json{{"role", role_name(turn.role)},
                         {"text", turn.text},
                         {"turn_index", turn.turn_index}});
  }
  j = json{{"scenario_id", t.scenario_id},
           {"variant_id", t.variant_id},
           {"model_tag", t.model_tag},
           {"turns", std::move(turns)},
           {"run_metadata",
            json{{"timestamp", t.run_metadata.timestamp},
                 {"endpoint_url", t.run_metadata.endpoint_url},
                 {"temperature", t.run_metadata.temperature},
                 {"battery_version", t.run_metadata.battery_version}}}};
  if (t.stress_level != 0) j["stress_level"] = t.stress_level;
  if (!t.stage.empty()) j["stage"] = t.stage;
}

void from_json(const json& j, Transcript& t) {
  t.scenario_id = j.at("scenario_id").get<std::string>();
  t.variant_id = j.at("variant_id").get<std::string>();
  t.model_tag = j.at("model_tag").get<std::string>();
  t.turns.clear();
  for (const auto& tj : j.at("turns")) {
    TurnRecord r;
    r.role = role_from_name(tj.at("role").get<std::string>());
    r.text = tj.at("text").get<std::string>();
    r.turn_index = tj.at("turn_index").get<int>();
    t.turns.push_back(std::move(r));
  }
  const auto& m = j.at("run_metadata");
  t.run_metadata.timestamp = m.value("timestamp", std::string{});
  t.run_metadata.endpoint_url = m.value("endpoint_url", std::string{});
  t.run_metadata.temperature = m.value("temperature", 0.0);
  t.run_metadata.battery_version = m.value("battery_version", std::string{});
  t.stress_level = j.value("stress_level", 0);
  t.stage = j.value("stage", std::string{});
}

TranscriptStore::TranscriptStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string TranscriptStore::axis_filename(Axis a) {
  switch (a) {
    case Axis::Reactivity: return "reactivity.jsonl";
    case Axis::Compliance: return "compliance.jsonl";
    case Axis::Sociality: return "sociality.jsonl";
    case Axis::Resilience: return "resilience.jsonl";
  }
  return "reactivity.jsonl";
}

void TranscriptStore::append(Axis axis, const Transcript& t) {
  const auto path = dir_ / axis_filename(axis);
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot append to transcript file: " + path.string());
  json j = t;
  out << j.dump() << "\n";
}

bool TranscriptStore::has_axis(Axis axis) const {
  return std::filesystem::exists(dir_ / axis_filename(axis));
}

std::vector<Transcript> TranscriptStore::load(Axis axis) const {
  const auto path = dir_ / axis_filename(axis);
  std::vector<Transcript> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line).get<Transcript>());
    } catch (const json::exception& e) {
      throw ParseError("corrupted transcript record at " + path.string() + ":" +
                       std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void to_json(json& j, const RunManifest& m) {
  j = json{{"model_tag", m.model_tag}, {"battery_id", m.battery_id},
           {"started", m.started},     {"finished", m.finished},
           {"counts", m.counts},       {"skips", m.skips}};
}

void from_json(const json& j, RunManifest& m) {
  m.model_tag = j.at("model_tag").get<std::string>();
  m.battery_id = j.at("battery_id").get<std::string>();
  m.started = j.value("started", std::string{});
  m.finished = j.value("finished", std::string{});
  m.counts = j.value("counts", std::map<std::string, int>{});
  m.skips = j.value("skips", std::vector<std::string>{});
}

void save_manifest(const RunManifest& m, const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  json j = m;
  out << j.dump(2) << "\n";
}

RunManifest load_manifest(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest: " + path.string());
  json j;
  in >> j;
  return j.get<RunManifest>();
}

} // namespace mti
