#include "mti/cassette.hpp"

#include <fstream>

#include "mti/errors.hpp"

namespace mti {

using nlohmann::json;

void to_json(json& j, const CassetteRecord& r) {
  j = json{{"key",
            json{{"scenario_id", r.key.scenario_id},
                 {"variant_id", r.key.variant_id},
                 {"turn_index", r.key.turn_index}}},
           {"request", r.request},
           {"response_text", r.response_text},
           {"model_tag", r.model_tag},
           {"temperature", r.temperature}};
}

void from_json(const json& j, CassetteRecord& r) {
  const auto& k = j.at("key");
  r.key.scenario_id = k.at("scenario_id").get<std::string>();
  r.key.variant_id = k.at("variant_id").get<std::string>();
  r.key.turn_index = k.at("turn_index").get<int>();
  r.request = j.value("request", json::object());
  r.response_text = j.at("response_text").get<std::string>();
  r.model_tag = j.value("model_tag", std::string{});
  r.temperature = j.value("temperature", 0.0);
}

Cassette Cassette::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TransportError("cassette not readable: " + path.string());
  Cassette c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    CassetteRecord rec;
    try {
      rec = json::parse(line).get<CassetteRecord>();
    } catch (const json::exception& e) {
      throw ParseError("corrupted cassette record at " + path.string() + ":" +
                       std::to_string(line_no) + ": " + e.what());
    }
    c.model_tag_ = rec.model_tag;
    c.records_[rec.key.to_string()] = std::move(rec);
  }
  return c;
}

const CassetteRecord* Cassette::find(const CompletionKey& key) const {
  auto it = records_.find(key.to_string());
  return it == records_.end() ? nullptr : &it->second;
}

CassetteWriter::CassetteWriter(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw IoError("cannot create cassette file: " + path_.string());
}

void CassetteWriter::append(const CassetteRecord& record) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw IoError("cannot append to cassette file: " + path_.string());
  json j = record;
  out << j.dump() << "\n";
}

RecordingClient::RecordingClient(ChatClient& inner, std::filesystem::path cassette_path)
    : inner_(inner), writer_(std::move(cassette_path)) {}

TurnRecord RecordingClient::complete(const CompletionKey& key,
                                     const std::vector<TurnRecord>& history) {
  TurnRecord turn = inner_.complete(key, history);
  CassetteRecord rec;
  rec.key = key;
  rec.request = build_request(inner_.config(), history);
  rec.response_text = turn.text;
  rec.model_tag = inner_.config().model_tag;
  rec.temperature = inner_.config().temperature;
  writer_.append(rec);
  return turn;
}

ReplayClient::ReplayClient(Cassette cassette, ClientConfig config)
    : cassette_(std::move(cassette)), config_(std::move(config)) {
  check_canonical_shell(config_);
}

TurnRecord ReplayClient::complete(const CompletionKey& key,
                                  const std::vector<TurnRecord>& history) {
  if (history.empty() || history.back().role != Role::user)
    throw ValidationError("complete: history must end with a user turn");
  const CassetteRecord* rec = cassette_.find(key);
  if (rec == nullptr)
    throw ReplayMissError("cassette has no record for key " + key.to_string());
  TurnRecord out;
  out.role = Role::assistant;
  out.text = rec->response_text;
  out.turn_index = history.back().turn_index + 1;
  return out;
}

} // namespace mti
