#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mti/client.hpp"

namespace mti {

/// One recorded request/response pair; serialized as a JSONL line
/// {key: {scenario_id, variant_id, turn_index}, request, response_text,
///  model_tag, temperature}.
struct CassetteRecord {
  CompletionKey key;
  nlohmann::json request;
  std::string response_text;
  std::string model_tag;
  double temperature = 0.0;
};

void to_json(nlohmann::json& j, const CassetteRecord& r);
void from_json(const nlohmann::json& j, CassetteRecord& r);

/// In-memory view of a recorded run, keyed by (scenario_id, variant_id,
/// turn_index).
class Cassette {
public:
  static Cassette load(const std::filesystem::path& path);

  const CassetteRecord* find(const CompletionKey& key) const;
  std::size_t size() const { return records_.size(); }
  const std::string& model_tag() const { return model_tag_; }

private:
  std::map<std::string, CassetteRecord> records_;
  std::string model_tag_;
};

/// Appends records as they are produced; the file replays bit-exactly.
class CassetteWriter {
public:
  explicit CassetteWriter(std::filesystem::path path);
  void append(const CassetteRecord& record);

private:
  std::filesystem::path path_;
};

/// Wraps a live client and persists every completed request.
class RecordingClient : public ChatClient {
public:
  RecordingClient(ChatClient& inner, std::filesystem::path cassette_path);

  TurnRecord complete(const CompletionKey& key,
                      const std::vector<TurnRecord>& history) override;
  const ClientConfig& config() const override { return inner_.config(); }

private:
  ChatClient& inner_;
  CassetteWriter writer_;
};

/// Replays a cassette; pure and fully deterministic. A missing key raises
/// ReplayMissError naming the key (fail-fast, before any scoring).
class ReplayClient : public ChatClient {
public:
  ReplayClient(Cassette cassette, ClientConfig config);

  TurnRecord complete(const CompletionKey& key,
                      const std::vector<TurnRecord>& history) override;
  const ClientConfig& config() const override { return config_; }
  const Cassette& cassette() const { return cassette_; }

private:
  Cassette cassette_;
  ClientConfig config_;
};

} // namespace mti
