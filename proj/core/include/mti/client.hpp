#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mti/transcript.hpp"

namespace mti {

enum class PromptStyle { chat, raw_text };
enum class WireProtocol { openai, ollama };

PromptStyle prompt_style_from_name(std::string_view name);
WireProtocol wire_protocol_from_name(std::string_view name);

struct ClientConfig {
  std::string endpoint_url;
  std::string model_tag;
  double temperature = 0.0;
  std::optional<std::string> system_prompt; // absent = model default
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  PromptStyle prompt_style = PromptStyle::chat;
  WireProtocol protocol = WireProtocol::openai;
  bool canonical = true; // canonical measurement Shell
  // Reasoning-model post-filter: text between these delimiters is stripped
  // before scoring. Empty open disables the filter.
  std::string think_open = "<think>";
  std::string think_close = "</think>";
  int backoff_base_ms = 1000;
};

/// Canonical profile runs require temperature 0 and no system-prompt
/// override; rejects misconfigured canonical runs before any request.
void check_canonical_shell(const ClientConfig& config);

/// MTI_ENDPOINT overrides the configured endpoint URL when set.
std::string resolve_endpoint(const ClientConfig& config);

/// Addresses one completion within a battery run; the cassette key.
struct CompletionKey {
  std::string scenario_id;
  std::string variant_id;
  int turn_index = 0;

  bool operator==(const CompletionKey&) const = default;
  std::string to_string() const;
};

/// The runner-facing completion seam. Live HTTP, cassette replay and
/// synthetic agents all implement it, so the protocol code cannot tell
/// them apart.
class ChatClient {
public:
  virtual ~ChatClient() = default;
  /// `history` must end with a user turn; returns the assistant turn.
  virtual TurnRecord complete(const CompletionKey& key,
                              const std::vector<TurnRecord>& history) = 0;
  virtual const ClientConfig& config() const = 0;
};

/// Wire-format helpers (exposed for tests).
nlohmann::json build_request(const ClientConfig& config, const std::vector<TurnRecord>& history);
std::string request_path(const ClientConfig& config);
std::string parse_response_text(const ClientConfig& config, const std::string& body);
std::string strip_reasoning(std::string text, const std::string& open_tag,
                            const std::string& close_tag);
/// Concatenates turns with "User:"/"Assistant:" sentinels for base models.
std::string render_raw_prompt(const std::vector<TurnRecord>& history);

/// Blocking HTTP client. Requests to one endpoint are serialized (at most
/// one in flight); transport failures are retried with exponential backoff.
class HttpChatClient : public ChatClient {
public:
  explicit HttpChatClient(ClientConfig config);
  ~HttpChatClient() override;

  TurnRecord complete(const CompletionKey& key,
                      const std::vector<TurnRecord>& history) override;
  const ClientConfig& config() const override { return config_; }

private:
  ClientConfig config_;
  std::string host_;
  int port_ = 80;
  std::mutex in_flight_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace mti
