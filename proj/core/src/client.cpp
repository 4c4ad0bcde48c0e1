#include "mti/client.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "mti/errors.hpp"

namespace mti {

using nlohmann::json;

PromptStyle prompt_style_from_name(std::string_view name) {
  if (name == "chat") return PromptStyle::chat;
  if (name == "raw_text" || name == "raw") return PromptStyle::raw_text;
  throw SchemaError("unknown prompt style: " + std::string(name));
}

WireProtocol wire_protocol_from_name(std::string_view name) {
  if (name == "openai") return WireProtocol::openai;
  if (name == "ollama") return WireProtocol::ollama;
  throw SchemaError("unknown wire protocol: " + std::string(name));
}

void check_canonical_shell(const ClientConfig& config) {
  if (!config.canonical) return;
  if (config.temperature != 0.0)
    throw ValidationError("canonical runs require temperature 0, got " +
                          std::to_string(config.temperature));
  if (config.system_prompt.has_value())
    throw ValidationError("canonical runs must use the model's default system prompt");
}

std::string resolve_endpoint(const ClientConfig& config) {
  if (const char* env = std::getenv("MTI_ENDPOINT"); env != nullptr && *env != '\0')
    return env;
  return config.endpoint_url;
}

std::string CompletionKey::to_string() const {
  return scenario_id + "/" + variant_id + "#" + std::to_string(turn_index);
}

std::string render_raw_prompt(const std::vector<TurnRecord>& history) {
  std::string out;
  for (const auto& t : history) {
    out += t.role == Role::user ? "User: " : "Assistant: ";
    out += t.text;
    out += "\n";
  }
  out += "Assistant:";
  return out;
}

json build_request(const ClientConfig& config, const std::vector<TurnRecord>& history) {
  json req;
  req["model"] = config.model_tag;
  const bool raw = config.prompt_style == PromptStyle::raw_text;
  if (config.protocol == WireProtocol::openai) {
    req["temperature"] = config.temperature;
    if (raw) {
      req["prompt"] = render_raw_prompt(history);
    } else {
      json messages = json::array();
      if (config.system_prompt)
        messages.push_back(json{{"role", "system"}, {"content", *config.system_prompt}});
      for (const auto& t : history)
        messages.push_back(json{{"role", role_name(t.role)}, {"content", t.text}});
      req["messages"] = std::move(messages);
    }
  } else { // ollama
    req["stream"] = false;
    req["options"] = json{{"temperature", config.temperature}};
    if (raw) {
      req["prompt"] = render_raw_prompt(history);
    } else {
      json messages = json::array();
      if (config.system_prompt)
        messages.push_back(json{{"role", "system"}, {"content", *config.system_prompt}});
      for (const auto& t : history)
        messages.push_back(json{{"role", role_name(t.role)}, {"content", t.text}});
      req["messages"] = std::move(messages);
    }
  }
  return req;
}

std::string request_path(const ClientConfig& config) {
  const bool raw = config.prompt_style == PromptStyle::raw_text;
  if (config.protocol == WireProtocol::openai)
    return raw ? "/v1/completions" : "/v1/chat/completions";
  return raw ? "/api/generate" : "/api/chat";
}

std::string parse_response_text(const ClientConfig& config, const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("endpoint returned malformed JSON: ") + e.what());
  }
  try {
    if (config.protocol == WireProtocol::openai) {
      const auto& choice = j.at("choices").at(0);
      if (config.prompt_style == PromptStyle::raw_text) return choice.at("text");
      return choice.at("message").at("content");
    }
    if (config.prompt_style == PromptStyle::raw_text) return j.at("response");
    return j.at("message").at("content");
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("endpoint response missing expected field: ") + e.what());
  }
}

std::string strip_reasoning(std::string txt, const std::string& open_tag,
                            const std::string& close_tag) {
  if (open_tag.empty() || close_tag.empty()) return txt;
  while (true) {
    const auto a = txt.find(open_tag);
    if (a == std::string::npos) return txt;
    const auto b = txt.find(close_tag, a + open_tag.size());
    if (b == std::string::npos) {
      txt.erase(a); // unterminated block: drop the tail
      return txt;
    }
    txt.erase(a, b + close_tag.size() - a);
    // trim leading whitespace left behind at the seam
    while (a < txt.size() && (txt[a] == ' ' || txt[a] == '\n' || txt[a] == '\r'))
      txt.erase(a, 1);
  }
}

// --- HttpChatClient ---------------------------------------------------------

struct HttpChatClient::Impl {
  std::unique_ptr<httplib::Client> http;
};

namespace {

// Splits "http://host:port" (path suffixes are ignored; MTI endpoints are
// server roots).
void split_url(const std::string& url, std::string& host, int& port) {
  std::string rest = url;
  const std::string scheme = "http://";
  if (rest.rfind(scheme, 0) == 0) rest = rest.substr(scheme.size());
  if (auto slash = rest.find('/'); slash != std::string::npos) rest = rest.substr(0, slash);
  port = 80;
  if (auto colon = rest.find(':'); colon != std::string::npos) {
    port = std::atoi(rest.substr(colon + 1).c_str());
    rest = rest.substr(0, colon);
  }
  host = rest;
}

} // namespace

HttpChatClient::HttpChatClient(ClientConfig config) : config_(std::move(config)) {
  config_.endpoint_url = resolve_endpoint(config_);
  check_canonical_shell(config_);
  split_url(config_.endpoint_url, host_, port_);
  impl_ = std::make_unique<Impl>();
  impl_->http = std::make_unique<httplib::Client>(host_, port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  impl_->http->set_read_timeout(secs.count(), 0);
  impl_->http->set_connection_timeout(secs.count(), 0);
}

HttpChatClient::~HttpChatClient() = default;

TurnRecord HttpChatClient::complete(const CompletionKey& key,
                                    const std::vector<TurnRecord>& history) {
  if (history.empty() || history.back().role != Role::user)
    throw ValidationError("complete: history must end with a user turn");
  std::lock_guard<std::mutex> lock(in_flight_); // sequential execution per endpoint

  const json req = build_request(config_, history);
  const std::string path = request_path(config_);
  const std::string body = req.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_base_ms << (attempt - 1)));
    }
    auto res = impl_->http->Post(path.c_str(), body, "application/json");
    if (!res) {
      last_error = "transport failure (" + httplib::to_string(res.error()) + ")";
      continue;
    }
    if (res->status >= 500) {
      last_error = "endpoint returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw ProtocolError("endpoint returned status " + std::to_string(res->status) +
                          " for " + key.to_string());
    std::string txt = parse_response_text(config_, res->body);
    txt = strip_reasoning(std::move(txt), config_.think_open, config_.think_close);
    if (txt.empty())
      throw EmptyResponseError("endpoint returned empty text for " + key.to_string());
    TurnRecord out;
    out.role = Role::assistant;
    out.text = std::move(txt);
    out.turn_index = history.back().turn_index + 1;
    return out;
  }
  throw TransportError("endpoint unreachable after " + std::to_string(config_.max_retries + 1) +
                       " attempts (" + last_error + ") for " + key.to_string());
}

} // namespace mti
