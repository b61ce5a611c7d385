#include "llmstate/llm/live_client.h"

#include <cstdlib>
#include <semaphore>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace llmstate::llm {
namespace {

using nlohmann::json;

std::string env_or_empty(const char* name) {
  const char* value = std::getenv(name);
  return value == nullptr ? std::string{} : std::string(value);
}

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint split_base(const std::string& base) {
  const auto scheme_end = base.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("API base must include a scheme: " + base);
  const auto slash = base.find('/', scheme_end + 3);
  Endpoint endpoint;
  endpoint.scheme_host_port = base.substr(0, slash);
  endpoint.path = slash == std::string::npos ? std::string{} : base.substr(slash);
  while (!endpoint.path.empty() && endpoint.path.back() == '/') endpoint.path.pop_back();
  endpoint.path += "/chat/completions";
  return endpoint;
}

}  // namespace

LiveConfig LiveConfig::from_env() {
  LiveConfig config;
  config.api_base = env_or_empty("LLMSTATE_API_BASE");
  config.api_key = env_or_empty("LLMSTATE_API_KEY");
  if (auto model = env_or_empty("LLMSTATE_MODEL"); !model.empty()) config.model = model;
  std::string missing;
  if (config.api_base.empty()) missing += " LLMSTATE_API_BASE";
  if (config.api_key.empty()) missing += " LLMSTATE_API_KEY";
  if (!missing.empty()) {
    throw ConfigError("live backend needs environment variable(s):" + missing);
  }
  return config;
}

std::string chat_completions_body(const ChatRequest& request) {
  json body;
  body["model"] = request.model;
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_output;
  body["messages"] = json::array();
  for (const auto& message : request.messages) {
    body["messages"].push_back({{"role", to_string(message.role)}, {"content", message.text}});
  }
  return body.dump();
}

std::string parse_chat_completions_response(const std::string& body) {
  try {
    const auto doc = json::parse(body);
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw TransportError("response content is not a string");
    return content.get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("unexpected chat-completions response: ") + e.what());
  }
}

struct LiveBackend::Impl {
  explicit Impl(int max_in_flight) : slots(max_in_flight) {}
  std::counting_semaphore<1024> slots;
  Endpoint endpoint;
};

LiveBackend::LiveBackend(LiveConfig config) : config_(std::move(config)) {
  if (config_.max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
  if (config_.max_in_flight < 1 || config_.max_in_flight > 1024) {
    throw ConfigError("max_in_flight must be in [1, 1024]");
  }
  impl_ = std::make_unique<Impl>(config_.max_in_flight);
  impl_->endpoint = split_base(config_.api_base);
}

LiveBackend::~LiveBackend() = default;

std::string LiveBackend::complete(const ChatRequest& request, const CallContext& context) {
  request.validate();
  const auto body = chat_completions_body(request);
  impl_->slots.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{impl_->slots};

  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    httplib::Client client(impl_->endpoint.scheme_host_port);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    httplib::Headers headers = {{"Authorization", "Bearer " + config_.api_key}};
    auto result = client.Post(impl_->endpoint.path, headers, body, "application/json");
    if (result) {
      const int status = result->status;
      if (status == 200) return parse_chat_completions_response(result->body);
      if (status == 401 || status == 403) {
        throw AuthError("endpoint rejected credentials (HTTP " + std::to_string(status) + ")");
      }
      last_error = "HTTP " + std::to_string(status);
      if (status != 429 && status < 500) break;
    } else {
      last_error = httplib::to_string(result.error());
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw TransportError(context.role + " call " + std::to_string(context.index) + " failed: " +
                       last_error);
}

}  // namespace llmstate::llm
