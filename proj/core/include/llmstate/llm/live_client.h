#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "llmstate/llm/chat.h"

namespace llmstate::llm {

struct LiveConfig {
  std::string api_base;  // e.g. "https://api.openai.com/v1"
  std::string api_key;
  std::string model = "gpt-4-0613";
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
  int max_in_flight = 4;

  // Reads LLMSTATE_API_BASE, LLMSTATE_API_KEY and LLMSTATE_MODEL (optional).
  // Throws ConfigError naming every missing variable.
  static LiveConfig from_env();
};

// OpenAI-compatible chat-completions client. POSTs to {api_base}/chat/completions.
// Connection failures, 429 and 5xx are retried with exponential backoff;
// 401/403 raise AuthError immediately. Safe to share between threads.
class LiveBackend : public Backend {
 public:
  explicit LiveBackend(LiveConfig config);
  ~LiveBackend() override;

  std::string complete(const ChatRequest& request, const CallContext& context) override;

  const LiveConfig& config() const { return config_; }

 private:
  struct Impl;
  LiveConfig config_;
  std::unique_ptr<Impl> impl_;
};

// Request body in the chat-completions wire format.
std::string chat_completions_body(const ChatRequest& request);
// Extracts choices[0].message.content; throws TransportError when absent.
std::string parse_chat_completions_response(const std::string& body);

}  // namespace llmstate::llm
