#pragma once

#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llmstate::llm {

class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Network failure or non-retryable HTTP status, after retries.
class TransportError : public LlmError {
 public:
  using LlmError::LlmError;
};

class AuthError : public LlmError {
 public:
  using LlmError::LlmError;
};

// Replay lookup found no entry for the request.
class CassetteMiss : public LlmError {
 public:
  using LlmError::LlmError;
};

class BudgetExceeded : public LlmError {
 public:
  using LlmError::LlmError;
};

// Missing endpoint, key, or cassette file.
class ConfigError : public LlmError {
 public:
  using LlmError::LlmError;
};

enum class MessageRole { kSystem, kUser, kAssistant };

std::string_view to_string(MessageRole role);

struct Message {
  MessageRole role = MessageRole::kUser;
  std::string text;

  friend bool operator==(const Message&, const Message&) = default;
};

struct ChatRequest {
  std::vector<Message> messages;
  std::string model = "gpt-4-0613";
  double temperature = 0.0;
  int max_output = 1024;

  // Throws std::invalid_argument unless there is a user message, the
  // temperature is non-negative and max_output is positive.
  void validate() const;
};

// Builds the single-turn request the planner sends. An empty system prompt
// is left out of the message list.
ChatRequest make_request(std::string_view system_prompt, std::string user_text,
                         std::string model, double temperature, int max_output);

// Which planner role issued a call and how many calls that role made before
// it in the same episode.
struct CallContext {
  std::string role;
  std::size_t index = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const ChatRequest& request, const CallContext& context) = 0;
};

// Forwards to another backend and throws BudgetExceeded once more than
// max_calls completions are requested.
class BudgetedBackend : public Backend {
 public:
  BudgetedBackend(Backend& inner, std::size_t max_calls) : inner_(inner), max_calls_(max_calls) {}

  std::string complete(const ChatRequest& request, const CallContext& context) override;
  std::size_t calls() const;

 private:
  Backend& inner_;
  std::size_t max_calls_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
};

}  // namespace llmstate::llm
