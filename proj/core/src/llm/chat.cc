#include "llmstate/llm/chat.h"

#include <algorithm>

namespace llmstate::llm {

std::string_view to_string(MessageRole role) {
  switch (role) {
    case MessageRole::kSystem: return "system";
    case MessageRole::kUser: return "user";
    case MessageRole::kAssistant: return "assistant";
  }
  return "?";
}

void ChatRequest::validate() const {
  const bool has_user = std::any_of(messages.begin(), messages.end(),
                                    [](const Message& m) { return m.role == MessageRole::kUser; });
  if (!has_user) throw std::invalid_argument("chat request has no user message");
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  if (max_output <= 0) throw std::invalid_argument("max_output must be positive");
}

ChatRequest make_request(std::string_view system_prompt, std::string user_text,
                         std::string model, double temperature, int max_output) {
  ChatRequest request;
  if (!system_prompt.empty()) {
    request.messages.push_back({MessageRole::kSystem, std::string(system_prompt)});
  }
  request.messages.push_back({MessageRole::kUser, std::move(user_text)});
  request.model = std::move(model);
  request.temperature = temperature;
  request.max_output = max_output;
  return request;
}

std::string BudgetedBackend::complete(const ChatRequest& request, const CallContext& context) {
  {
    std::lock_guard lock(mu_);
    if (calls_ >= max_calls_) {
      throw BudgetExceeded("LLM call budget of " + std::to_string(max_calls_) + " exhausted at " +
                           context.role + " call " + std::to_string(context.index));
    }
    ++calls_;
  }
  return inner_.complete(request, context);
}

std::size_t BudgetedBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

}  // namespace llmstate::llm
