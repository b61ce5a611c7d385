#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace llmstate::prompts {

using SlotList = std::vector<std::pair<std::string, std::string>>;

// Replaces every "{{name}}" with the matching slot value. Throws
// std::invalid_argument for a placeholder without a slot, an unterminated
// placeholder, or a slot that the template never uses.
std::string render_template(std::string_view text, const SlotList& slots);

// Built-in templates, compiled from core/prompts/<name>.txt.
std::string_view attention_template();
std::string_view estimator_template();
std::string_view policy_template();

}  // namespace llmstate::prompts
