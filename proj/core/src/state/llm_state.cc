#include "llmstate/state/llm_state.h"

#include <type_traits>

namespace llmstate::state {
namespace {

constexpr std::string_view kReasoningPrefix = "Reasoning: ";

std::string object_lines(const LlmState& state) {
  std::string out;
  for (const auto& name : state.key_objects()) {
    out += name;
    out += ": ";
    const auto* attributes = state.attributes(name);
    if (attributes == nullptr || attributes->empty()) {
      out += "[]";
    } else {
      for (std::size_t i = 0; i < attributes->size(); ++i) {
        if (i > 0) out += " | ";
        out += (*attributes)[i];
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string_view to_string(StateMode mode) {
  switch (mode) {
    case StateMode::kFull: return "full";
    case StateMode::kNoSummary: return "no_summary";
    case StateMode::kNoObjects: return "no_objects";
    case StateMode::kNoStates: return "no_states";
  }
  return "?";
}

std::optional<StateMode> state_mode_from_string(std::string_view text) {
  for (const auto mode :
       {StateMode::kFull, StateMode::kNoSummary, StateMode::kNoObjects, StateMode::kNoStates}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

void LlmState::register_key_object(const std::string& name) {
  if (attributes_.contains(name)) return;
  key_objects_.push_back(name);
  attributes_.emplace(name, std::vector<std::string>{});
}

void LlmState::register_key_objects(std::span<const std::string> names) {
  for (const auto& name : names) register_key_object(name);
}

void LlmState::apply_estimation(std::span<const dsl::Directive> directives) {
  for (const auto& directive : directives) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, dsl::AddRelatedObjects>) {
            register_key_object(d.name);
          } else if constexpr (std::is_same_v<T, dsl::UpdateState>) {
            register_key_object(d.name);
            attributes_[d.name] = d.attributes;
          } else {
            summary_ = d.text;
          }
        },
        directive);
  }
}

const std::vector<std::string>* LlmState::attributes(std::string_view name) const {
  const auto it = attributes_.find(std::string(name));
  return it == attributes_.end() ? nullptr : &it->second;
}

std::string render_state(const LlmState& state, StateMode mode) {
  switch (mode) {
    case StateMode::kNoStates:
      return {};
    case StateMode::kNoSummary:
      return object_lines(state);
    case StateMode::kNoObjects:
      return state.summary().empty() ? std::string{} : std::string(kReasoningPrefix) + state.summary();
    case StateMode::kFull: {
      auto out = object_lines(state);
      if (!state.summary().empty()) {
        if (!out.empty()) out += "\n\n";
        out += kReasoningPrefix;
        out += state.summary();
      }
      return out;
    }
  }
  return {};
}

LlmState parse_state_text(std::string_view text) {
  LlmState state;
  std::string_view objects = text;
  std::string_view summary;
  if (text.starts_with(kReasoningPrefix)) {
    objects = {};
    summary = text.substr(kReasoningPrefix.size());
  } else if (const auto pos = text.find(std::string("\n\n\n") + std::string(kReasoningPrefix));
             pos != std::string_view::npos) {
    objects = text.substr(0, pos + 1);
    summary = text.substr(pos + 3 + kReasoningPrefix.size());
  }

  std::vector<dsl::Directive> directives;
  std::size_t start = 0;
  while (start < objects.size()) {
    auto end = objects.find('\n', start);
    if (end == std::string_view::npos) end = objects.size();
    const auto line = objects.substr(start, end - start);
    start = end + 1;
    const auto colon = line.find(": ");
    if (colon == std::string_view::npos) continue;
    const std::string name(line.substr(0, colon));
    const auto value = line.substr(colon + 2);
    if (value == "[]") {
      directives.emplace_back(dsl::AddRelatedObjects{name});
    } else {
      directives.emplace_back(dsl::UpdateState{name, dsl::split_attributes(value)});
    }
  }
  if (!summary.empty()) directives.emplace_back(dsl::UpdateReasoning{std::string(summary)});
  state.apply_estimation(directives);
  return state;
}

}  // namespace llmstate::state
