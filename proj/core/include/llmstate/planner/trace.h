#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llmstate/dsl/types.h"
#include "llmstate/state/llm_state.h"

namespace llmstate::planner {

enum class Outcome {
  kGoal,
  kStepCap,
  kStall,
  kLlmBudget,
  kBackendError,  // the backend threw; EpisodeResult::error holds the message
};

std::string_view to_string(Outcome outcome);
std::optional<Outcome> outcome_from_string(std::string_view text);

struct LlmCallEvent {
  int round = 0;
  std::string role;
  std::size_t index = 0;
  std::string prompt;
  std::string response;
  std::vector<std::string> parsed;  // canonical call text of each parsed item
  std::size_t skipped_lines = 0;

  friend bool operator==(const LlmCallEvent&, const LlmCallEvent&) = default;
};

struct ActionEvent {
  int round = 0;
  int step = 0;  // world step count after execution
  dsl::ActionRecord record;
  std::string reason;  // simulator diagnostic, empty on success

  friend bool operator==(const ActionEvent&, const ActionEvent&) = default;
};

struct StateEvent {
  int round = 0;
  std::string phase;  // "attention" or "estimation"
  std::string text;   // render_state(kFull)

  friend bool operator==(const StateEvent&, const StateEvent&) = default;
};

using TraceEvent = std::variant<LlmCallEvent, ActionEvent, StateEvent>;

struct EpisodeResult {
  std::string task_id;
  state::StateMode mode = state::StateMode::kFull;
  int step_cap = 0;
  bool success = false;
  int steps_executed = 0;
  Outcome outcome = Outcome::kStepCap;
  std::string error;
  std::size_t llm_calls = 0;
  std::vector<TraceEvent> trace;
  state::LlmState final_state;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

// Versioned JSON document ("llmstate-trace", version 1), stable key order,
// no timestamps. Equal results serialize to equal bytes.
std::string serialize_trace(const EpisodeResult& result);
// Inverse of serialize_trace. Throws std::runtime_error on malformed input.
EpisodeResult parse_trace(std::string_view document);

}  // namespace llmstate::planner
