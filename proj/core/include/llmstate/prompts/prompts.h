#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "llmstate/dsl/types.h"
#include "llmstate/prompts/template.h"
#include "llmstate/sim/simulator.h"
#include "llmstate/state/llm_state.h"

namespace llmstate::prompts {

enum class Role { kAttention, kEstimator, kPolicy };

std::string_view to_string(Role role);

struct PromptBundle {
  Role role = Role::kAttention;
  std::string text;
  SlotList slots;  // injected values, kept for trace logging
};

// state_text is render_state() output for the episode's mode.
PromptBundle build_attention_prompt(std::string_view state_text,
                                    const sim::Observation& observation,
                                    std::string_view instruction);

// history must hold every record since step 0.
PromptBundle build_estimator_prompt(std::string_view state_text,
                                    const std::vector<dsl::ActionRecord>& history,
                                    const sim::Observation& observation);

// In kNoStates mode the whole current-state section is left out; every other
// mode renders state_text between the section delimiters. step_budget >= 1.
PromptBundle build_policy_prompt(std::string_view instruction,
                                 const std::vector<dsl::ActionRecord>& history,
                                 const sim::Observation& observation,
                                 std::string_view state_text, int step_budget,
                                 state::StateMode mode);

}  // namespace llmstate::prompts
