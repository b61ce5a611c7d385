#include "llmstate/prompts/prompts.h"

#include <stdexcept>

namespace llmstate::prompts {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kAttention: return "attention";
    case Role::kEstimator: return "estimator";
    case Role::kPolicy: return "policy";
  }
  return "?";
}

PromptBundle build_attention_prompt(std::string_view state_text,
                                    const sim::Observation& observation,
                                    std::string_view instruction) {
  PromptBundle bundle;
  bundle.role = Role::kAttention;
  bundle.slots = {
      {"state", std::string(state_text)},
      {"observation", sim::render_observation(observation)},
      {"instruction", std::string(instruction)},
  };
  bundle.text = render_template(attention_template(), bundle.slots);
  return bundle;
}

PromptBundle build_estimator_prompt(std::string_view state_text,
                                    const std::vector<dsl::ActionRecord>& history,
                                    const sim::Observation& observation) {
  PromptBundle bundle;
  bundle.role = Role::kEstimator;
  bundle.slots = {
      {"state", std::string(state_text)},
      {"history", dsl::render_history(history)},
      {"observation_tail", sim::render_observation_tail(observation)},
  };
  bundle.text = render_template(estimator_template(), bundle.slots);
  return bundle;
}

PromptBundle build_policy_prompt(std::string_view instruction,
                                 const std::vector<dsl::ActionRecord>& history,
                                 const sim::Observation& observation,
                                 std::string_view state_text, int step_budget,
                                 state::StateMode mode) {
  if (step_budget < 1) throw std::invalid_argument("step_budget must be at least 1");
  std::string state_section;
  if (mode != state::StateMode::kNoStates) {
    state_section = "******** current state start ********\n";
    state_section += state_text;
    state_section += "\n******** current state end ********\n\n";
  }
  PromptBundle bundle;
  bundle.role = Role::kPolicy;
  bundle.slots = {
      {"history", dsl::render_history(history)},
      {"observation", sim::render_observation(observation)},
      {"state_section", std::move(state_section)},
      {"instruction", std::string(instruction)},
      {"step_budget", std::to_string(step_budget)},
  };
  bundle.text = render_template(policy_template(), bundle.slots);
  return bundle;
}

}  // namespace llmstate::prompts
