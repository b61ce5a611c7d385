#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "llmstate/bench/task.h"
#include "llmstate/dsl/types.h"
#include "llmstate/llm/chat.h"
#include "llmstate/planner/trace.h"
#include "llmstate/sim/simulator.h"
#include "llmstate/state/llm_state.h"

namespace llmstate::planner {

struct PlannerConfig {
  state::StateMode state_mode = state::StateMode::kFull;
  int max_steps = 30;
  int plan_horizon_budget = 20;
  int max_llm_calls = 300;
  int stall_limit = 3;

  std::string model = "gpt-4-0613";
  double temperature = 0.0;
  int max_output = 1024;
  std::string system_prompt;

  // Throws std::invalid_argument if any limit is below 1.
  void validate() const;
};

// Per-episode bookkeeping threaded through the step functions: which round
// is running, how many calls each role has made, and where events go.
struct StepContext {
  StepContext(llm::Backend& backend, const PlannerConfig& config) : backend(backend), config(config) {}

  llm::Backend& backend;
  const PlannerConfig& config;
  int round = 0;
  std::map<std::string, std::size_t> calls_per_role;
  std::vector<TraceEvent>* trace = nullptr;  // optional
};

// Asks the attention role for task-relevant objects and registers them.
state::LlmState attention_step(const state::LlmState& state, const sim::Observation& observation,
                               std::string_view instruction, StepContext& ctx);

// Re-estimates object attributes and the summary from the full history.
state::LlmState estimation_step(const state::LlmState& state,
                                const std::vector<dsl::ActionRecord>& history,
                                const sim::Observation& observation, StepContext& ctx);

// Returns the parsed plan, possibly empty.
std::vector<dsl::PrimitiveAction> policy_step(const state::LlmState& state,
                                              const sim::Observation& observation,
                                              std::string_view instruction,
                                              const std::vector<dsl::ActionRecord>& history,
                                              int step_budget, StepContext& ctx);

// min(plan_horizon_budget, max(1, max_steps - executed)).
int step_budget(const PlannerConfig& config, int executed);

// Called after each round's estimation with the belief and the ground truth.
using RoundObserver =
    std::function<void(int round, const state::LlmState& state, const sim::WorldModel& world)>;

// Closed loop: observe, attention, estimation, policy, then execute the plan
// until its first failure. The goal and the step cap are checked after every
// executed action. Backend errors end the episode (kLlmBudget or
// kBackendError) instead of propagating. In kNoStates mode the attention and
// estimation roles are not called.
EpisodeResult run_episode(const std::string& task_id, std::string_view instruction,
                          sim::WorldModel& world, const sim::GoalPredicate& goal,
                          llm::Backend& backend, const PlannerConfig& config,
                          const RoundObserver& observer = {});

// Loads the task's world and runs it with max_steps set to task.step_cap.
EpisodeResult run_episode(const bench::TaskSpec& task, llm::Backend& backend,
                          const PlannerConfig& config, const RoundObserver& observer = {});

}  // namespace llmstate::planner
