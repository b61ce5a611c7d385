#include "llmstate/planner/planner.h"

#include <algorithm>
#include <stdexcept>

#include "llmstate/dsl/parser.h"
#include "llmstate/prompts/prompts.h"
#include "llmstate/sim/goal.h"
#include "llmstate/sim/world_io.h"

namespace llmstate::planner {
namespace {

// Sends one prompt and logs the exchange. `parsed` is filled in by the caller
// once the response has been interpreted.
struct Exchange {
  std::string response;
  LlmCallEvent* event = nullptr;
};

Exchange call(StepContext& ctx, const prompts::PromptBundle& prompt) {
  const std::string role(prompts::to_string(prompt.role));
  llm::CallContext call_ctx{role, ctx.calls_per_role[role]};
  auto request = llm::make_request(ctx.config.system_prompt, prompt.text, ctx.config.model,
                                   ctx.config.temperature, ctx.config.max_output);
  auto response = ctx.backend.complete(request, call_ctx);
  ++ctx.calls_per_role[role];
  Exchange exchange{std::move(response)};
  if (ctx.trace != nullptr) {
    LlmCallEvent event;
    event.round = ctx.round;
    event.role = role;
    event.index = call_ctx.index;
    event.prompt = prompt.text;
    event.response = exchange.response;
    ctx.trace->emplace_back(std::move(event));
    exchange.event = &std::get<LlmCallEvent>(ctx.trace->back());
  }
  return exchange;
}

void record_directives(Exchange& exchange, const dsl::ParsedDirectives& parsed) {
  if (exchange.event == nullptr) return;
  for (const auto& d : parsed.directives) exchange.event->parsed.push_back(dsl::to_string(d));
  exchange.event->skipped_lines = parsed.skipped_lines;
}

void snapshot(StepContext& ctx, const char* phase, const state::LlmState& state) {
  if (ctx.trace == nullptr) return;
  ctx.trace->emplace_back(StateEvent{ctx.round, phase, state::render_state(state, state::StateMode::kFull)});
}

}  // namespace

void PlannerConfig::validate() const {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (plan_horizon_budget < 1) throw std::invalid_argument("plan_horizon_budget must be at least 1");
  if (max_llm_calls < 1) throw std::invalid_argument("max_llm_calls must be at least 1");
  if (stall_limit < 1) throw std::invalid_argument("stall_limit must be at least 1");
  if (max_output < 1) throw std::invalid_argument("max_output must be at least 1");
  if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
}

state::LlmState attention_step(const state::LlmState& state, const sim::Observation& observation,
                               std::string_view instruction, StepContext& ctx) {
  const auto prompt = prompts::build_attention_prompt(
      state::render_state(state, ctx.config.state_mode), observation, instruction);
  auto exchange = call(ctx, prompt);
  const auto parsed = dsl::parse_directives(exchange.response);
  record_directives(exchange, parsed);

  state::LlmState next = state;
  for (const auto& directive : parsed.directives) {
    // Only registrations count here; attribute updates are the estimator's job.
    if (const auto* add = std::get_if<dsl::AddRelatedObjects>(&directive)) {
      next.register_key_object(add->name);
    }
  }
  snapshot(ctx, "attention", next);
  return next;
}

state::LlmState estimation_step(const state::LlmState& state,
                                const std::vector<dsl::ActionRecord>& history,
                                const sim::Observation& observation, StepContext& ctx) {
  const auto prompt = prompts::build_estimator_prompt(
      state::render_state(state, ctx.config.state_mode), history, observation);
  auto exchange = call(ctx, prompt);
  const auto parsed = dsl::parse_directives(exchange.response);
  record_directives(exchange, parsed);

  state::LlmState next = state;
  next.apply_estimation(parsed.directives);
  snapshot(ctx, "estimation", next);
  return next;
}

std::vector<dsl::PrimitiveAction> policy_step(const state::LlmState& state,
                                              const sim::Observation& observation,
                                              std::string_view instruction,
                                              const std::vector<dsl::ActionRecord>& history,
                                              int budget, StepContext& ctx) {
  const auto prompt = prompts::build_policy_prompt(
      instruction, history, observation, state::render_state(state, ctx.config.state_mode), budget,
      ctx.config.state_mode);
  auto exchange = call(ctx, prompt);
  auto parsed = dsl::parse_plan(exchange.response);
  if (exchange.event != nullptr) {
    for (const auto& action : parsed.actions) exchange.event->parsed.push_back(dsl::to_string(action));
    exchange.event->skipped_lines = parsed.skipped_lines;
  }
  return std::move(parsed.actions);
}

int step_budget(const PlannerConfig& config, int executed) {
  return std::min(config.plan_horizon_budget, std::max(1, config.max_steps - executed));
}

EpisodeResult run_episode(const std::string& task_id, std::string_view instruction,
                          sim::WorldModel& world, const sim::GoalPredicate& goal,
                          llm::Backend& backend, const PlannerConfig& config,
                          const RoundObserver& observer) {
  config.validate();
  EpisodeResult result;
  result.task_id = task_id;
  result.mode = config.state_mode;
  result.step_cap = config.max_steps;

  llm::BudgetedBackend budgeted(backend, static_cast<std::size_t>(config.max_llm_calls));
  StepContext ctx(budgeted, config);
  ctx.trace = &result.trace;

  std::vector<dsl::ActionRecord> history;
  state::LlmState belief;
  const int start_steps = world.step_count;
  const bool uses_state = config.state_mode != state::StateMode::kNoStates;
  int empty_plans = 0;

  auto finish = [&](Outcome outcome) {
    result.outcome = outcome;
    result.success = outcome == Outcome::kGoal;
    result.steps_executed = world.step_count - start_steps;
    result.llm_calls = budgeted.calls();
    result.final_state = belief;
    return result;
  };

  if (sim::check_goal(world, goal)) return finish(Outcome::kGoal);

  for (;; ++ctx.round) {
    const auto observation = sim::observe(world);
    std::vector<dsl::PrimitiveAction> plan;
    try {
      if (uses_state) {
        belief = attention_step(belief, observation, instruction, ctx);
        belief = estimation_step(belief, history, observation, ctx);
        if (observer) observer(ctx.round, belief, world);
      }
      const int budget = step_budget(config, world.step_count - start_steps);
      plan = policy_step(belief, observation, instruction, history, budget, ctx);
    } catch (const llm::BudgetExceeded& e) {
      result.error = e.what();
      return finish(Outcome::kLlmBudget);
    } catch (const std::exception& e) {
      result.error = e.what();
      return finish(Outcome::kBackendError);
    }

    if (plan.empty()) {
      if (++empty_plans >= config.stall_limit) return finish(Outcome::kStall);
      continue;
    }
    empty_plans = 0;

    for (const auto& action : plan) {
      const auto outcome = sim::execute_action(world, action);
      dsl::ActionRecord record{action, outcome.success};
      history.push_back(record);
      result.trace.emplace_back(
          ActionEvent{ctx.round, world.step_count - start_steps, record, outcome.internal_reason});
      if (sim::check_goal(world, goal)) return finish(Outcome::kGoal);
      if (world.step_count - start_steps >= config.max_steps) return finish(Outcome::kStepCap);
      if (!outcome.success) break;
    }
  }
}

EpisodeResult run_episode(const bench::TaskSpec& task, llm::Backend& backend,
                          const PlannerConfig& config, const RoundObserver& observer) {
  auto world = sim::load_world_file(task.world_file);
  auto task_config = config;
  task_config.max_steps = task.step_cap;
  return run_episode(task.id, task.instruction, world, task.goal, backend, task_config, observer);
}

}  // namespace llmstate::planner
