#include "llmstate/planner/trace.h"

#include <stdexcept>
#include <type_traits>

#include "json.hpp"
#include "llmstate/dsl/parser.h"

namespace llmstate::planner {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "llmstate-trace";

Json event_to_json(const TraceEvent& event) {
  return std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        Json j;
        if constexpr (std::is_same_v<T, LlmCallEvent>) {
          j["type"] = "llm_call";
          j["round"] = e.round;
          j["role"] = e.role;
          j["index"] = e.index;
          j["prompt"] = e.prompt;
          j["response"] = e.response;
          j["parsed"] = e.parsed;
          j["skipped_lines"] = e.skipped_lines;
        } else if constexpr (std::is_same_v<T, ActionEvent>) {
          j["type"] = "action";
          j["round"] = e.round;
          j["step"] = e.step;
          j["action"] = dsl::to_string(e.record.action);
          j["success"] = e.record.success;
          j["record"] = dsl::render_action_record(e.record);
          if (!e.reason.empty()) j["reason"] = e.reason;
        } else {
          j["type"] = "state";
          j["round"] = e.round;
          j["phase"] = e.phase;
          j["text"] = e.text;
        }
        return j;
      },
      event);
}

dsl::PrimitiveAction parse_action_text(const std::string& text) {
  const auto plan = dsl::parse_plan("1. " + text);
  if (plan.actions.size() != 1) throw std::runtime_error("trace: bad action '" + text + "'");
  return plan.actions.front();
}

TraceEvent event_from_json(const Json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "llm_call") {
    LlmCallEvent e;
    e.round = j.at("round").get<int>();
    e.role = j.at("role").get<std::string>();
    e.index = j.at("index").get<std::size_t>();
    e.prompt = j.at("prompt").get<std::string>();
    e.response = j.at("response").get<std::string>();
    e.parsed = j.at("parsed").get<std::vector<std::string>>();
    e.skipped_lines = j.at("skipped_lines").get<std::size_t>();
    return e;
  }
  if (type == "action") {
    ActionEvent e;
    e.round = j.at("round").get<int>();
    e.step = j.at("step").get<int>();
    e.record.action = parse_action_text(j.at("action").get<std::string>());
    e.record.success = j.at("success").get<bool>();
    e.reason = j.value("reason", std::string{});
    return e;
  }
  if (type == "state") {
    StateEvent e;
    e.round = j.at("round").get<int>();
    e.phase = j.at("phase").get<std::string>();
    e.text = j.at("text").get<std::string>();
    return e;
  }
  throw std::runtime_error("trace: unknown event type '" + type + "'");
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kGoal: return "goal";
    case Outcome::kStepCap: return "step_cap";
    case Outcome::kStall: return "stall";
    case Outcome::kLlmBudget: return "llm_budget";
    case Outcome::kBackendError: return "backend_error";
  }
  return "?";
}

std::optional<Outcome> outcome_from_string(std::string_view text) {
  for (const auto o : {Outcome::kGoal, Outcome::kStepCap, Outcome::kStall, Outcome::kLlmBudget,
                       Outcome::kBackendError}) {
    if (to_string(o) == text) return o;
  }
  return std::nullopt;
}

std::string serialize_trace(const EpisodeResult& result) {
  Json doc;
  doc["format"] = kFormat;
  doc["version"] = 1;
  doc["task"] = result.task_id;
  doc["mode"] = state::to_string(result.mode);
  doc["step_cap"] = result.step_cap;
  doc["success"] = result.success;
  doc["outcome"] = to_string(result.outcome);
  doc["steps_executed"] = result.steps_executed;
  doc["llm_calls"] = result.llm_calls;
  if (!result.error.empty()) doc["error"] = result.error;
  doc["final_state"] = state::render_state(result.final_state, state::StateMode::kFull);
  doc["events"] = Json::array();
  for (const auto& event : result.trace) doc["events"].push_back(event_to_json(event));
  return doc.dump(2) + "\n";
}

EpisodeResult parse_trace(std::string_view document) {
  try {
    const auto doc = Json::parse(document);
    if (doc.at("format").get<std::string>() != kFormat || doc.at("version").get<int>() != 1) {
      throw std::runtime_error("trace: not an llmstate-trace version 1 document");
    }
    EpisodeResult result;
    result.task_id = doc.at("task").get<std::string>();
    const auto mode = state::state_mode_from_string(doc.at("mode").get<std::string>());
    if (!mode) throw std::runtime_error("trace: unknown mode");
    result.mode = *mode;
    result.step_cap = doc.at("step_cap").get<int>();
    result.success = doc.at("success").get<bool>();
    const auto outcome = outcome_from_string(doc.at("outcome").get<std::string>());
    if (!outcome) throw std::runtime_error("trace: unknown outcome");
    result.outcome = *outcome;
    result.steps_executed = doc.at("steps_executed").get<int>();
    result.llm_calls = doc.at("llm_calls").get<std::size_t>();
    result.error = doc.value("error", std::string{});
    result.final_state = state::parse_state_text(doc.at("final_state").get<std::string>());
    for (const auto& event : doc.at("events")) result.trace.push_back(event_from_json(event));
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("trace: ") + e.what());
  }
}

}  // namespace llmstate::planner
