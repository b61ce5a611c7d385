#include <gtest/gtest.h>

#include "json.hpp"
#include "llmstate/bench/task.h"
#include "llmstate/llm/cassette.h"
#include "llmstate/planner/planner.h"
#include "llmstate/planner/trace.h"
#include "support/test_util.h"

namespace llmstate::planner {
namespace {

using llmstate::testing::data_dir;

EpisodeResult oracle_episode(const std::string& id, state::StateMode mode = state::StateMode::kFull) {
  const auto task = bench::load_task_file(data_dir() / "tasks" / (id + ".json"));
  llm::CassetteBackend backend(llm::Cassette::load(task.cassette));
  PlannerConfig config;
  config.state_mode = mode;
  return run_episode(task, backend, config);
}

TEST(Trace, RoundTripsThroughText) {
  for (const auto* id : {"heat_milk", "three_toasts", "take_away_three"}) {
    const auto result = oracle_episode(id);
    const auto text = serialize_trace(result);
    const auto back = parse_trace(text);
    EXPECT_EQ(back, result) << id;
    EXPECT_EQ(serialize_trace(back), text);
  }
}

TEST(Trace, IsVersionedAndOrdered) {
  const auto doc = nlohmann::json::parse(serialize_trace(oracle_episode("book_on_desk")));
  EXPECT_EQ(doc.at("format"), "llmstate-trace");
  EXPECT_EQ(doc.at("version"), 1);
  const auto& events = doc.at("events");
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.front().at("type"), "llm_call");
  EXPECT_EQ(events.front().at("role"), "attention");
}

TEST(Trace, ReplayTwiceIsByteIdentical) {
  for (auto mode : {state::StateMode::kFull, state::StateMode::kNoObjects, state::StateMode::kNoStates}) {
    EXPECT_EQ(serialize_trace(oracle_episode("switch_off_all_lights", mode)),
              serialize_trace(oracle_episode("switch_off_all_lights", mode)));
  }
}

TEST(Trace, MalformedDocumentsThrow) {
  EXPECT_THROW(parse_trace("{}"), std::runtime_error);
  EXPECT_THROW(parse_trace("[1, 2"), std::runtime_error);
  EXPECT_THROW(parse_trace(R"({"format": "llmstate-trace", "version": 2})"), std::runtime_error);
}

TEST(Outcome, NamesRoundTrip) {
  for (auto o : {Outcome::kGoal, Outcome::kStepCap, Outcome::kStall, Outcome::kLlmBudget, Outcome::kBackendError}) {
    EXPECT_EQ(outcome_from_string(to_string(o)), o);
  }
  EXPECT_FALSE(outcome_from_string("done").has_value());
}

}  // namespace
}  // namespace llmstate::planner
