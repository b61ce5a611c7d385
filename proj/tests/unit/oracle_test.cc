// The committed oracle cassettes must be exactly what the solver produces.
#include <gtest/gtest.h>

#include "llmstate/bench/task.h"
#include "llmstate/sim/goal.h"
#include "llmstate/sim/simulator.h"
#include "llmstate/sim/world_io.h"
#include "support/oracle_author.h"
#include "support/solver.h"
#include "support/test_util.h"

namespace llmstate::oracle {
namespace {

using llmstate::testing::data_dir;
using llmstate::testing::read_file;

TEST(Oracle, CommittedCassettesMatchRegeneration) {
  const auto suite = bench::load_suite_file(data_dir() / "suites/household.json");
  for (const auto& task : suite.tasks) {
    const auto authored = author_oracle_cassette(task);
    EXPECT_EQ(authored.cassette.serialize(), read_file(task.cassette)) << task.id;
    EXPECT_TRUE(authored.replay.success) << task.id;
    EXPECT_LE(authored.replay.steps_executed, task.step_cap) << task.id;
  }
}

TEST(Oracle, StagedPlansReachTheGoalDirectly) {
  const auto suite = bench::load_suite_file(data_dir() / "suites/household.json");
  for (const auto& task : suite.tasks) {
    auto world = sim::load_world_file(task.world_file);
    for (const auto& round : solve_staged(world, task.goal)) {
      for (const auto& action : round.plan) ASSERT_TRUE(sim::execute_action(world, action).success);
    }
    EXPECT_TRUE(sim::check_goal(world, task.goal)) << task.id;
  }
}

TEST(Oracle, BfsFindsShortestPlan) {
  const auto world = sim::load_world_file(data_dir() / "worlds/house2.json");
  const auto goal = sim::parse_goal(R"({"all": [{"type": "container_open", "id": "fridge1", "value": true}]})");
  const auto plan = bfs_solve(world, goal, relevant_objects(world, goal));
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->size(), 2u);
  const auto impossible = sim::parse_goal(R"({"all": [{"type": "switched", "id": "fridge1", "value": "on"}]})");
  EXPECT_FALSE(bfs_solve(world, impossible, relevant_objects(world, impossible)).has_value());
}

TEST(Oracle, GroundTruthAttributes) {
  const auto world = sim::load_world_file(data_dir() / "worlds/house2.json");
  EXPECT_EQ(ground_truth_attributes(world, "milk1"), (std::vector<std::string>{"in_fridge1", "cold"}));
  EXPECT_EQ(ground_truth_attributes(world, "livingroom1"), std::vector<std::string>{"robot_inside"});
}

}  // namespace
}  // namespace llmstate::oracle
