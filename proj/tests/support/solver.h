#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "llmstate/dsl/types.h"
#include "llmstate/sim/goal.h"
#include "llmstate/sim/world.h"

namespace llmstate::oracle {

// Breadth-first search over full ground truth. Only actions whose arguments
// come from `relevant` (plus rooms) are tried, and only successful ones are
// expanded, so the returned plan is shortest within that action set.
std::optional<std::vector<dsl::PrimitiveAction>> bfs_solve(const sim::WorldModel& start,
                                                           const sim::GoalPredicate& goal,
                                                           const std::vector<std::string>& relevant,
                                                           std::size_t max_states = 500000);

// Splits a goal into cumulative sub-goals: one per atom, and one per unit
// of progress for count atoms. Each sub-goal keeps everything before it.
std::vector<sim::GoalPredicate> stage_goals(const sim::WorldModel& world,
                                            const sim::GoalPredicate& goal);

// Objects the solver may touch to reach `goal` from `world`: named objects,
// one candidate per class selector, effect devices and enclosing containers.
std::vector<std::string> relevant_objects(const sim::WorldModel& world,
                                          const sim::GoalPredicate& goal);

struct Round {
  sim::WorldModel world_before;
  std::vector<dsl::PrimitiveAction> plan;
};

// Solves each stage in turn from the evolving world. Throws
// std::runtime_error if some stage has no solution.
std::vector<Round> solve_staged(const sim::WorldModel& start, const sim::GoalPredicate& goal);

}  // namespace llmstate::oracle
