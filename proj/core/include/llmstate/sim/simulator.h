#pragma once

#include <string>
#include <vector>

#include "llmstate/dsl/types.h"
#include "llmstate/sim/world.h"

namespace llmstate::sim {

// What the robot perceives: visible objects in scope plus its own status.
struct Observation {
  std::vector<std::string> object_entries;     // "childId REL parentId"
  std::vector<std::string> container_entries;
  std::vector<std::string> surface_entries;
  std::vector<std::string> room_list;
  std::vector<std::string> holding;
  std::vector<std::string> close_to;
  std::string current_room;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Full seven-line block used by the attention and policy prompts.
std::string render_observation(const Observation& observation);
// The last four lines (rooms, holding, close-to, current room).
std::string render_observation_tail(const Observation& observation);

struct ActionOutcome {
  bool success = false;
  // Diagnostic only; empty on success. Never shown to the planner.
  std::string internal_reason;
};

Observation observe(const WorldModel& world);

// Executes one primitive action. Failures leave everything but step_count
// untouched; step_count is incremented on every call.
ActionOutcome execute_action(WorldModel& world, const dsl::PrimitiveAction& action);

}  // namespace llmstate::sim
