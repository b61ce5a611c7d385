#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "llmstate/sim/world.h"

namespace llmstate::sim {

// Parses a JSON world document:
//
//   {
//     "rooms": ["kitchen1", ...],
//     "robot": {"start_room": "kitchen1", "hand_capacity": 2,
//               "interaction_needs_free_hand": true,
//               "close_to": [...], "visited_rooms": [...]},      // optional
//     "observation": {"scope": "current_room" | "visited_rooms"},  // optional
//     "objects": [{"id": "fridge1", "class": "fridge",
//                  "placement": {"rel": "IN", "parent": "kitchen1"},
//                  "graspable": false, "openable": true, "switchable": false,
//                  "is_container": true, "is_surface": false,
//                  "open": false, "on": false, "capacity": null,
//                  "latent": {"temperature": "cold"},
//                  "lists": ["container"]}],
//     "effect_rules": [{"device_class": "microwave", "trigger": "switchon",
//                       "condition": {"class": "any", "requires_contents": true},
//                       "apply_to": ["contents"],
//                       "set": {"temperature": "hot"}}]
//   }
//
// Throws SchemaError for malformed documents and ConsistencyError for
// impossible worlds (cycles, dangling parents, capacity violations).
WorldModel load_world(std::string_view document);
WorldModel load_world_file(const std::filesystem::path& path);

// Snapshot of the full world including dynamic state (holding, step_count),
// with stable key order. Used for byte-level comparisons and trace dumps.
std::string dump_world(const WorldModel& world);

}  // namespace llmstate::sim
