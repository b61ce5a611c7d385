#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llmstate/sim/goal.h"

namespace llmstate::bench {

enum class Difficulty { kSimple, kHard };

std::string_view to_string(Difficulty difficulty);

struct TaskSpec {
  std::string id;
  std::string instruction;
  std::filesystem::path world_file;  // absolute after loading
  sim::GoalPredicate goal;
  int step_cap = 30;
  Difficulty difficulty = Difficulty::kSimple;
  int trials = 5;
  std::filesystem::path cassette;  // default cassette; empty if none
};

// Task document:
//   {"id": "heat_milk", "instruction": "Heat milk with microwave.",
//    "world": "../worlds/house2.json", "goal": {"all": [...]},
//    "step_cap": 30, "difficulty": "simple", "trials": 5,
//    "cassette": "../cassettes/oracle/heat_milk.json"}
// Relative paths resolve against base_dir. Simple tasks must have
// step_cap <= 30. Throws SchemaError.
TaskSpec parse_task(std::string_view document, const std::filesystem::path& base_dir);
TaskSpec load_task_file(const std::filesystem::path& path);

// Accepts "tasks/heat_milk" as well as "tasks/heat_milk.json".
std::filesystem::path resolve_task_path(const std::filesystem::path& path);

// Suite manifest: {"name": "household", "tasks": ["../tasks/heat_milk.json", ...]}.
struct Suite {
  std::string name;
  std::vector<TaskSpec> tasks;
};
Suite load_suite_file(const std::filesystem::path& path);

}  // namespace llmstate::bench
