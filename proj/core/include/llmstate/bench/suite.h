#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "llmstate/bench/metrics.h"
#include "llmstate/bench/task.h"
#include "llmstate/llm/chat.h"
#include "llmstate/planner/planner.h"

namespace llmstate::bench {

struct EpisodeSummary {
  int trial = 0;
  bool success = false;
  int steps_executed = 0;
  planner::Outcome outcome = planner::Outcome::kStepCap;
  std::string error;
};

struct TaskReport {
  std::string id;
  std::string instruction;
  Difficulty difficulty = Difficulty::kSimple;
  int step_cap = 0;
  Metrics metrics;
  std::vector<EpisodeSummary> episodes;  // ordered by trial
};

struct DifficultySummary {
  int tasks = 0;
  double mean_success_rate = 0.0;
  double mean_average_steps = 0.0;
};

struct SuiteReport {
  std::string suite;
  state::StateMode mode = state::StateMode::kFull;
  std::string backend;
  std::string model;
  int plan_horizon_budget = 0;
  std::vector<TaskReport> tasks;  // suite order
  std::optional<DifficultySummary> simple;
  std::optional<DifficultySummary> hard;
};

// Creates the backend for one episode. May return a wrapper around a shared
// backend. Exceptions are recorded against the episode.
using BackendFactory =
    std::function<std::unique_ptr<llm::Backend>(const TaskSpec& task, int trial)>;

struct SuiteOptions {
  std::string suite_name = "suite";
  planner::PlannerConfig config;  // max_steps is taken from each task
  int parallelism = 1;
  std::string backend_label = "replay";
  // When set, traces go to <out_dir>/traces/<task>.trial<k>.json and the
  // reports to <out_dir>/report.txt and <out_dir>/report.json.
  std::filesystem::path out_dir;
};

// Runs every trial of every task. Results are keyed by (task, trial), so the
// report does not depend on parallelism or scheduling.
SuiteReport run_suite(const std::vector<TaskSpec>& tasks, const BackendFactory& backends,
                      const SuiteOptions& options);

std::string render_report_text(const SuiteReport& report);
std::string render_report_json(const SuiteReport& report);

}  // namespace llmstate::bench
