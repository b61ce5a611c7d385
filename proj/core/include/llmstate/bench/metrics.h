#pragma once

#include <vector>

#include "llmstate/planner/trace.h"

namespace llmstate::bench {

struct Metrics {
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;   // successes / trials
  double average_steps = 0.0;  // failed trials count as step_cap
};

// All results must come from the same task. Throws std::invalid_argument on
// empty input or a non-positive step_cap.
Metrics compute_metrics(const std::vector<planner::EpisodeResult>& results, int step_cap);

}  // namespace llmstate::bench
