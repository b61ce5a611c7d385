#include "llmstate/bench/metrics.h"

#include <stdexcept>

namespace llmstate::bench {

Metrics compute_metrics(const std::vector<planner::EpisodeResult>& results, int step_cap) {
  if (results.empty()) throw std::invalid_argument("compute_metrics: no results");
  if (step_cap < 1) throw std::invalid_argument("compute_metrics: step_cap must be positive");
  Metrics m;
  m.trials = static_cast<int>(results.size());
  long long total_steps = 0;
  for (const auto& r : results) {
    if (r.success) {
      ++m.successes;
      total_steps += r.steps_executed;
    } else {
      total_steps += step_cap;
    }
  }
  m.success_rate = static_cast<double>(m.successes) / m.trials;
  m.average_steps = static_cast<double>(total_steps) / m.trials;
  return m;
}

}  // namespace llmstate::bench
