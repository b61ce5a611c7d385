#pragma once

#include <string>

#include "llmstate/planner/trace.h"

namespace llmstate::cli {

// Human-readable rendering of a trace: header, then each round's prompts,
// responses, parsed items, state snapshots and executed actions.
std::string format_trace(const planner::EpisodeResult& trace, bool show_prompts);

}  // namespace llmstate::cli
