#include "cli/inspect.h"

#include <sstream>
#include <type_traits>

namespace llmstate::cli {
namespace {

void indent(std::ostringstream& out, const std::string& text, const char* prefix) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) out << prefix << line << '\n';
}

}  // namespace

std::string format_trace(const planner::EpisodeResult& trace, bool show_prompts) {
  std::ostringstream out;
  out << "task: " << trace.task_id << '\n'
      << "mode: " << state::to_string(trace.mode) << '\n'
      << "outcome: " << planner::to_string(trace.outcome) << (trace.success ? " (success)" : "")
      << '\n'
      << "steps: " << trace.steps_executed << " / " << trace.step_cap << '\n'
      << "llm calls: " << trace.llm_calls << '\n';
  if (!trace.error.empty()) out << "error: " << trace.error << '\n';

  int round = -1;
  for (const auto& event : trace.trace) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if (e.round != round) {
            round = e.round;
            out << "\n=== round " << round << " ===\n";
          }
          if constexpr (std::is_same_v<T, planner::LlmCallEvent>) {
            out << "[" << e.role << " #" << e.index << "]";
            if (e.skipped_lines > 0) out << " skipped " << e.skipped_lines << " line(s)";
            out << '\n';
            if (show_prompts) {
              out << "  prompt:\n";
              indent(out, e.prompt, "    | ");
            }
            out << "  response:\n";
            indent(out, e.response, "    > ");
            for (const auto& item : e.parsed) out << "  parsed: " << item << '\n';
          } else if constexpr (std::is_same_v<T, planner::ActionEvent>) {
            out << "  step " << e.step << ": " << dsl::render_action_record(e.record);
            if (!e.reason.empty()) out << "  [" << e.reason << "]";
            out << '\n';
          } else {
            out << "  state after " << e.phase << ":\n";
            indent(out, e.text.empty() ? std::string("(empty)") : e.text, "    ");
          }
        },
        event);
  }
  out << "\nfinal state:\n";
  const auto final_text = state::render_state(trace.final_state, state::StateMode::kFull);
  indent(out, final_text.empty() ? std::string("(empty)") : final_text, "  ");
  return out.str();
}

}  // namespace llmstate::cli
