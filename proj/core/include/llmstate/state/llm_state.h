#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "llmstate/dsl/types.h"

namespace llmstate::state {

// Which parts of the state the planner's prompts may see.
enum class StateMode {
  kFull,
  kNoSummary,  // object entries only
  kNoObjects,  // retrospective summary only
  kNoStates,   // no state at all; prompts carry raw history instead
};

std::string_view to_string(StateMode mode);
std::optional<StateMode> state_mode_from_string(std::string_view text);

// Key objects in first-registration order, each with its attribute list,
// plus a free-text retrospective summary. Key objects are never removed.
class LlmState {
 public:
  // Appends unseen names with an empty attribute list. Re-registering is a
  // no-op.
  void register_key_objects(std::span<const std::string> names);
  void register_key_object(const std::string& name);

  // UpdateState replaces the object's attribute list (registering it when
  // new); UpdateReasoning replaces the summary; AddRelatedObjects registers.
  // Applied in order, so later directives win.
  void apply_estimation(std::span<const dsl::Directive> directives);

  const std::vector<std::string>& key_objects() const { return key_objects_; }
  // nullptr if `name` is not a key object.
  const std::vector<std::string>* attributes(std::string_view name) const;
  const std::string& summary() const { return summary_; }
  bool empty() const { return key_objects_.empty() && summary_.empty(); }

  friend bool operator==(const LlmState&, const LlmState&) = default;

 private:
  std::vector<std::string> key_objects_;
  std::unordered_map<std::string, std::vector<std::string>> attributes_;
  std::string summary_;
};

// kFull:      "name: a | b" per key object ("name: []" when empty), then a
//             blank line pair and "Reasoning: <summary>" if there is one.
// kNoSummary: the object lines only.
// kNoObjects: the Reasoning line only.
// kNoStates:  empty.
std::string render_state(const LlmState& state, StateMode mode);

// Inverse of render_state(kFull); used to read state snapshots from traces.
LlmState parse_state_text(std::string_view text);

}  // namespace llmstate::state
