#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace llmstate::dsl {

// The nine primitive actions the robot exposes.
enum class ActionKind {
  kMove,
  kPickup,
  kPlaceIn,
  kPlaceOn,
  kOpen,
  kClose,
  kSwitchOn,
  kSwitchOff,
  kWait,
};

inline constexpr std::array<ActionKind, 9> kAllActionKinds = {
    ActionKind::kMove,   ActionKind::kPickup,   ActionKind::kPlaceIn,
    ActionKind::kPlaceOn, ActionKind::kOpen,    ActionKind::kClose,
    ActionKind::kSwitchOn, ActionKind::kSwitchOff, ActionKind::kWait,
};

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> action_kind_from_string(std::string_view name);
std::size_t arity(ActionKind kind);

struct PrimitiveAction {
  ActionKind kind = ActionKind::kWait;
  std::vector<std::string> args;

  // Throws std::invalid_argument when args.size() != arity(kind).
  static PrimitiveAction make(ActionKind kind, std::vector<std::string> args);

  friend bool operator==(const PrimitiveAction&, const PrimitiveAction&) = default;
};

// Call syntax, e.g. "placein(cup1, cupboard1)".
std::string to_string(const PrimitiveAction& action);

struct ActionRecord {
  PrimitiveAction action;
  bool success = false;

  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

// "['placein', 'cutleryknife2', 'kitchencabinet1'](Fail)"
std::string render_action_record(const ActionRecord& record);

// Python list repr of the rendered records, as shown in history sections.
std::string render_history(const std::vector<ActionRecord>& records);

struct AddRelatedObjects {
  std::string name;
  friend bool operator==(const AddRelatedObjects&, const AddRelatedObjects&) = default;
};

// Also produced by the add_attribute alias.
struct UpdateState {
  std::string name;
  std::vector<std::string> attributes;
  friend bool operator==(const UpdateState&, const UpdateState&) = default;
};

// Also produced by the generate_summary alias.
struct UpdateReasoning {
  std::string text;
  friend bool operator==(const UpdateReasoning&, const UpdateReasoning&) = default;
};

using Directive = std::variant<AddRelatedObjects, UpdateState, UpdateReasoning>;

// Canonical call form, e.g. update_state("apple", "on_table | in_hand").
std::string to_string(const Directive& directive);

// Splits "a | b" into {"a", "b"}; segments are trimmed, empty ones dropped.
std::vector<std::string> split_attributes(std::string_view text);

}  // namespace llmstate::dsl
