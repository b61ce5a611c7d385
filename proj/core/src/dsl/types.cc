#include "llmstate/dsl/types.h"

#include <stdexcept>

#include "llmstate/util/pyrepr.h"

namespace llmstate::dsl {

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kMove: return "move";
    case ActionKind::kPickup: return "pickup";
    case ActionKind::kPlaceIn: return "placein";
    case ActionKind::kPlaceOn: return "placeon";
    case ActionKind::kOpen: return "open";
    case ActionKind::kClose: return "close";
    case ActionKind::kSwitchOn: return "switchon";
    case ActionKind::kSwitchOff: return "switchoff";
    case ActionKind::kWait: return "wait";
  }
  return "?";
}

std::optional<ActionKind> action_kind_from_string(std::string_view name) {
  for (const ActionKind kind : kAllActionKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t arity(ActionKind kind) {
  switch (kind) {
    case ActionKind::kWait: return 0;
    case ActionKind::kPlaceIn:
    case ActionKind::kPlaceOn: return 2;
    default: return 1;
  }
}

PrimitiveAction PrimitiveAction::make(ActionKind kind, std::vector<std::string> args) {
  if (args.size() != arity(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " takes " +
                                std::to_string(arity(kind)) + " argument(s), got " +
                                std::to_string(args.size()));
  }
  return PrimitiveAction{kind, std::move(args)};
}

std::string to_string(const PrimitiveAction& action) {
  std::string out(to_string(action.kind));
  out += '(';
  for (std::size_t i = 0; i < action.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += action.args[i];
  }
  out += ')';
  return out;
}

std::string render_action_record(const ActionRecord& record) {
  std::vector<std::string> parts;
  parts.reserve(record.action.args.size() + 1);
  parts.emplace_back(to_string(record.action.kind));
  for (const auto& arg : record.action.args) parts.push_back(arg);
  return util::py_list_repr(parts) + (record.success ? "(Success)" : "(Fail)");
}

std::string render_history(const std::vector<ActionRecord>& records) {
  std::vector<std::string> rendered;
  rendered.reserve(records.size());
  for (const auto& record : records) rendered.push_back(render_action_record(record));
  return util::py_list_repr(rendered);
}

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_attributes(const std::vector<std::string>& attributes) {
  std::string out;
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (i > 0) out += " | ";
    out += attributes[i];
  }
  return out;
}

}  // namespace

std::string to_string(const Directive& directive) {
  struct Visitor {
    std::string operator()(const AddRelatedObjects& d) const {
      return "add_related_objects(" + quoted(d.name) + ")";
    }
    std::string operator()(const UpdateState& d) const {
      return "update_state(" + quoted(d.name) + ", " + quoted(join_attributes(d.attributes)) + ")";
    }
    std::string operator()(const UpdateReasoning& d) const {
      return "update_reasoning(" + quoted(d.text) + ")";
    }
  };
  return std::visit(Visitor{}, directive);
}

std::vector<std::string> split_attributes(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto bar = text.find('|', start);
    const auto end = bar == std::string_view::npos ? text.size() : bar;
    const auto segment = util::trim(text.substr(start, end - start));
    if (!segment.empty()) out.emplace_back(segment);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

}  // namespace llmstate::dsl
