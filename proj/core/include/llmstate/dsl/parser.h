#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "llmstate/dsl/types.h"

namespace llmstate::dsl {

struct ParsedDirectives {
  std::vector<Directive> directives;
  // Non-blank lines that were not a well-formed directive call.
  std::size_t skipped_lines = 0;
};

struct ParsedPlan {
  std::vector<PrimitiveAction> actions;
  // Non-blank lines, other than the plan header, that were discarded.
  std::size_t skipped_lines = 0;
};

// Line-oriented scan for add_related_objects / update_state / update_reasoning
// calls (and the add_attribute / generate_summary aliases) with quoted string
// arguments. Malformed lines are skipped; never throws.
ParsedDirectives parse_directives(std::string_view text);

// Extracts numbered "N. kind(args)" lines. Arguments may be bare or quoted; a
// trailing parenthetical or '#' comment is ignored. Unknown kinds and arity
// mismatches are discarded; never throws.
ParsedPlan parse_plan(std::string_view text);

// Inverse of parse_plan for well-formed plans: "Low-level Action Plan:" header
// followed by "1. kind(args)" lines.
std::string render_plan(const std::vector<PrimitiveAction>& plan);

}  // namespace llmstate::dsl
