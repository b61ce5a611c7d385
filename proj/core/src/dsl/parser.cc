#include "llmstate/dsl/parser.h"

#include <cctype>
#include <optional>
#include <string>

#include "llmstate/util/pyrepr.h"

namespace llmstate::dsl {
namespace {

constexpr std::string_view kPlanHeader = "Low-level Action Plan:";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

// Calls fn(line) for every line in text (without the trailing '\n').
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(start, end - start));
    start = end + 1;
  }
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }

  void skip_space() {
    while (!done() && is_space(text_[pos_])) ++pos_;
  }

  bool consume(char c) {
    if (peek() != c || done()) return false;
    ++pos_;
    return true;
  }

  std::string_view identifier() {
    const auto begin = pos_;
    while (!done() && is_ident(text_[pos_])) ++pos_;
    return text_.substr(begin, pos_ - begin);
  }

  // Quoted string with backslash escapes; nullopt if unterminated.
  std::optional<std::string> quoted() {
    const char quote = peek();
    if (quote != '"' && quote != '\'') return std::nullopt;
    ++pos_;
    std::string out;
    while (!done()) {
      const char c = text_[pos_++];
      if (c == quote) return out;
      if (c == '\\' && !done()) {
        const char next = text_[pos_++];
        switch (next) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '\\':
          case '"':
          case '\'': out.push_back(next); break;
          default:
            out.push_back('\\');
            out.push_back(next);
        }
        continue;
      }
      out.push_back(c);
    }
    return std::nullopt;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

enum class DirectiveName { kAddRelated, kUpdateState, kUpdateReasoning };

std::optional<DirectiveName> directive_name(std::string_view name) {
  if (name == "add_related_objects") return DirectiveName::kAddRelated;
  if (name == "update_state" || name == "add_attribute") return DirectiveName::kUpdateState;
  if (name == "update_reasoning" || name == "generate_summary") {
    return DirectiveName::kUpdateReasoning;
  }
  return std::nullopt;
}

std::size_t directive_arity(DirectiveName name) {
  return name == DirectiveName::kUpdateState ? 2 : 1;
}

// Strict form: name(quoted, quoted, ...) followed by optional ';'.
std::optional<std::vector<std::string>> strict_args(Cursor cursor) {
  std::vector<std::string> args;
  cursor.skip_space();
  if (cursor.consume(')')) {
    // zero args
  } else {
    while (true) {
      cursor.skip_space();
      auto arg = cursor.quoted();
      if (!arg) return std::nullopt;
      args.push_back(std::move(*arg));
      cursor.skip_space();
      if (cursor.consume(',')) continue;
      if (cursor.consume(')')) break;
      return std::nullopt;
    }
  }
  cursor.skip_space();
  cursor.consume(';');
  cursor.skip_space();
  if (!cursor.done()) return std::nullopt;
  return args;
}

// Lenient single-argument form: everything between the opening quote and the
// same quote character immediately before the closing ')'. Tolerates
// unescaped inner quotes in free-text reasoning.
std::optional<std::string> lenient_single_arg(std::string_view rest) {
  auto body = util::trim(rest);
  if (!body.empty() && body.back() == ';') body = util::trim(body.substr(0, body.size() - 1));
  if (body.size() < 3 || body.back() != ')') return std::nullopt;
  body = util::trim(body.substr(0, body.size() - 1));
  if (body.size() < 2) return std::nullopt;
  const char quote = body.front();
  if ((quote != '"' && quote != '\'') || body.back() != quote) return std::nullopt;
  return std::string(body.substr(1, body.size() - 2));
}

std::optional<Directive> parse_directive_line(std::string_view line) {
  Cursor cursor(line);
  cursor.skip_space();
  const auto name_text = cursor.identifier();
  const auto name = directive_name(name_text);
  if (!name) return std::nullopt;
  cursor.skip_space();
  if (!cursor.consume('(')) return std::nullopt;

  auto args = strict_args(cursor);
  if (!args && directive_arity(*name) == 1) {
    if (auto single = lenient_single_arg(cursor.rest())) args = std::vector{std::move(*single)};
  }
  if (!args || args->size() != directive_arity(*name)) return std::nullopt;

  switch (*name) {
    case DirectiveName::kAddRelated: {
      auto object = std::string(util::trim((*args)[0]));
      if (object.empty()) return std::nullopt;
      return AddRelatedObjects{std::move(object)};
    }
    case DirectiveName::kUpdateState: {
      auto object = std::string(util::trim((*args)[0]));
      if (object.empty()) return std::nullopt;
      return UpdateState{std::move(object), split_attributes((*args)[1])};
    }
    case DirectiveName::kUpdateReasoning:
      return UpdateReasoning{std::move((*args)[0])};
  }
  return std::nullopt;
}

// "N." or "N)" prefix; returns false if absent.
bool consume_step_number(Cursor& cursor) {
  bool digits = false;
  while (!cursor.done() && std::isdigit(static_cast<unsigned char>(cursor.peek())) != 0) {
    cursor.consume(cursor.peek());
    digits = true;
  }
  if (!digits) return false;
  return cursor.consume('.') || cursor.consume(')');
}

std::optional<std::string> plan_arg(Cursor& cursor) {
  cursor.skip_space();
  if (cursor.peek() == '"' || cursor.peek() == '\'') {
    auto arg = cursor.quoted();
    if (!arg) return std::nullopt;
    cursor.skip_space();
    return std::string(util::trim(*arg));
  }
  std::string out;
  while (!cursor.done()) {
    const char c = cursor.peek();
    if (c == ',' || c == ')' || c == '(' || c == '"' || c == '\'') break;
    out.push_back(c);
    cursor.consume(c);
  }
  return std::string(util::trim(out));
}

bool is_trailing_comment(std::string_view rest) {
  rest = util::trim(rest);
  if (rest.empty()) return true;
  if (rest.front() == '#' || rest.substr(0, 2) == "//") return true;
  return rest.front() == '(' && rest.back() == ')';
}

std::optional<PrimitiveAction> parse_plan_line(std::string_view line) {
  Cursor cursor(line);
  cursor.skip_space();
  if (!consume_step_number(cursor)) return std::nullopt;
  cursor.skip_space();
  const auto kind = action_kind_from_string(cursor.identifier());
  if (!kind) return std::nullopt;
  cursor.skip_space();
  if (!cursor.consume('(')) return std::nullopt;

  std::vector<std::string> args;
  cursor.skip_space();
  if (!cursor.consume(')')) {
    while (true) {
      auto arg = plan_arg(cursor);
      if (!arg || arg->empty()) return std::nullopt;
      args.push_back(std::move(*arg));
      if (cursor.consume(',')) continue;
      if (cursor.consume(')')) break;
      return std::nullopt;
    }
  }
  if (!is_trailing_comment(cursor.rest())) return std::nullopt;
  if (args.size() != arity(*kind)) return std::nullopt;
  return PrimitiveAction{*kind, std::move(args)};
}

}  // namespace

ParsedDirectives parse_directives(std::string_view text) {
  ParsedDirectives result;
  for_each_line(text, [&](std::string_view line) {
    if (util::trim(line).empty()) return;
    if (auto directive = parse_directive_line(line)) {
      result.directives.push_back(std::move(*directive));
    } else {
      ++result.skipped_lines;
    }
  });
  return result;
}

ParsedPlan parse_plan(std::string_view text) {
  ParsedPlan result;
  for_each_line(text, [&](std::string_view line) {
    const auto trimmed = util::trim(line);
    if (trimmed.empty() || trimmed == kPlanHeader) return;
    if (auto action = parse_plan_line(line)) {
      result.actions.push_back(std::move(*action));
    } else {
      ++result.skipped_lines;
    }
  });
  return result;
}

std::string render_plan(const std::vector<PrimitiveAction>& plan) {
  std::string out(kPlanHeader);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    out += "\n" + std::to_string(i + 1) + ". " + to_string(plan[i]);
  }
  return out;
}

}  // namespace llmstate::dsl
