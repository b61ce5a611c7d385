#include "llmstate/prompts/template.h"

#include <set>
#include <stdexcept>

namespace llmstate::prompts {

namespace templates {
extern const std::string_view k_attention;
extern const std::string_view k_estimator;
extern const std::string_view k_policy;
}  // namespace templates

std::string render_template(std::string_view text, const SlotList& slots) {
  std::string out;
  out.reserve(text.size() * 2);
  std::set<std::string> used;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, open - pos));
    const auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder");
    const std::string name(text.substr(open + 2, close - open - 2));
    bool found = false;
    for (const auto& [slot, value] : slots) {
      if (slot == name) {
        out += value;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("no value for placeholder '" + name + "'");
    used.insert(name);
    pos = close + 2;
  }
  for (const auto& [slot, _] : slots) {
    if (!used.contains(slot)) throw std::invalid_argument("slot '" + slot + "' is not in the template");
  }
  return out;
}

std::string_view attention_template() { return templates::k_attention; }
std::string_view estimator_template() { return templates::k_estimator; }
std::string_view policy_template() { return templates::k_policy; }

}  // namespace llmstate::prompts
