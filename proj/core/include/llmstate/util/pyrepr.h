#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace llmstate::util {

// Python's repr() of a str: single quotes unless the text contains a single
// quote and no double quote.
std::string py_repr(std::string_view text);

// Python's repr() of a list of str, e.g. "['a', 'b']" or "[]".
std::string py_list_repr(const std::vector<std::string>& items);

std::string_view trim(std::string_view text);

}  // namespace llmstate::util
