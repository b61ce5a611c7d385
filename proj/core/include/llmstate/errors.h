#pragma once

#include <stdexcept>
#include <string>

namespace llmstate {

// World documents that are malformed: missing fields, wrong types, duplicate
// or badly formed ids.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed documents that describe an impossible world: cyclic placement,
// dangling parents, over-capacity containers.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace llmstate
