#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llmstate/sim/world.h"

namespace llmstate::sim {

// Selects objects either by exact id or by class; class "any" matches all.
struct ObjectSelector {
  enum class By { kId, kClass };
  By by = By::kId;
  std::string value;

  static ObjectSelector id(std::string value) { return {By::kId, std::move(value)}; }
  static ObjectSelector cls(std::string value) { return {By::kClass, std::move(value)}; }

  bool matches(const ObjectInstance& object) const;
  bool matches(std::string_view object_id, const WorldModel& world) const;

  friend bool operator==(const ObjectSelector&, const ObjectSelector&) = default;
};

// Subject placed directly in (ObjectIn) or on (ObjectOn) a matching target.
struct ObjectIn {
  ObjectSelector subject;
  ObjectSelector target;
  friend bool operator==(const ObjectIn&, const ObjectIn&) = default;
};
struct ObjectOn {
  ObjectSelector subject;
  ObjectSelector target;
  friend bool operator==(const ObjectOn&, const ObjectOn&) = default;
};
struct Switched {
  std::string id;
  bool on = false;
  friend bool operator==(const Switched&, const Switched&) = default;
};
struct ContainerOpen {
  std::string id;
  bool open = true;
  friend bool operator==(const ContainerOpen&, const ContainerOpen&) = default;
};
struct AttributeIs {
  std::string id;
  std::string key;
  std::string value;
  friend bool operator==(const AttributeIs&, const AttributeIs&) = default;
};

enum class Comparator { kGreaterEqual, kLessEqual, kEqual };
enum class CountRelation { kIn, kOn, kAnywhere };

// Number of subject objects in/on the target (or anywhere), optionally
// restricted to those whose latent attributes match `where`.
struct Count {
  CountRelation relation = CountRelation::kOn;
  ObjectSelector subject;
  ObjectSelector target;  // unused for kAnywhere
  std::map<std::string, std::string> where;
  Comparator comparator = Comparator::kGreaterEqual;
  int n = 0;
  friend bool operator==(const Count&, const Count&) = default;
};

using GoalAtom = std::variant<ObjectIn, ObjectOn, Switched, ContainerOpen, AttributeIs, Count>;

// Conjunction of atoms; an empty conjunction is satisfied.
struct GoalPredicate {
  std::vector<GoalAtom> atoms;
  friend bool operator==(const GoalPredicate&, const GoalPredicate&) = default;
};

bool check_atom(const WorldModel& world, const GoalAtom& atom);
// Evaluated against ground truth; unknown ids make an atom unsatisfied.
bool check_goal(const WorldModel& world, const GoalPredicate& goal);

int count_matching(const WorldModel& world, const Count& count);
bool compare(int value, Comparator comparator, int n);

// Goal JSON: {"all": [atom, ...]} where each atom is one of
//   {"type": "object_in" | "object_on", "id"|"class": ..., "target"|"target_class": ...}
//   {"type": "switched", "id": ..., "value": "on"|"off"}
//   {"type": "container_open", "id": ..., "value": true|false}
//   {"type": "attribute_is", "id": ..., "key": ..., "value": ...}
//   {"type": "count_in" | "count_on" | "count_anywhere", "class": ...|"any",
//    "target"|"target_class": ..., "cmp": ">="|"<="|"==", "n": int,
//    "where": {key: value}}
// Throws SchemaError on malformed input.
GoalPredicate parse_goal(std::string_view json_text);
std::string goal_to_json(const GoalPredicate& goal);

}  // namespace llmstate::sim
