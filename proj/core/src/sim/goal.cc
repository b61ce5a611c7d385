#include "llmstate/sim/goal.h"

#include <algorithm>

#include "json.hpp"
#include "llmstate/errors.h"

namespace llmstate::sim {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void goal_error(const std::string& what) { throw SchemaError("goal: " + what); }

bool placed(const WorldModel& world, const ObjectSelector& subject, const ObjectSelector& target,
            Relation relation) {
  return std::any_of(world.objects.begin(), world.objects.end(), [&](const ObjectInstance& o) {
    return subject.matches(o) && o.placement.relation == relation &&
           target.matches(o.placement.parent, world);
  });
}

ObjectSelector parse_selector(const Json& node, const char* id_key, const char* class_key,
                              const std::string& where) {
  if (node.contains(id_key) && node.at(id_key).is_string()) {
    return ObjectSelector::id(node.at(id_key).get<std::string>());
  }
  if (node.contains(class_key) && node.at(class_key).is_string()) {
    return ObjectSelector::cls(node.at(class_key).get<std::string>());
  }
  goal_error(where + ": expected '" + id_key + "' or '" + class_key + "'");
}

void selector_to_json(Json& node, const ObjectSelector& selector, const char* id_key,
                      const char* class_key) {
  node[selector.by == ObjectSelector::By::kId ? id_key : class_key] = selector.value;
}

std::string require_string(const Json& node, const char* key, const std::string& where) {
  if (!node.contains(key) || !node.at(key).is_string()) {
    goal_error(where + ": missing string field '" + key + "'");
  }
  return node.at(key).get<std::string>();
}

Comparator parse_comparator(const std::string& text, const std::string& where) {
  if (text == ">=") return Comparator::kGreaterEqual;
  if (text == "<=") return Comparator::kLessEqual;
  if (text == "==") return Comparator::kEqual;
  goal_error(where + ": cmp must be >=, <= or ==");
}

const char* comparator_text(Comparator comparator) {
  switch (comparator) {
    case Comparator::kGreaterEqual: return ">=";
    case Comparator::kLessEqual: return "<=";
    case Comparator::kEqual: return "==";
  }
  return "?";
}

GoalAtom parse_atom(const Json& node, std::size_t position) {
  const std::string where = "atom " + std::to_string(position);
  if (!node.is_object()) goal_error(where + ": expected object");
  const auto type = require_string(node, "type", where);
  if (type == "object_in" || type == "object_on") {
    auto subject = parse_selector(node, "id", "class", where);
    auto target = parse_selector(node, "target", "target_class", where);
    if (type == "object_in") return ObjectIn{std::move(subject), std::move(target)};
    return ObjectOn{std::move(subject), std::move(target)};
  }
  if (type == "switched") {
    const auto value = require_string(node, "value", where);
    if (value != "on" && value != "off") goal_error(where + ": value must be on or off");
    return Switched{require_string(node, "id", where), value == "on"};
  }
  if (type == "container_open") {
    if (!node.contains("value") || !node.at("value").is_boolean()) {
      goal_error(where + ": value must be boolean");
    }
    return ContainerOpen{require_string(node, "id", where), node.at("value").get<bool>()};
  }
  if (type == "attribute_is") {
    return AttributeIs{require_string(node, "id", where), require_string(node, "key", where),
                       require_string(node, "value", where)};
  }
  if (type == "count_in" || type == "count_on" || type == "count_anywhere") {
    Count count;
    count.relation = type == "count_in"   ? CountRelation::kIn
                     : type == "count_on" ? CountRelation::kOn
                                          : CountRelation::kAnywhere;
    count.subject = ObjectSelector::cls(require_string(node, "class", where));
    if (count.relation != CountRelation::kAnywhere) {
      count.target = parse_selector(node, "target", "target_class", where);
    }
    count.comparator = parse_comparator(require_string(node, "cmp", where), where);
    if (!node.contains("n") || !node.at("n").is_number_integer()) {
      goal_error(where + ": n must be an integer");
    }
    count.n = node.at("n").get<int>();
    if (node.contains("where")) {
      for (const auto& [key, value] : node.at("where").items()) {
        if (!value.is_string()) goal_error(where + ": where values must be strings");
        count.where[key] = value.get<std::string>();
      }
    }
    return count;
  }
  goal_error(where + ": unknown type '" + type + "'");
}

Json atom_to_json(const GoalAtom& atom) {
  Json node;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ObjectIn> || std::is_same_v<T, ObjectOn>) {
          node["type"] = std::is_same_v<T, ObjectIn> ? "object_in" : "object_on";
          selector_to_json(node, a.subject, "id", "class");
          selector_to_json(node, a.target, "target", "target_class");
        } else if constexpr (std::is_same_v<T, Switched>) {
          node["type"] = "switched";
          node["id"] = a.id;
          node["value"] = a.on ? "on" : "off";
        } else if constexpr (std::is_same_v<T, ContainerOpen>) {
          node["type"] = "container_open";
          node["id"] = a.id;
          node["value"] = a.open;
        } else if constexpr (std::is_same_v<T, AttributeIs>) {
          node["type"] = "attribute_is";
          node["id"] = a.id;
          node["key"] = a.key;
          node["value"] = a.value;
        } else {
          node["type"] = a.relation == CountRelation::kIn   ? "count_in"
                         : a.relation == CountRelation::kOn ? "count_on"
                                                            : "count_anywhere";
          node["class"] = a.subject.value;
          if (a.relation != CountRelation::kAnywhere) {
            selector_to_json(node, a.target, "target", "target_class");
          }
          node["cmp"] = comparator_text(a.comparator);
          node["n"] = a.n;
          if (!a.where.empty()) {
            node["where"] = Json::object();
            for (const auto& [key, value] : a.where) node["where"][key] = value;
          }
        }
      },
      atom);
  return node;
}

}  // namespace

bool ObjectSelector::matches(const ObjectInstance& object) const {
  if (by == By::kId) return object.id == value;
  return value == "any" || object.cls == value;
}

bool ObjectSelector::matches(std::string_view object_id, const WorldModel& world) const {
  if (by == By::kId) return object_id == value;
  const ObjectInstance* object = world.find(object_id);
  return object != nullptr && matches(*object);
}

bool compare(int value, Comparator comparator, int n) {
  switch (comparator) {
    case Comparator::kGreaterEqual: return value >= n;
    case Comparator::kLessEqual: return value <= n;
    case Comparator::kEqual: return value == n;
  }
  return false;
}

int count_matching(const WorldModel& world, const Count& count) {
  int total = 0;
  for (const auto& object : world.objects) {
    if (!count.subject.matches(object)) continue;
    const bool attributes_match =
        std::all_of(count.where.begin(), count.where.end(), [&](const auto& kv) {
          const auto it = object.latent.find(kv.first);
          return it != object.latent.end() && it->second == kv.second;
        });
    if (!attributes_match) continue;
    switch (count.relation) {
      case CountRelation::kAnywhere: ++total; break;
      case CountRelation::kIn:
      case CountRelation::kOn: {
        const auto relation = count.relation == CountRelation::kIn ? Relation::kIn : Relation::kOn;
        if (object.placement.relation == relation &&
            count.target.matches(object.placement.parent, world)) {
          ++total;
        }
        break;
      }
    }
  }
  return total;
}

bool check_atom(const WorldModel& world, const GoalAtom& atom) {
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ObjectIn>) {
          return placed(world, a.subject, a.target, Relation::kIn);
        } else if constexpr (std::is_same_v<T, ObjectOn>) {
          return placed(world, a.subject, a.target, Relation::kOn);
        } else if constexpr (std::is_same_v<T, Switched>) {
          const ObjectInstance* o = world.find(a.id);
          return o != nullptr && o->switchable && o->is_on == a.on;
        } else if constexpr (std::is_same_v<T, ContainerOpen>) {
          const ObjectInstance* o = world.find(a.id);
          return o != nullptr && o->openable && o->is_open == a.open;
        } else if constexpr (std::is_same_v<T, AttributeIs>) {
          const ObjectInstance* o = world.find(a.id);
          if (o == nullptr) return false;
          const auto it = o->latent.find(a.key);
          return it != o->latent.end() && it->second == a.value;
        } else {
          return compare(count_matching(world, a), a.comparator, a.n);
        }
      },
      atom);
}

bool check_goal(const WorldModel& world, const GoalPredicate& goal) {
  return std::all_of(goal.atoms.begin(), goal.atoms.end(),
                     [&](const GoalAtom& atom) { return check_atom(world, atom); });
}

GoalPredicate parse_goal(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    goal_error(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("all") || !root.at("all").is_array()) {
    goal_error("expected {\"all\": [...]}");
  }
  GoalPredicate goal;
  const auto& atoms = root.at("all");
  for (std::size_t i = 0; i < atoms.size(); ++i) goal.atoms.push_back(parse_atom(atoms[i], i));
  return goal;
}

std::string goal_to_json(const GoalPredicate& goal) {
  Json root;
  root["all"] = Json::array();
  for (const auto& atom : goal.atoms) root["all"].push_back(atom_to_json(atom));
  return root.dump();
}

}  // namespace llmstate::sim
