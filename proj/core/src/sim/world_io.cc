#include "llmstate/sim/world_io.h"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "llmstate/errors.h"

namespace llmstate::sim {
namespace {

using Json = nlohmann::ordered_json;

const std::regex& id_pattern() {
  static const std::regex pattern("^([a-z_]*[a-z_])([1-9][0-9]*)$");
  return pattern;
}

[[noreturn]] void schema_error(const std::string& what) { throw SchemaError("world: " + what); }
[[noreturn]] void consistency_error(const std::string& what) {
  throw ConsistencyError("world: " + what);
}

const Json& require(const Json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) schema_error(where + ": missing field '" + key + "'");
  return node.at(key);
}

std::string as_string(const Json& node, const std::string& where) {
  if (!node.is_string()) schema_error(where + ": expected string");
  return node.get<std::string>();
}

bool as_bool(const Json& node, const char* key, bool fallback, const std::string& where) {
  if (!node.contains(key)) return fallback;
  const auto& value = node.at(key);
  if (!value.is_boolean()) schema_error(where + ": '" + key + "' must be boolean");
  return value.get<bool>();
}

std::vector<std::string> as_string_list(const Json& node, const std::string& where) {
  if (!node.is_array()) schema_error(where + ": expected array of strings");
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(as_string(item, where));
  return out;
}

std::string class_of_id(const std::string& id, const std::string& where) {
  std::smatch match;
  if (!std::regex_match(id, match, id_pattern())) {
    schema_error(where + ": id '" + id + "' must be a class name followed by a positive integer");
  }
  return match[1].str();
}

dsl::ActionKind parse_trigger(const std::string& text, const std::string& where) {
  const auto kind = dsl::action_kind_from_string(text);
  if (!kind || (*kind != dsl::ActionKind::kSwitchOn && *kind != dsl::ActionKind::kSwitchOff &&
                *kind != dsl::ActionKind::kOpen && *kind != dsl::ActionKind::kClose)) {
    schema_error(where + ": trigger must be one of switchon/switchoff/open/close");
  }
  return *kind;
}

const std::set<std::string>& known_object_keys() {
  static const std::set<std::string> keys = {
      "id",          "class",      "placement", "graspable", "openable", "switchable",
      "is_container", "is_surface", "open",      "on",        "capacity", "latent",
      "lists"};
  return keys;
}

ObjectInstance parse_object(const Json& node, std::size_t position) {
  const std::string where = "objects[" + std::to_string(position) + "]";
  if (!node.is_object()) schema_error(where + ": expected object");
  for (const auto& [key, _] : node.items()) {
    if (!known_object_keys().contains(key)) schema_error(where + ": unknown field '" + key + "'");
  }

  ObjectInstance object;
  object.id = as_string(require(node, "id", where), where);
  const auto derived_class = class_of_id(object.id, where);
  object.cls = node.contains("class") ? as_string(node.at("class"), where) : derived_class;
  if (object.cls != derived_class) {
    schema_error(where + ": class '" + object.cls + "' does not match id '" + object.id + "'");
  }

  const auto& placement = require(node, "placement", where);
  const auto rel = as_string(require(placement, "rel", where + ".placement"), where);
  if (rel == "IN") {
    object.placement.relation = Relation::kIn;
  } else if (rel == "ON") {
    object.placement.relation = Relation::kOn;
  } else {
    schema_error(where + ".placement: rel must be IN or ON");
  }
  object.placement.parent = as_string(require(placement, "parent", where + ".placement"), where);

  object.graspable = as_bool(node, "graspable", false, where);
  object.openable = as_bool(node, "openable", false, where);
  object.switchable = as_bool(node, "switchable", false, where);
  object.is_container = as_bool(node, "is_container", false, where);
  object.is_surface = as_bool(node, "is_surface", false, where);
  object.is_open = as_bool(node, "open", false, where);
  object.is_on = as_bool(node, "on", false, where);
  if (object.is_open && !object.openable) schema_error(where + ": 'open' requires openable");
  if (object.is_on && !object.switchable) schema_error(where + ": 'on' requires switchable");

  if (node.contains("capacity")) {
    const auto& capacity = node.at("capacity");
    if (capacity.is_number_integer()) {
      if (capacity.get<int>() < 0) schema_error(where + ": capacity must be non-negative");
      object.capacity = capacity.get<int>();
    } else if (!(capacity.is_null() || (capacity.is_string() && capacity == "unlimited"))) {
      schema_error(where + ": capacity must be an integer, null or \"unlimited\"");
    }
  }

  if (node.contains("latent")) {
    const auto& latent = node.at("latent");
    if (!latent.is_object()) schema_error(where + ": latent must be an object");
    for (const auto& [key, value] : latent.items()) {
      object.latent[key] = as_string(value, where + ".latent." + key);
    }
  }

  if (node.contains("lists")) {
    object.lists = kListNone;
    for (const auto& name : as_string_list(node.at("lists"), where + ".lists")) {
      if (name == "object") {
        object.lists |= kListObject;
      } else if (name == "container") {
        object.lists |= kListContainer;
      } else if (name == "surface") {
        object.lists |= kListSurface;
      } else {
        schema_error(where + ".lists: unknown list '" + name + "'");
      }
    }
  } else {
    object.lists = kListNone;
    if (object.is_container) object.lists |= kListContainer;
    if (object.is_surface) object.lists |= kListSurface;
    if (!object.is_container && !object.is_surface) object.lists |= kListObject;
  }
  return object;
}

EffectRule parse_rule(const Json& node, std::size_t position) {
  const std::string where = "effect_rules[" + std::to_string(position) + "]";
  EffectRule rule;
  rule.device_class = as_string(require(node, "device_class", where), where);
  rule.trigger = parse_trigger(as_string(require(node, "trigger", where), where), where);
  if (node.contains("condition")) {
    const auto& condition = node.at("condition");
    if (condition.contains("class")) rule.content_class = as_string(condition.at("class"), where);
    rule.requires_contents = as_bool(condition, "requires_contents", true, where);
  }
  if (node.contains("apply_to")) {
    rule.apply_to_contents = false;
    rule.apply_to_device = false;
    for (const auto& target : as_string_list(node.at("apply_to"), where + ".apply_to")) {
      if (target == "contents") {
        rule.apply_to_contents = true;
      } else if (target == "device") {
        rule.apply_to_device = true;
      } else {
        schema_error(where + ".apply_to: expected 'contents' or 'device'");
      }
    }
  }
  const auto& set = require(node, "set", where);
  if (!set.is_object() || set.empty()) schema_error(where + ": 'set' must be a non-empty object");
  for (const auto& [key, value] : set.items()) rule.set[key] = as_string(value, where + ".set");
  return rule;
}

void check_consistency(const WorldModel& world) {
  for (const auto& object : world.objects) {
    const auto& parent_id = object.placement.parent;
    if (parent_id == object.id) consistency_error("'" + object.id + "' is placed in itself");
    if (world.is_room(parent_id)) {
      if (object.placement.relation != Relation::kIn) {
        consistency_error("'" + object.id + "' can only be IN a room");
      }
      continue;
    }
    const ObjectInstance* parent = world.find(parent_id);
    if (parent == nullptr) {
      consistency_error("'" + object.id + "' has unknown parent '" + parent_id + "'");
    }
    if (object.placement.relation == Relation::kIn && !parent->is_container) {
      consistency_error("'" + object.id + "' is IN '" + parent_id + "' which is not a container");
    }
    if (object.placement.relation == Relation::kOn && !parent->is_surface) {
      consistency_error("'" + object.id + "' is ON '" + parent_id + "' which is not a surface");
    }
  }

  // Every chain must reach a room within |objects| hops.
  for (const auto& object : world.objects) {
    const ObjectInstance* current = &object;
    std::size_t hops = 0;
    while (!world.is_room(current->placement.parent)) {
      current = world.find(current->placement.parent);
      if (++hops > world.objects.size()) {
        consistency_error("cyclic placement involving '" + object.id + "'");
      }
    }
  }

  for (const auto& object : world.objects) {
    if (object.is_container && object.capacity &&
        world.direct_contents_count(object.id) > *object.capacity) {
      consistency_error("'" + object.id + "' holds more objects than its capacity");
    }
  }

  for (const auto& id : world.robot.close_to) {
    const ObjectInstance* object = world.find(id);
    if (object == nullptr || !world.is_visible(*object) ||
        world.room_of(*object) != world.robot.current_room) {
      consistency_error("robot.close_to entry '" + id + "' is not visible in the start room");
    }
  }
}

Json object_to_json(const ObjectInstance& object) {
  Json node;
  node["id"] = object.id;
  node["class"] = object.cls;
  node["placement"] = {{"rel", std::string(to_string(object.placement.relation))},
                       {"parent", object.placement.parent}};
  node["graspable"] = object.graspable;
  node["openable"] = object.openable;
  node["switchable"] = object.switchable;
  node["is_container"] = object.is_container;
  node["is_surface"] = object.is_surface;
  node["open"] = object.is_open;
  node["on"] = object.is_on;
  node["capacity"] = object.capacity ? Json(*object.capacity) : Json(nullptr);
  node["latent"] = Json::object();
  for (const auto& [key, value] : object.latent) node["latent"][key] = value;
  Json lists = Json::array();
  if (object.lists & kListObject) lists.push_back("object");
  if (object.lists & kListContainer) lists.push_back("container");
  if (object.lists & kListSurface) lists.push_back("surface");
  node["lists"] = lists;
  return node;
}

}  // namespace

WorldModel load_world(std::string_view document) {
  Json root;
  try {
    root = Json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    schema_error(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("document must be a JSON object");
  if (root.contains("version") && root.at("version") != 1) schema_error("unsupported version");

  WorldModel world;
  world.rooms = as_string_list(require(root, "rooms", "document"), "rooms");
  if (world.rooms.empty()) schema_error("rooms must not be empty");
  std::set<std::string> ids;
  for (const auto& room : world.rooms) {
    class_of_id(room, "rooms");
    if (!ids.insert(room).second) schema_error("duplicate id '" + room + "'");
  }

  const auto& robot = require(root, "robot", "document");
  world.robot.current_room = as_string(require(robot, "start_room", "robot"), "robot.start_room");
  if (!world.is_room(world.robot.current_room)) {
    consistency_error("start_room '" + world.robot.current_room + "' is not a room");
  }
  if (robot.contains("hand_capacity")) {
    const auto& capacity = robot.at("hand_capacity");
    if (!capacity.is_number_integer() || capacity.get<int>() < 1) {
      schema_error("robot.hand_capacity must be a positive integer");
    }
    world.hand_capacity = capacity.get<int>();
  }
  world.interaction_needs_free_hand = as_bool(robot, "interaction_needs_free_hand", true, "robot");
  world.robot.visited_rooms = {world.robot.current_room};
  if (robot.contains("visited_rooms")) {
    world.robot.visited_rooms = as_string_list(robot.at("visited_rooms"), "robot.visited_rooms");
    for (const auto& room : world.robot.visited_rooms) {
      if (!world.is_room(room)) consistency_error("visited room '" + room + "' is not a room");
    }
  }
  if (robot.contains("close_to")) {
    world.robot.close_to = as_string_list(robot.at("close_to"), "robot.close_to");
  }

  if (root.contains("observation")) {
    const auto scope = as_string(require(root.at("observation"), "scope", "observation"),
                                 "observation.scope");
    if (scope == "current_room") {
      world.observation_scope = ObservationScope::kCurrentRoom;
    } else if (scope == "visited_rooms") {
      world.observation_scope = ObservationScope::kVisitedRooms;
    } else {
      schema_error("observation.scope must be current_room or visited_rooms");
    }
  }

  if (root.contains("objects")) {
    const auto& objects = root.at("objects");
    if (!objects.is_array()) schema_error("objects must be an array");
    for (std::size_t i = 0; i < objects.size(); ++i) {
      auto object = parse_object(objects[i], i);
      if (!ids.insert(object.id).second) schema_error("duplicate id '" + object.id + "'");
      world.objects.push_back(std::move(object));
    }
  }
  world.reindex();

  if (root.contains("effect_rules")) {
    const auto& rules = root.at("effect_rules");
    if (!rules.is_array()) schema_error("effect_rules must be an array");
    for (std::size_t i = 0; i < rules.size(); ++i) world.effect_rules.push_back(parse_rule(rules[i], i));
  }

  check_consistency(world);
  return world;
}

WorldModel load_world_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("world: cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_world(buffer.str());
}

std::string dump_world(const WorldModel& world) {
  Json root;
  root["format"] = "llmstate-world";
  root["version"] = 1;
  root["rooms"] = world.rooms;
  root["robot"] = {{"current_room", world.robot.current_room},
                   {"hand_capacity", world.hand_capacity},
                   {"interaction_needs_free_hand", world.interaction_needs_free_hand},
                   {"close_to", world.robot.close_to},
                   {"holding", world.robot.holding},
                   {"visited_rooms", world.robot.visited_rooms}};
  root["observation"] = {{"scope", world.observation_scope == ObservationScope::kCurrentRoom
                                       ? "current_room"
                                       : "visited_rooms"}};
  root["objects"] = Json::array();
  for (const auto& object : world.objects) root["objects"].push_back(object_to_json(object));
  root["effect_rules"] = Json::array();
  for (const auto& rule : world.effect_rules) {
    Json node;
    node["device_class"] = rule.device_class;
    node["trigger"] = std::string(dsl::to_string(rule.trigger));
    node["condition"] = {{"class", rule.content_class}, {"requires_contents", rule.requires_contents}};
    Json apply = Json::array();
    if (rule.apply_to_contents) apply.push_back("contents");
    if (rule.apply_to_device) apply.push_back("device");
    node["apply_to"] = apply;
    node["set"] = Json::object();
    for (const auto& [key, value] : rule.set) node["set"][key] = value;
    root["effect_rules"].push_back(node);
  }
  root["step_count"] = world.step_count;
  return root.dump(2);
}

}  // namespace llmstate::sim
