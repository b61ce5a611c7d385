#include "llmstate/sim/simulator.h"

#include <algorithm>

#include "llmstate/util/pyrepr.h"

namespace llmstate::sim {
namespace {

using dsl::ActionKind;

bool contains(const std::vector<std::string>& items, std::string_view id) {
  return std::find(items.begin(), items.end(), id) != items.end();
}

ActionOutcome fail(const char* reason) { return ActionOutcome{false, reason}; }
ActionOutcome ok() { return ActionOutcome{true, {}}; }

bool hands_full(const WorldModel& world) {
  return static_cast<int>(world.robot.holding.size()) >= world.hand_capacity;
}

bool interaction_blocked(const WorldModel& world) {
  return world.interaction_needs_free_hand && hands_full(world);
}

void fire_effect_rules(WorldModel& world, ObjectInstance& device, ActionKind trigger) {
  for (const auto& rule : world.effect_rules) {
    if (rule.device_class != device.cls || rule.trigger != trigger) continue;
    std::vector<std::string> matching;
    for (const ObjectInstance* content : world.descendants(device.id)) {
      if (rule.content_class == "any" || rule.content_class == content->cls) {
        matching.push_back(content->id);
      }
    }
    if (rule.requires_contents && matching.empty()) continue;
    if (rule.apply_to_contents) {
      for (const auto& id : matching) {
        for (const auto& [key, value] : rule.set) world.find(id)->latent[key] = value;
      }
    }
    if (rule.apply_to_device) {
      for (const auto& [key, value] : rule.set) device.latent[key] = value;
    }
  }
}

void enter_room(WorldModel& world, const std::string& room) {
  world.robot.current_room = room;
  if (!contains(world.robot.visited_rooms, room)) world.robot.visited_rooms.push_back(room);
}

ActionOutcome do_move(WorldModel& world, const std::string& target) {
  if (world.is_room(target)) {
    enter_room(world, target);
    world.robot.close_to.clear();
    return ok();
  }
  const ObjectInstance* object = world.find(target);
  if (object == nullptr) return fail("not_found");
  if (world.is_enclosed(*object)) return fail("enclosed");
  if (!world.is_held(*object)) enter_room(world, world.room_of(*object));

  std::vector<std::string> close_to = {object->id};
  for (const ObjectInstance* child : world.descendants(object->id)) {
    if (!world.is_enclosed(*child) && !world.is_held(*child)) close_to.push_back(child->id);
  }
  world.robot.close_to = std::move(close_to);
  return ok();
}

ActionOutcome do_pickup(WorldModel& world, const std::string& target) {
  ObjectInstance* object = world.find(target);
  if (object == nullptr) return fail("not_found");
  if (!contains(world.robot.close_to, target)) return fail("not_close");
  if (world.is_held(*object)) return fail("already_held");
  if (!object->graspable) return fail("not_graspable");
  if (hands_full(world)) return fail("hands_full");
  object->placement = Placement{Relation::kHeld, {}};
  world.robot.holding.push_back(object->id);
  return ok();
}

ActionOutcome do_place(WorldModel& world, const std::string& item_id, const std::string& target_id,
                       Relation relation) {
  ObjectInstance* item = world.find(item_id);
  if (item == nullptr) return fail("not_found");
  if (!contains(world.robot.holding, item_id)) return fail("not_holding");
  const ObjectInstance* target = world.find(target_id);
  if (target == nullptr) return fail("not_found");
  if (!contains(world.robot.close_to, target_id)) return fail("not_close");
  if (world.is_descendant_of(*target, item_id)) return fail("invalid_target");
  if (relation == Relation::kIn) {
    if (!target->is_container) return fail("not_container");
    if (target->openable && !target->is_open) return fail("closed_container");
    if (target->capacity && world.direct_contents_count(target_id) >= *target->capacity) {
      return fail("capacity_full");
    }
  } else if (!target->is_surface) {
    return fail("not_surface");
  }
  item->placement = Placement{relation, target_id};
  std::erase(world.robot.holding, item_id);
  if (!contains(world.robot.close_to, item_id)) world.robot.close_to.push_back(item_id);
  return ok();
}

ActionOutcome do_open_close(WorldModel& world, const std::string& target, bool open,
                            ActionKind kind) {
  ObjectInstance* object = world.find(target);
  if (object == nullptr) return fail("not_found");
  if (!contains(world.robot.close_to, target)) return fail("not_close");
  if (!object->openable) return fail("not_openable");
  if (object->is_open == open) return fail("no_state_change");
  if (interaction_blocked(world)) return fail("hands_full");
  object->is_open = open;
  if (!open) {
    auto& close_to = world.robot.close_to;
    close_to.erase(std::remove_if(close_to.begin(), close_to.end(),
                                  [&](const std::string& id) {
                                    const ObjectInstance* o = world.find(id);
                                    return o != nullptr && world.is_enclosed(*o);
                                  }),
                   close_to.end());
  }
  fire_effect_rules(world, *object, kind);
  return ok();
}

ActionOutcome do_switch(WorldModel& world, const std::string& target, bool on, ActionKind kind) {
  ObjectInstance* object = world.find(target);
  if (object == nullptr) return fail("not_found");
  if (!contains(world.robot.close_to, target)) return fail("not_close");
  if (!object->switchable) return fail("not_switchable");
  if (object->is_on == on) return fail("no_state_change");
  if (interaction_blocked(world)) return fail("hands_full");
  object->is_on = on;
  fire_effect_rules(world, *object, kind);
  return ok();
}

ActionOutcome dispatch(WorldModel& world, const dsl::PrimitiveAction& action) {
  if (action.args.size() != dsl::arity(action.kind)) return fail("bad_arity");
  const auto& args = action.args;
  switch (action.kind) {
    case ActionKind::kMove: return do_move(world, args[0]);
    case ActionKind::kPickup: return do_pickup(world, args[0]);
    case ActionKind::kPlaceIn: return do_place(world, args[0], args[1], Relation::kIn);
    case ActionKind::kPlaceOn: return do_place(world, args[0], args[1], Relation::kOn);
    case ActionKind::kOpen: return do_open_close(world, args[0], true, action.kind);
    case ActionKind::kClose: return do_open_close(world, args[0], false, action.kind);
    case ActionKind::kSwitchOn: return do_switch(world, args[0], true, action.kind);
    case ActionKind::kSwitchOff: return do_switch(world, args[0], false, action.kind);
    case ActionKind::kWait: return ok();
  }
  return fail("unknown_action");
}

}  // namespace

Observation observe(const WorldModel& world) {
  Observation observation;
  for (const auto& object : world.objects) {
    if (!world.is_visible(object)) continue;
    std::string entry = object.id;
    entry += ' ';
    entry += to_string(object.placement.relation);
    entry += ' ';
    entry += object.placement.parent;
    if (object.lists & kListObject) observation.object_entries.push_back(entry);
    if (object.lists & kListContainer) observation.container_entries.push_back(entry);
    if (object.lists & kListSurface) observation.surface_entries.push_back(entry);
  }
  observation.room_list = world.rooms;
  observation.holding = world.robot.holding;
  observation.close_to = world.robot.close_to;
  observation.current_room = world.robot.current_room;
  return observation;
}

std::string render_observation_tail(const Observation& observation) {
  std::string out;
  out += "Room List: " + util::py_list_repr(observation.room_list) + "\n";
  out += "Current Holding: " + util::py_list_repr(observation.holding) + "\n";
  out += "You are closed to: " + util::py_list_repr(observation.close_to) + "\n";
  out += "Current Room: " + observation.current_room;
  return out;
}

std::string render_observation(const Observation& observation) {
  std::string out;
  out += "Object List: " + util::py_list_repr(observation.object_entries) + "\n";
  out += "Container List: " + util::py_list_repr(observation.container_entries) + "\n";
  out += "Surface List: " + util::py_list_repr(observation.surface_entries) + "\n";
  out += render_observation_tail(observation);
  return out;
}

ActionOutcome execute_action(WorldModel& world, const dsl::PrimitiveAction& action) {
  ++world.step_count;
  // Mutations happen only after every precondition passed, so a failed action
  // leaves the rest of the world as it was.
  return dispatch(world, action);
}

}  // namespace llmstate::sim
