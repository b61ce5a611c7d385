#include "llmstate/sim/world.h"

#include <algorithm>

namespace llmstate::sim {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::kIn: return "IN";
    case Relation::kOn: return "ON";
    case Relation::kHeld: return "HELD";
  }
  return "?";
}

void WorldModel::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < objects.size(); ++i) index_.emplace(objects[i].id, i);
}

bool WorldModel::is_room(std::string_view id) const {
  return std::find(rooms.begin(), rooms.end(), id) != rooms.end();
}

const ObjectInstance* WorldModel::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &objects[it->second];
}

ObjectInstance* WorldModel::find(std::string_view id) {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &objects[it->second];
}

std::string WorldModel::room_of(const ObjectInstance& object) const {
  const ObjectInstance* current = &object;
  // Bounded walk; load_world rejects cycles but stay safe on hand-built worlds.
  for (std::size_t hops = 0; hops <= objects.size(); ++hops) {
    if (current->placement.relation == Relation::kHeld) return robot.current_room;
    if (is_room(current->placement.parent)) return current->placement.parent;
    const ObjectInstance* parent = find(current->placement.parent);
    if (parent == nullptr) return {};
    current = parent;
  }
  return {};
}

bool WorldModel::is_enclosed(const ObjectInstance& object) const {
  const ObjectInstance* current = &object;
  for (std::size_t hops = 0; hops <= objects.size(); ++hops) {
    if (current->placement.relation == Relation::kHeld) return false;
    const ObjectInstance* parent = find(current->placement.parent);
    if (parent == nullptr) return false;
    if (current->placement.relation == Relation::kIn && parent->openable && !parent->is_open) {
      return true;
    }
    current = parent;
  }
  return false;
}

bool WorldModel::is_held(const ObjectInstance& object) const {
  return object.placement.relation == Relation::kHeld;
}

bool WorldModel::is_descendant_of(const ObjectInstance& object, std::string_view ancestor) const {
  const ObjectInstance* current = &object;
  for (std::size_t hops = 0; hops <= objects.size(); ++hops) {
    if (current->id == ancestor) return true;
    if (current->placement.relation == Relation::kHeld) return false;
    const ObjectInstance* parent = find(current->placement.parent);
    if (parent == nullptr) return false;
    current = parent;
  }
  return false;
}

std::vector<const ObjectInstance*> WorldModel::descendants(std::string_view id) const {
  std::vector<const ObjectInstance*> out;
  for (const auto& object : objects) {
    if (object.id != id && is_descendant_of(object, id)) out.push_back(&object);
  }
  return out;
}

int WorldModel::direct_contents_count(std::string_view id) const {
  return static_cast<int>(std::count_if(objects.begin(), objects.end(), [&](const auto& o) {
    return o.placement.relation == Relation::kIn && o.placement.parent == id;
  }));
}

bool WorldModel::is_visible(const ObjectInstance& object) const {
  if (is_held(object) || is_enclosed(object)) return false;
  const auto room = room_of(object);
  if (observation_scope == ObservationScope::kVisitedRooms) {
    if (room == robot.current_room) return true;
    return std::find(robot.visited_rooms.begin(), robot.visited_rooms.end(), room) !=
           robot.visited_rooms.end();
  }
  return room == robot.current_room;
}

bool operator==(const WorldModel& a, const WorldModel& b) {
  return a.rooms == b.rooms && a.objects == b.objects && a.robot == b.robot &&
         a.hand_capacity == b.hand_capacity &&
         a.interaction_needs_free_hand == b.interaction_needs_free_hand &&
         a.observation_scope == b.observation_scope && a.effect_rules == b.effect_rules &&
         a.step_count == b.step_count;
}

}  // namespace llmstate::sim
