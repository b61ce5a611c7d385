#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "llmstate/dsl/types.h"

namespace llmstate::sim {

enum class Relation { kIn, kOn, kHeld };

struct Placement {
  Relation relation = Relation::kIn;
  std::string parent;  // room or object id; empty when held

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Which observation lists an object is rendered in. Defaults follow the
// object's flags; world files may override (some fixtures list an object as
// a surface only, or in no list at all).
enum ListMask : std::uint8_t {
  kListNone = 0,
  kListObject = 1 << 0,
  kListContainer = 1 << 1,
  kListSurface = 1 << 2,
};

struct ObjectInstance {
  std::string id;
  std::string cls;
  Placement placement;

  bool graspable = false;
  bool openable = false;
  bool switchable = false;
  bool is_container = false;
  bool is_surface = false;

  bool is_open = false;  // meaningful iff openable
  bool is_on = false;    // meaningful iff switchable
  std::optional<int> capacity;  // nullopt: unlimited

  std::map<std::string, std::string> latent;
  std::uint8_t lists = kListObject;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct RobotState {
  std::string current_room;
  std::vector<std::string> close_to;
  std::vector<std::string> holding;
  std::vector<std::string> visited_rooms;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct EffectRule {
  std::string device_class;
  dsl::ActionKind trigger = dsl::ActionKind::kSwitchOn;
  // Class filter on the device's contents; "any" matches everything.
  std::string content_class = "any";
  // When true the rule only fires if at least one content object matches.
  bool requires_contents = true;
  bool apply_to_contents = true;
  bool apply_to_device = false;
  std::map<std::string, std::string> set;

  friend bool operator==(const EffectRule&, const EffectRule&) = default;
};

enum class ObservationScope {
  kCurrentRoom,
  // Objects in every room visited so far, as in the recorded prompt examples.
  kVisitedRooms,
};

class WorldModel {
 public:
  std::vector<std::string> rooms;
  std::vector<ObjectInstance> objects;  // declaration order drives rendering
  RobotState robot;
  int hand_capacity = 2;
  bool interaction_needs_free_hand = true;
  ObservationScope observation_scope = ObservationScope::kCurrentRoom;
  std::vector<EffectRule> effect_rules;
  int step_count = 0;

  // Must be called after objects is populated or reordered.
  void reindex();

  bool is_room(std::string_view id) const;
  const ObjectInstance* find(std::string_view id) const;
  ObjectInstance* find(std::string_view id);

  // Room the object is in, following its placement chain. Held objects are
  // in the robot's room.
  std::string room_of(const ObjectInstance& object) const;
  // True if some IN-link on the placement chain is a closed openable object.
  bool is_enclosed(const ObjectInstance& object) const;
  bool is_held(const ObjectInstance& object) const;
  // True if `object` is `ancestor` or sits somewhere beneath it.
  bool is_descendant_of(const ObjectInstance& object, std::string_view ancestor) const;
  // Objects directly or transitively placed in/on `id`, in declaration order.
  std::vector<const ObjectInstance*> descendants(std::string_view id) const;
  // Objects placed directly in `id` (IN relation only).
  int direct_contents_count(std::string_view id) const;

  // Objects a fresh observation would show, excluding held ones.
  bool is_visible(const ObjectInstance& object) const;

  friend bool operator==(const WorldModel& a, const WorldModel& b);

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

std::string_view to_string(Relation relation);

}  // namespace llmstate::sim
