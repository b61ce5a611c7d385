#include "support/solver.h"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <type_traits>
#include <unordered_set>

#include "llmstate/sim/simulator.h"

namespace llmstate::oracle {
namespace {

using dsl::ActionKind;
using dsl::PrimitiveAction;
using sim::WorldModel;

std::string state_key(const WorldModel& world) {
  std::string key = world.robot.current_room;
  key += '|';
  for (const auto& id : world.robot.close_to) key += id + ',';
  key += '|';
  for (const auto& id : world.robot.holding) key += id + ',';
  for (const auto& o : world.objects) {
    key += '|';
    key += static_cast<char>('0' + static_cast<int>(o.placement.relation));
    key += o.placement.parent;
    key += o.is_open ? 'o' : '-';
    key += o.is_on ? 'n' : '-';
    for (const auto& [k, v] : o.latent) key += k + '=' + v + ';';
  }
  return key;
}

bool contains(const std::vector<std::string>& items, const std::string& id) {
  return std::find(items.begin(), items.end(), id) != items.end();
}

void push_unique(std::vector<std::string>& items, const std::string& id) {
  if (!id.empty() && !contains(items, id)) items.push_back(id);
}

std::vector<PrimitiveAction> candidate_actions(const WorldModel& world,
                                               const std::vector<std::string>& relevant) {
  std::vector<PrimitiveAction> actions;
  for (const auto& room : world.rooms) actions.push_back({ActionKind::kMove, {room}});
  for (const auto& id : relevant) {
    const auto* o = world.find(id);
    if (o == nullptr) continue;
    actions.push_back({ActionKind::kMove, {id}});
    if (!contains(world.robot.close_to, id)) continue;
    if (o->graspable && !world.is_held(*o)) actions.push_back({ActionKind::kPickup, {id}});
    if (o->openable) actions.push_back({o->is_open ? ActionKind::kClose : ActionKind::kOpen, {id}});
    if (o->switchable) {
      actions.push_back({o->is_on ? ActionKind::kSwitchOff : ActionKind::kSwitchOn, {id}});
    }
  }
  for (const auto& held : world.robot.holding) {
    for (const auto& id : relevant) {
      const auto* target = world.find(id);
      if (target == nullptr || id == held || !contains(world.robot.close_to, id)) continue;
      if (target->is_container) actions.push_back({ActionKind::kPlaceIn, {held, id}});
      if (target->is_surface) actions.push_back({ActionKind::kPlaceOn, {held, id}});
    }
  }
  return actions;
}

bool attributes_match(const sim::ObjectInstance& o, const std::map<std::string, std::string>& where) {
  return std::all_of(where.begin(), where.end(), [&](const auto& kv) {
    const auto it = o.latent.find(kv.first);
    return it != o.latent.end() && it->second == kv.second;
  });
}

// Whether `o` currently contributes to the count.
bool counted(const WorldModel& world, const sim::Count& count, const sim::ObjectInstance& o) {
  if (!count.subject.matches(o) || !attributes_match(o, count.where)) return false;
  if (count.relation == sim::CountRelation::kAnywhere) return true;
  const auto relation =
      count.relation == sim::CountRelation::kIn ? sim::Relation::kIn : sim::Relation::kOn;
  return o.placement.relation == relation && count.target.matches(o.placement.parent, world);
}

const sim::ObjectInstance* first_match(const WorldModel& world, const sim::ObjectSelector& sel,
                                       bool need_graspable) {
  for (const auto& o : world.objects) {
    if (sel.matches(o) && (!need_graspable || o.graspable)) return &o;
  }
  return nullptr;
}

std::string selector_target(const WorldModel& world, const sim::ObjectSelector& sel) {
  if (sel.by == sim::ObjectSelector::By::kId) return sel.value;
  const auto* o = first_match(world, sel, false);
  return o == nullptr ? std::string{} : o->id;
}

void add_devices(const WorldModel& world, const std::string& key, const std::string& value,
                 std::vector<std::string>& out) {
  for (const auto& rule : world.effect_rules) {
    const auto it = rule.set.find(key);
    if (it == rule.set.end() || it->second != value) continue;
    for (const auto& o : world.objects) {
      if (o.cls == rule.device_class) push_unique(out, o.id);
    }
  }
}

// A surface in the same room as `target` that is not `target` itself, for
// putting things down when clearing it.
std::string spare_surface(const WorldModel& world, const std::string& target) {
  const auto* t = world.find(target);
  if (t == nullptr) return {};
  const auto room = world.room_of(*t);
  for (const auto& o : world.objects) {
    if (o.id != target && o.is_surface && !world.is_descendant_of(o, target) &&
        world.room_of(o) == room && o.placement.parent == room) {
      return o.id;
    }
  }
  return {};
}

}  // namespace

std::optional<std::vector<PrimitiveAction>> bfs_solve(const WorldModel& start,
                                                      const sim::GoalPredicate& goal,
                                                      const std::vector<std::string>& relevant,
                                                      std::size_t max_states) {
  if (sim::check_goal(start, goal)) return std::vector<PrimitiveAction>{};
  struct Node {
    std::size_t parent;
    PrimitiveAction action;
  };
  std::vector<Node> nodes{{0, {}}};
  std::deque<std::pair<std::size_t, WorldModel>> frontier;
  std::unordered_set<std::string> seen{state_key(start)};
  frontier.emplace_back(0, start);

  while (!frontier.empty()) {
    auto [index, world] = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& action : candidate_actions(world, relevant)) {
      auto next = world;
      if (!sim::execute_action(next, action).success) continue;
      if (!seen.insert(state_key(next)).second) continue;
      nodes.push_back({index, action});
      const auto node = nodes.size() - 1;
      if (sim::check_goal(next, goal)) {
        std::vector<PrimitiveAction> plan;
        for (auto i = node; i != 0; i = nodes[i].parent) plan.push_back(nodes[i].action);
        std::reverse(plan.begin(), plan.end());
        return plan;
      }
      if (seen.size() >= max_states) return std::nullopt;
      frontier.emplace_back(node, std::move(next));
    }
  }
  return std::nullopt;
}

std::vector<sim::GoalPredicate> stage_goals(const WorldModel& world, const sim::GoalPredicate& goal) {
  std::vector<sim::GoalPredicate> stages;
  sim::GoalPredicate done;
  for (const auto& atom : goal.atoms) {
    if (const auto* count = std::get_if<sim::Count>(&atom)) {
      const int current = sim::count_matching(world, *count);
      if (count->comparator == sim::Comparator::kGreaterEqual) {
        for (int k = current + 1; k <= count->n; ++k) {
          auto partial = *count;
          partial.n = k;
          auto stage = done;
          stage.atoms.push_back(partial);
          stages.push_back(std::move(stage));
        }
      } else if (count->comparator == sim::Comparator::kLessEqual ||
                 (count->comparator == sim::Comparator::kEqual && current > count->n)) {
        for (int k = current - 1; k >= count->n; --k) {
          auto partial = *count;
          partial.n = k;
          partial.comparator = sim::Comparator::kLessEqual;
          auto stage = done;
          stage.atoms.push_back(partial);
          stages.push_back(std::move(stage));
        }
      }
    }
    done.atoms.push_back(atom);
    if (stages.empty() || !(stages.back() == done)) stages.push_back(done);
  }
  return stages;
}

std::vector<std::string> relevant_objects(const WorldModel& world, const sim::GoalPredicate& goal) {
  std::vector<std::string> out;
  for (const auto& atom : goal.atoms) {
    if (sim::check_atom(world, atom)) continue;
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, sim::ObjectIn> || std::is_same_v<T, sim::ObjectOn>) {
            const auto* subject = first_match(world, a.subject, true);
            if (subject != nullptr) push_unique(out, subject->id);
            push_unique(out, selector_target(world, a.target));
          } else if constexpr (std::is_same_v<T, sim::Switched> ||
                               std::is_same_v<T, sim::ContainerOpen>) {
            push_unique(out, a.id);
          } else if constexpr (std::is_same_v<T, sim::AttributeIs>) {
            push_unique(out, a.id);
            add_devices(world, a.key, a.value, out);
          } else {
            const bool adding = a.comparator == sim::Comparator::kGreaterEqual;
            // Prefer an item that already has the wanted attributes, then any
            // uncounted item; when removing, any counted item.
            const sim::ObjectInstance* pick = nullptr;
            for (int pass = 0; pass < 2 && pick == nullptr; ++pass) {
              for (const auto& o : world.objects) {
                if (!o.graspable || !a.subject.matches(o)) continue;
                if (adding == counted(world, a, o)) continue;
                if (adding && pass == 0 && !attributes_match(o, a.where)) continue;
                pick = &o;
                break;
              }
            }
            if (pick != nullptr) push_unique(out, pick->id);
            std::string target;
            if (a.relation != sim::CountRelation::kAnywhere) {
              target = selector_target(world, a.target);
              push_unique(out, target);
            }
            if (!adding) push_unique(out, spare_surface(world, target));
            for (const auto& [key, value] : a.where) add_devices(world, key, value, out);
          }
        },
        atom);
  }
  // Containers and supports on the way to every relevant object.
  const auto direct = out;
  for (const auto& id : direct) {
    const auto* o = world.find(id);
    while (o != nullptr && !world.is_room(o->placement.parent) &&
           o->placement.relation != sim::Relation::kHeld) {
      push_unique(out, o->placement.parent);
      o = world.find(o->placement.parent);
    }
  }
  return out;
}

std::vector<Round> solve_staged(const WorldModel& start, const sim::GoalPredicate& goal) {
  std::vector<Round> rounds;
  WorldModel world = start;
  for (const auto& stage : stage_goals(start, goal)) {
    if (sim::check_goal(world, stage)) continue;
    const auto relevant = relevant_objects(world, stage);
    auto plan = bfs_solve(world, stage, relevant);
    if (!plan) throw std::runtime_error("oracle: no plan for stage " + sim::goal_to_json(stage));
    Round round{world, *plan};
    for (const auto& action : *plan) {
      if (!sim::execute_action(world, action).success) {
        throw std::runtime_error("oracle: plan step failed on replay: " + dsl::to_string(action));
      }
    }
    rounds.push_back(std::move(round));
  }
  return rounds;
}

}  // namespace llmstate::oracle
