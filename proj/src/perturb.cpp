#include "eaplan/perturb.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace eaplan::bench {

namespace {

// A perturbation slot names one mutable atom position in the model.
struct Slot {
  enum Field { InitDrop, InitExtra, GoalDrop, GoalExtra, PrecDrop, PrecExtra, AddDrop, AddExtra,
               DelDrop, DelExtra } field;
  int action;  // -1 for init/goal
  int fluent;
};

}  // namespace

PlanningTask perturb_model(const PlanningTask& robot, int n, std::uint64_t seed) {
  const int F = static_cast<int>(robot.numFluents());
  std::vector<std::vector<Slot>> byField(10);
  auto push = [&](Slot::Field f, int action, int fluent) {
    byField[static_cast<std::size_t>(f)].push_back({f, action, fluent});
  };
  for (int f = 0; f < F; ++f) {
    if (robot.init.test(f)) push(Slot::InitDrop, -1, f);
    else push(Slot::InitExtra, -1, f);
    if (robot.goal.test(f)) push(Slot::GoalDrop, -1, f);
    else push(Slot::GoalExtra, -1, f);
  }
  for (std::size_t ai = 0; ai < robot.actions.size(); ++ai) {
    const GroundAction& a = robot.actions[ai];
    for (int f = 0; f < F; ++f) {
      bool inPrec = a.hardPrec.test(f);
      bool inAdd = a.effects[0].add.test(f);
      bool inDel = a.effects[0].del.test(f);
      if (inPrec) push(Slot::PrecDrop, static_cast<int>(ai), f);
      else push(Slot::PrecExtra, static_cast<int>(ai), f);
      if (inAdd) push(Slot::AddDrop, static_cast<int>(ai), f);
      else if (!inDel) push(Slot::AddExtra, static_cast<int>(ai), f);
      if (inDel) push(Slot::DelDrop, static_cast<int>(ai), f);
      else if (!inAdd) push(Slot::DelExtra, static_cast<int>(ai), f);
    }
  }

  std::size_t available = 0;
  for (const auto& v : byField) available += v.size();
  if (available < static_cast<std::size_t>(n))
    throw PerturbError("model has only " + std::to_string(available) +
                       " perturbable slots, need " + std::to_string(n));

  // Pick a field kind uniformly among the non-exhausted ones, then a slot
  // within it, so variants mix update families instead of drowning in the
  // (huge) extra-atom pools.
  std::mt19937_64 rng(seed);
  PlanningTask human = robot;
  std::set<std::pair<int, std::pair<int, int>>> taken;  // (field, action, fluent)
  int applied = 0;
  while (applied < n) {
    std::vector<int> fields;
    for (int f = 0; f < 10; ++f)
      if (!byField[static_cast<std::size_t>(f)].empty()) fields.push_back(f);
    if (fields.empty()) throw PerturbError("ran out of perturbable slots");
    int field = fields[rng() % fields.size()];
    auto& pool = byField[static_cast<std::size_t>(field)];
    std::size_t pick = rng() % pool.size();
    Slot slot = pool[pick];
    pool.erase(pool.begin() + static_cast<long>(pick));
    if (!taken.insert({field, {slot.action, slot.fluent}}).second) continue;
    // Extra add and extra delete of the same fluent would collide in one
    // effect list; whichever lands first blocks the other.
    if (slot.field == Slot::AddExtra &&
        !taken.insert({Slot::DelExtra, {slot.action, slot.fluent}}).second)
      continue;
    if (slot.field == Slot::DelExtra &&
        !taken.insert({Slot::AddExtra, {slot.action, slot.fluent}}).second)
      continue;

    GroundAction* act = slot.action >= 0
                            ? &human.actions[static_cast<std::size_t>(slot.action)]
                            : nullptr;
    switch (slot.field) {
      case Slot::InitDrop: human.init.reset(slot.fluent); break;
      case Slot::InitExtra: human.init.set(slot.fluent); break;
      case Slot::GoalDrop: human.goal.reset(slot.fluent); break;
      case Slot::GoalExtra: human.goal.set(slot.fluent); break;
      case Slot::PrecDrop: act->hardPrec.reset(slot.fluent); break;
      case Slot::PrecExtra: act->hardPrec.set(slot.fluent); break;
      case Slot::AddDrop: act->effects[0].add.reset(slot.fluent); break;
      case Slot::AddExtra: act->effects[0].add.set(slot.fluent); break;
      case Slot::DelDrop: act->effects[0].del.reset(slot.fluent); break;
      case Slot::DelExtra: act->effects[0].del.set(slot.fluent); break;
    }
    ++applied;
  }
  human.name = robot.name + "+perturbed";
  human.checkInvariants();
  return human;
}

}  // namespace eaplan::bench
