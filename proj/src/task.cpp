#include "eaplan/task.hpp"

#include <algorithm>
#include <sstream>

namespace eaplan {

void PlanningTask::reindex() {
  fluentIndex_.clear();
  actionIndex_.clear();
  for (std::size_t i = 0; i < fluents.size(); ++i)
    fluentIndex_[fluents[i].name] = static_cast<int>(i);
  for (std::size_t i = 0; i < actions.size(); ++i)
    actionIndex_[actions[i].name] = static_cast<int>(i);
}

void PlanningTask::checkInvariants() const {
  if (fluentIndex_.size() != fluents.size())
    throw std::logic_error("task " + name + ": duplicate fluent names");
  if (actionIndex_.size() != actions.size())
    throw std::logic_error("task " + name + ": duplicate action names");
  for (std::size_t i = 0; i < fluents.size(); ++i)
    if (fluents[i].id != static_cast<int>(i))
      throw std::logic_error("task " + name + ": fluent ids not dense");
  auto checkWidth = [&](const Bits& b, const char* what) {
    if (b.sizeBits() != fluents.size())
      throw std::logic_error("task " + name + ": " + what + " has wrong width");
  };
  checkWidth(init, "init");
  checkWidth(goal, "goal");
  for (const auto& a : actions) {
    checkWidth(a.hardPrec, "hardPrec");
    if (a.cost < Rational(0))
      throw std::logic_error("task " + name + ": negative cost on " + a.name);
    if (a.effects.empty() || !a.effects[0].unconditional())
      throw std::logic_error("task " + name + ": action " + a.name +
                             " lacks a leading unconditional effect group");
    for (const auto& e : a.effects) {
      checkWidth(e.condition, "effect condition");
      checkWidth(e.add, "effect add");
      checkWidth(e.del, "effect del");
    }
    for (const auto& ip : a.implPrec) {
      if (ip.guard < 0 || ip.guard >= static_cast<int>(fluents.size()) || ip.consequent < 0 ||
          ip.consequent >= static_cast<int>(fluents.size()))
        throw std::logic_error("task " + name + ": implication out of range in " + a.name);
    }
  }
}

bool applicable(const State& s, const GroundAction& a, std::string* firstViolated,
                const PlanningTask& task) {
  if (!a.hardPrec.subsetOf(s)) {
    if (firstViolated != nullptr) {
      for (std::size_t i = 0; i < task.numFluents(); ++i) {
        if (a.hardPrec.test(static_cast<int>(i)) && !s.test(static_cast<int>(i))) {
          *firstViolated = task.fluents[i].name;
          break;
        }
      }
    }
    return false;
  }
  for (const auto& ip : a.implPrec) {
    if (s.test(ip.guard) && !s.test(ip.consequent)) {
      if (firstViolated != nullptr)
        *firstViolated = task.fluents[static_cast<std::size_t>(ip.guard)].name + " -> " +
                         task.fluents[static_cast<std::size_t>(ip.consequent)].name;
      return false;
    }
  }
  return true;
}

State apply(const State& s, const GroundAction& a, const PlanningTask& task) {
  std::string violated;
  if (!applicable(s, a, &violated, task)) throw InapplicableActionError(a.name, violated);
  State next = s;
  // Conditions read the pre-state; deletes before adds so adds win.
  for (const auto& e : a.effects)
    if (e.condition.subsetOf(s)) next.andnotInto(e.del);
  for (const auto& e : a.effects)
    if (e.condition.subsetOf(s)) next.orInto(e.add);
  return next;
}

ValidityReport validate_plan(const PlanningTask& task, const std::vector<int>& plan) {
  ValidityReport r;
  r.executable = true;
  State s = task.init;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const GroundAction& a = task.actions[static_cast<std::size_t>(plan[i])];
    r.totalCost += a.cost;
    if (!r.executable) continue;  // keep summing costs past the failure
    std::string violated;
    if (!applicable(s, a, &violated, task)) {
      r.executable = false;
      r.failStep = static_cast<int>(i);
      r.violatedCondition = violated;
      continue;
    }
    s = apply(s, a, task);
  }
  r.goalReached = r.executable && task.goal.subsetOf(s);
  return r;
}

ValidityReport validate_plan(const PlanningTask& task, const std::vector<std::string>& plan) {
  std::vector<int> ids;
  ids.reserve(plan.size());
  for (const auto& name : plan) {
    int id = task.actionId(name);
    if (id < 0) {
      ValidityReport r;
      r.executable = false;
      r.failStep = static_cast<int>(ids.size());
      r.unknownAction = name;
      r.violatedCondition = "unknown action: " + name;
      return r;
    }
    ids.push_back(id);
  }
  return validate_plan(task, ids);
}

std::vector<std::string> parse_plan_text(const std::string& text) {
  std::vector<std::string> plan;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notSpace));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '(' && line.back() == ')') line = line.substr(1, line.size() - 2);
    // Canonical ground-action names are space-joined: "stack a b".
    std::istringstream ws(line);
    std::string tok, name;
    while (ws >> tok) {
      if (!name.empty()) name += " ";
      name += tok;
    }
    if (!name.empty()) plan.push_back(name);
  }
  return plan;
}

std::string plan_to_text(const std::vector<std::string>& plan) {
  std::ostringstream os;
  for (const auto& a : plan) os << "(" << a << ")\n";
  return os.str();
}

}  // namespace eaplan
