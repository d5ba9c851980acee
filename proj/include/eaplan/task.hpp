#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "eaplan/bits.hpp"
#include "eaplan/rational.hpp"

namespace eaplan {

enum class FluentRole {
  Task,          // original task fluent
  Belief,        // observer's belief about a task fluent
  MetaPlus,      // model-update marker, robot-side fact
  MetaMinus,     // model-update marker, observer-side misconception
  SentinelInit,  // consumed by the start action
  SentinelGoal,  // produced by the finish action
  Aux,           // ordering machinery
};

enum class ActionRole { TaskLevel, Explanatory, InitSentinel, GoalSentinel };

struct Fluent {
  int id = -1;
  std::string name;  // canonical ground-atom string, e.g. "(on a b)"
  FluentRole role = FluentRole::Task;
};

// guard -> consequent: satisfied when guard is false or consequent is true.
struct ImplPrec {
  int guard = -1;
  int consequent = -1;
  friend bool operator==(const ImplPrec&, const ImplPrec&) = default;
};

struct EffectGroup {
  Bits condition;  // empty-condition groups fire unconditionally
  Bits add;
  Bits del;
  bool unconditional() const { return !condition.any(); }
};

struct GroundAction {
  std::string name;
  Bits hardPrec;
  std::vector<ImplPrec> implPrec;
  std::vector<EffectGroup> effects;  // effects[0] is the unconditional group
  Rational cost{1};
  ActionRole role = ActionRole::TaskLevel;
};

using State = Bits;

// Grounded task ⟨F, A, I, G, C⟩. Immutable once built; all operations on it
// are pure, so tasks can be shared freely across threads.
struct PlanningTask {
  std::string name;
  std::vector<Fluent> fluents;
  std::vector<GroundAction> actions;
  Bits init;
  Bits goal;
  bool hasCosts = false;

  std::size_t numFluents() const { return fluents.size(); }
  Bits emptySet() const { return Bits(fluents.size()); }

  int fluentId(const std::string& name) const {
    auto it = fluentIndex_.find(name);
    return it == fluentIndex_.end() ? -1 : it->second;
  }
  int actionId(const std::string& name) const {
    auto it = actionIndex_.find(name);
    return it == actionIndex_.end() ? -1 : it->second;
  }
  const GroundAction* findAction(const std::string& name) const {
    int id = actionId(name);
    return id < 0 ? nullptr : &actions[static_cast<std::size_t>(id)];
  }

  // Rebuild the name lookups; call after any structural change.
  void reindex();
  // Internal-consistency assertions (dense ids, unique names, in-range refs).
  void checkInvariants() const;

 private:
  std::unordered_map<std::string, int> fluentIndex_;
  std::unordered_map<std::string, int> actionIndex_;
};

struct InapplicableActionError : std::runtime_error {
  InapplicableActionError(const std::string& action, const std::string& violated)
      : std::runtime_error("action " + action + " not applicable; violated: " + violated),
        action(action),
        violated(violated) {}
  std::string action;
  std::string violated;
};

// Executability and goal status of a plan, plus its cost. Failures are
// content, not exceptions; totalCost always sums every step's cost.
struct ValidityReport {
  bool executable = false;
  bool goalReached = false;
  Rational totalCost{0};
  int failStep = -1;            // first inapplicable step, -1 if none
  std::string violatedCondition;
  std::string unknownAction;    // set when a plan names a missing action
  bool valid() const { return executable && goalReached; }
};

bool applicable(const State& s, const GroundAction& a, std::string* firstViolated,
                const PlanningTask& task);
inline bool applicable(const State& s, const GroundAction& a, const PlanningTask& task) {
  return applicable(s, a, nullptr, task);
}

// Conditions are evaluated against the pre-state; then all fired deletes
// apply, then all fired adds (add wins on collision).
State apply(const State& s, const GroundAction& a, const PlanningTask& task);

ValidityReport validate_plan(const PlanningTask& task, const std::vector<int>& plan);
ValidityReport validate_plan(const PlanningTask& task, const std::vector<std::string>& plan);

// Plan files: one "(name)" per line; '#' or ';' comment lines skipped.
std::vector<std::string> parse_plan_text(const std::string& text);
std::string plan_to_text(const std::vector<std::string>& plan);

}  // namespace eaplan
