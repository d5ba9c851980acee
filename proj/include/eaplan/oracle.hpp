#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "eaplan/ea.hpp"

namespace eaplan::oracle {

// Ground truth for small instances. Deliberately shares nothing with the
// planner module beyond the state-transition semantics: plain Dijkstra and
// exhaustive walks over explicitly built state spaces.

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleCaps {
  Rational costCap{1000};
  std::size_t planLenCap = 30;
  std::size_t stateCap = 10000;
  std::size_t solutionCap = 2000000;
};

// Explicit reachable state space of one task.
struct StateSpace {
  std::vector<State> states;  // states[0] = init
  std::unordered_map<State, int> index;
  std::vector<std::vector<std::pair<int, int>>> succ;  // (actionId, nextState)
  std::vector<bool> isGoal;

  static StateSpace build(const PlanningTask& task, std::size_t stateCap);
  // Exact cost-to-go per state (reverse Dijkstra); nullopt = dead end.
  std::vector<std::optional<Rational>> costToGo(const PlanningTask& task) const;
};

// Min-cost valid plan via Dijkstra; nullopt when unsolvable within caps.
std::optional<Rational> dijkstra_cost(const PlanningTask& task, std::size_t stateCap = 100000);

// Every optimal plan of the task (as action-name sequences), enumerated by
// walking only edges that lie on some optimal path.
std::vector<std::vector<std::string>> enumerate_optimal_plans(const PlanningTask& task,
                                                              const OracleCaps& caps);

struct OracleSolution {
  std::vector<ea::ModelUpdate> updates;
  std::vector<std::string> plan;
  Rational explanationCost{0};
  Rational taskCost{0};
  Rational total() const { return explanationCost + taskCost; }
};

// All Definition-1 solutions within the caps: every update subset crossed
// with every plan executable and goal-reaching in both the robot model and
// the updated observer model.
std::vector<OracleSolution> enumerate_ea_solutions(const ea::EaProblem& prob,
                                                   const Rational& explanationCost,
                                                   const OracleCaps& caps);

// Cheapest total cost over all Definition-1 solutions (explanation cost plus
// plan cost), by product-space Dijkstra per update subset.
std::optional<Rational> min_valid_total_cost(const ea::EaProblem& prob,
                                             const Rational& explanationCost,
                                             const OracleCaps& caps);

// Minimally complete explanation: the cheapest update subset (ties broken
// lexicographically) making the given robot-optimal plan optimal in the
// updated observer model. nullopt only when the plan is not robot-optimal.
std::optional<std::vector<ea::ModelUpdate>> mce(const ea::EaProblem& prob,
                                                const std::vector<std::string>& plan,
                                                const Rational& explanationCost,
                                                const OracleCaps& caps,
                                                Rational* costOut = nullptr);

struct DeltaResult {
  Rational value{0};
  bool capCensored = false;  // no second distinct plan cost within the caps
};

// Exact optimality delta: cheapest valid-plan cost above the optimum, minus
// the optimum. Two-label Dijkstra over the explicit state space.
DeltaResult exact_delta(const PlanningTask& task, const OracleCaps& caps);

}  // namespace eaplan::oracle
