#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eaplan/task.hpp"

namespace eaplan::search {

enum class Status { Solved, ProvenUnsolvable, Timeout, ResourceLimit };
std::string to_string(Status s);

struct Limits {
  double maxSeconds = 0;        // 0 = unlimited
  std::uint64_t maxExpansions = 0;  // 0 = unlimited
  std::size_t maxMemoryMB = 0;      // rough node-arena estimate, 0 = unlimited
};

struct Result {
  Status status = Status::ProvenUnsolvable;
  std::vector<int> plan;  // action ids, valid only when status == Solved
  Rational cost{0};
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  double wallTime = 0;
  std::vector<std::string> planNames(const PlanningTask& task) const;
};

enum class HeuristicKind { Blind, HMax, HAdd };
inline bool admissible(HeuristicKind h) { return h != HeuristicKind::HAdd; }

// Delete-relaxation h_max / h_add from state s. Implication preconditions
// are dropped and conditional adds treated as unconditional, both of which
// only relax further, so h_max stays admissible on compiled tasks.
// nullopt means the goal is unreachable in the relaxation.
std::optional<Rational> hmax_value(const PlanningTask& task, const State& s);
std::optional<Rational> hadd_value(const PlanningTask& task, const State& s);

// Extra acceptance test on goal states. Returns the objective to record for
// this goal (>= g), or nullopt to reject it and keep searching. Plain search
// passes nullptr. Goal states whose objective exceeds g force the search to
// continue until the frontier proves no better objective exists.
using GoalJudge =
    std::function<std::optional<Rational>(const State& s, const Rational& g,
                                          const std::vector<int>& plan)>;

// A* with deterministic tie-breaking: f, then h, then FIFO by generation
// order. Successors are generated in action order, and tasks keep actions
// sorted by name, so reruns produce identical plans.
Result astar(const PlanningTask& task, HeuristicKind h, const Limits& limits = {},
             const GoalJudge& judge = nullptr);

// Min-cost over all valid plans (admissible heuristic); nullopt = unsolvable.
std::optional<Rational> optimal_cost(const PlanningTask& task, const Limits& limits = {},
                                     Status* statusOut = nullptr);

}  // namespace eaplan::search
