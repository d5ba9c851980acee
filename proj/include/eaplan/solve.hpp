#pragma once

#include "eaplan/ea.hpp"
#include "eaplan/search.hpp"

namespace eaplan::ea {

// VALID accepts any Definition-1 solution; OPTIMAL-GUARD additionally prunes
// goal states whose task fragment is suboptimal in the updated observer
// model; PENALTY keeps such goals but surcharges them.
struct SolveMode {
  enum class Kind { Valid, OptimalGuard, Penalty };
  Kind kind = Kind::OptimalGuard;
  // Penalty weight; <= 0 means "use the default of twice the costliest
  // task-level action".
  Rational penaltyWeight{0};

  static SolveMode valid() { return {Kind::Valid, Rational(0)}; }
  static SolveMode optimalGuard() { return {Kind::OptimalGuard, Rational(0)}; }
  static SolveMode penalty(Rational w) { return {Kind::Penalty, w}; }
};

struct SolveConfig : CompileConfig {
  Stage stage = Stage::Propose;
  bool inference = true;  // side-effect inference heuristic (execute stage)
  search::HeuristicKind heuristic = search::HeuristicKind::HMax;
  // Each optimality test inherits this fraction of the outer time limit.
  double innerBudgetFraction = 0.25;
  bool memoizeOptimalityTests = true;
};

struct SolveOutcome {
  EASolution solution;
  search::Result search;
  std::vector<std::string> augmentedPlan;  // full self-explaining plan, sentinels included
  bool penalized = false;       // penalty mode accepted a non-conforming goal
  Rational objective{0};        // plan cost plus penalty, when applicable
  std::uint64_t guardTests = 0;
  std::uint64_t guardCacheHits = 0;
  std::uint64_t guardIndeterminate = 0;  // inner searches that timed out
};

SolveOutcome solve_ea(const EaProblem& prob, SolveMode mode, const SolveConfig& cfg,
                      const search::Limits& limits = {});

// Goal-test optimality check with per-explanation-set memoization: is the
// plan's cost equal to the optimal cost of the updated observer model?
// Indeterminate inner searches (timeout) count as failures and are logged.
class OptimalityTester {
 public:
  OptimalityTester(const EaProblem& prob, bool memoize, search::Limits innerLimits);
  bool test(const std::vector<ModelUpdate>& updates, const Rational& taskPlanCost);
  std::uint64_t tests = 0, cacheHits = 0, indeterminate = 0;

 private:
  const EaProblem& prob_;
  bool memoize_;
  search::Limits innerLimits_;
  std::map<std::string, std::optional<Rational>> memo_;  // canonical E -> optimal cost
};

struct DeltaBound {
  Rational value{0};
  bool exact = false;  // lower bounds from cost structure are never exact
};

// Certified lower bound on the optimality delta: 1 for unit-cost tasks,
// C2 - C1 when a second-cheapest distinct action cost exists, else C1.
DeltaBound delta_lower_bound(const PlanningTask& task);

// Uniform per-update explanation cost bound/(|diff|+1), which keeps the sum
// of all explanatory action costs strictly below the delta bound and makes
// OPTIMAL-GUARD return agent-optimal plans with minimal explanations.
Rational agent_optimal_cost(const ModelDiff& diff, const DeltaBound& bound);

}  // namespace eaplan::ea
