#include "eaplan/solve.hpp"

#include <algorithm>
#include <iostream>
#include <set>

namespace eaplan::ea {

OptimalityTester::OptimalityTester(const EaProblem& prob, bool memoize,
                                   search::Limits innerLimits)
    : prob_(prob), memoize_(memoize), innerLimits_(innerLimits) {}

bool OptimalityTester::test(const std::vector<ModelUpdate>& updates,
                            const Rational& taskPlanCost) {
  ++tests;
  std::vector<std::string> keys;
  keys.reserve(updates.size());
  for (const auto& u : updates) keys.push_back(u.canonical());
  std::sort(keys.begin(), keys.end());
  std::string key;
  for (const auto& k : keys) key += k + "|";

  std::optional<Rational> opt;
  auto it = memoize_ ? memo_.find(key) : memo_.end();
  if (memoize_ && it != memo_.end()) {
    ++cacheHits;
    opt = it->second;
  } else {
    PlanningTask updated = apply_updates(prob_.human, updates);
    search::Status st;
    opt = search::optimal_cost(updated, innerLimits_, &st);
    if (!opt.has_value() && st != search::Status::ProvenUnsolvable) {
      ++indeterminate;
      std::cerr << "[ea-plan] optimality test indeterminate (inner search " +
                       search::to_string(st) + "); treating as failure\n";
      return false;  // not cached: a longer budget later might decide it
    }
    if (memoize_) memo_[key] = opt;
  }
  return opt.has_value() && *opt == taskPlanCost;
}

SolveOutcome solve_ea(const EaProblem& prob, SolveMode mode, const SolveConfig& cfg,
                      const search::Limits& limits) {
  AugmentedTask aug = compile(prob, cfg);
  annotate_side_effects(aug, cfg.stage, cfg.inference);

  Rational penalty = mode.penaltyWeight;
  if (mode.kind == SolveMode::Kind::Penalty && !(penalty > Rational(0))) {
    Rational maxCost(0);
    for (const auto& a : aug.task.actions)
      if (a.role == ActionRole::TaskLevel && a.cost > maxCost) maxCost = a.cost;
    penalty = Rational(2) * maxCost;
  }

  search::Limits innerLimits;
  innerLimits.maxSeconds = limits.maxSeconds * cfg.innerBudgetFraction;
  innerLimits.maxExpansions = limits.maxExpansions;
  OptimalityTester tester(prob, cfg.memoizeOptimalityTests, innerLimits);

  search::GoalJudge judge;
  if (mode.kind != SolveMode::Kind::Valid) {
    judge = [&](const State&, const Rational& g,
                const std::vector<int>& plan) -> std::optional<Rational> {
      EASolution sol = extract_solution(aug, plan);
      bool conforms = tester.test(sol.explanation, sol.taskCost);
      if (conforms) return g;
      if (mode.kind == SolveMode::Kind::Penalty) return g + penalty;
      return std::nullopt;
    };
  }

  SolveOutcome out;
  out.search = search::astar(aug.task, cfg.heuristic, limits, judge);
  out.guardTests = tester.tests;
  out.guardCacheHits = tester.cacheHits;
  out.guardIndeterminate = tester.indeterminate;
  if (out.search.status == search::Status::Solved) {
    out.solution = extract_solution(aug, out.search.plan);
    out.augmentedPlan = out.search.planNames(aug.task);
    out.objective = out.search.cost;
    Rational planCost(0);
    for (int id : out.search.plan) planCost += aug.task.actions[static_cast<std::size_t>(id)].cost;
    if (mode.kind == SolveMode::Kind::Penalty && out.objective != planCost) {
      out.penalized = true;
      out.search.cost = planCost;  // report the plan's own cost
    }
  }
  return out;
}

DeltaBound delta_lower_bound(const PlanningTask& task) {
  if (task.actions.empty())
    throw std::invalid_argument("delta lower bound needs at least one action");
  std::set<Rational> costs;
  for (const auto& a : task.actions) costs.insert(a.cost);
  auto it = costs.begin();
  Rational c1 = *it;
  ++it;
  if (it != costs.end()) return {*it - c1, false};
  // Single cost level: any two plans differ by a multiple of it.
  return {c1, false};
}

Rational agent_optimal_cost(const ModelDiff& diff, const DeltaBound& bound) {
  if (diff.empty()) return Rational(0);
  return bound.value / Rational(static_cast<long long>(diff.size()) + 1);
}

}  // namespace eaplan::ea
