#include "eaplan/mss.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <set>

namespace eaplan::mss {

using ea::ModelUpdate;

std::string to_string(MssStatus s) {
  switch (s) {
    case MssStatus::Solved: return "solved";
    case MssStatus::ApproximationFailure: return "approximation-failure";
    case MssStatus::Unsolvable: return "proven-unsolvable";
    case MssStatus::Timeout: return "timeout";
    case MssStatus::ResourceLimit: return "resource-limit";
  }
  return "?";
}

namespace {

struct Node {
  Rational cost;
  std::string key;  // sorted canonical strings, lexicographic tiebreak
  std::vector<int> updates;
};

struct NodeCmp {
  bool operator()(const Node& a, const Node& b) const {
    if (a.cost != b.cost) return b.cost < a.cost;
    return a.key > b.key;
  }
};

}  // namespace

MssResult model_space_search(const ea::EaProblem& prob, const Rational& explanationCost,
                             const std::map<std::string, Rational>& explanationCostTable,
                             const search::Limits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };
  auto remaining = [&]() -> search::Limits {
    search::Limits inner = limits;
    if (limits.maxSeconds > 0) {
      double left = limits.maxSeconds - elapsed();
      inner.maxSeconds = left > 0.01 ? left : 0.01;
    }
    return inner;
  };

  MssResult res;
  ea::ModelDiff diff = ea::diff_models(prob);
  std::vector<ModelUpdate> updates = diff.all();
  auto costOf = [&](const ModelUpdate& u) {
    auto it = explanationCostTable.find(u.canonical());
    return it == explanationCostTable.end() ? explanationCost : it->second;
  };

  ++res.innerSearches;
  search::Status st;
  auto robotOpt = search::optimal_cost(prob.robot, remaining(), &st);
  if (!robotOpt.has_value()) {
    res.status = st == search::Status::ProvenUnsolvable ? MssStatus::Unsolvable
                                                        : MssStatus::Timeout;
    res.wallTime = elapsed();
    return res;
  }

  std::priority_queue<Node, std::vector<Node>, NodeCmp> open;
  std::set<std::string> seen;
  open.push({Rational(0), "", {}});
  seen.insert("");

  while (!open.empty()) {
    if (limits.maxSeconds > 0 && elapsed() > limits.maxSeconds) {
      res.status = MssStatus::Timeout;
      res.wallTime = elapsed();
      return res;
    }
    Node node = open.top();
    open.pop();
    ++res.nodesVisited;

    std::vector<ModelUpdate> subset;
    for (int i : node.updates) subset.push_back(updates[static_cast<std::size_t>(i)]);
    PlanningTask updated = ea::apply_updates(prob.human, subset);
    ++res.innerSearches;
    search::Result inner = search::astar(updated, search::HeuristicKind::HMax, remaining());
    if (inner.status == search::Status::Timeout || inner.status == search::Status::ResourceLimit) {
      res.status = inner.status == search::Status::Timeout ? MssStatus::Timeout
                                                           : MssStatus::ResourceLimit;
      res.wallTime = elapsed();
      return res;
    }

    if (inner.status == search::Status::Solved && inner.cost == *robotOpt) {
      // The defining approximation: this one plan decides the search.
      std::vector<std::string> plan = inner.planNames(updated);
      ValidityReport inRobot = validate_plan(prob.robot, plan);
      res.wallTime = elapsed();
      if (inRobot.valid()) {
        res.status = MssStatus::Solved;
        res.solution.explanation = subset;
        res.solution.taskPlan = plan;
        res.solution.taskCost = inner.cost;
        for (const auto& u : subset) res.solution.explanationCost += costOf(u);
        res.totalCost = res.solution.explanationCost + res.solution.taskCost;
      } else {
        res.status = MssStatus::ApproximationFailure;
      }
      return res;
    }

    // Expand: add one more update (subset growth is monotone in cost).
    for (std::size_t i = 0; i < updates.size(); ++i) {
      if (std::find(node.updates.begin(), node.updates.end(), static_cast<int>(i)) !=
          node.updates.end())
        continue;
      std::vector<int> nextIdx = node.updates;
      nextIdx.push_back(static_cast<int>(i));
      std::sort(nextIdx.begin(), nextIdx.end());
      std::vector<std::string> canon;
      for (int j : nextIdx) canon.push_back(updates[static_cast<std::size_t>(j)].canonical());
      std::string key;
      for (const auto& c : canon) key += c + "+";
      if (!seen.insert(key).second) continue;
      Rational cost(0);
      for (int j : nextIdx) cost += costOf(updates[static_cast<std::size_t>(j)]);
      open.push({cost, key, std::move(nextIdx)});
    }
  }
  res.status = MssStatus::ApproximationFailure;  // exhausted without a cost match
  res.wallTime = elapsed();
  return res;
}

}  // namespace eaplan::mss
