#include "eaplan/oracle.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace eaplan::oracle {

namespace {

using PQEntry = std::pair<Rational, int>;
struct PQCmp {
  bool operator()(const PQEntry& a, const PQEntry& b) const { return b.first < a.first; }
};

}  // namespace

StateSpace StateSpace::build(const PlanningTask& task, std::size_t stateCap) {
  StateSpace g;
  g.states.push_back(task.init);
  g.index[task.init] = 0;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    g.succ.emplace_back();
    State cur = g.states[i];  // copy: vector may grow
    for (std::size_t ai = 0; ai < task.actions.size(); ++ai) {
      const GroundAction& a = task.actions[ai];
      if (!applicable(cur, a, task)) continue;
      State next = apply(cur, a, task);
      auto [it, fresh] = g.index.try_emplace(next, static_cast<int>(g.states.size()));
      if (fresh) {
        g.states.push_back(std::move(next));
        if (g.states.size() > stateCap)
          throw CapExceededError("state-space cap exceeded (" + std::to_string(stateCap) + ")");
      }
      g.succ[i].push_back({static_cast<int>(ai), it->second});
    }
  }
  g.isGoal.resize(g.states.size());
  for (std::size_t i = 0; i < g.states.size(); ++i) g.isGoal[i] = task.goal.subsetOf(g.states[i]);
  return g;
}

std::vector<std::optional<Rational>> StateSpace::costToGo(const PlanningTask& task) const {
  // Reverse Dijkstra from all goal states.
  std::vector<std::vector<std::pair<int, Rational>>> pred(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    for (const auto& [ai, j] : succ[i])
      pred[static_cast<std::size_t>(j)].push_back(
          {static_cast<int>(i), task.actions[static_cast<std::size_t>(ai)].cost});
  std::vector<std::optional<Rational>> dist(states.size());
  std::priority_queue<PQEntry, std::vector<PQEntry>, PQCmp> q;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (isGoal[i]) {
      dist[i] = Rational(0);
      q.push({Rational(0), static_cast<int>(i)});
    }
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    if (!dist[static_cast<std::size_t>(v)].has_value() || *dist[static_cast<std::size_t>(v)] < d)
      continue;
    for (const auto& [u, c] : pred[static_cast<std::size_t>(v)]) {
      Rational nd = d + c;
      auto& du = dist[static_cast<std::size_t>(u)];
      if (!du.has_value() || nd < *du) {
        du = nd;
        q.push({nd, u});
      }
    }
  }
  return dist;
}

std::optional<Rational> dijkstra_cost(const PlanningTask& task, std::size_t stateCap) {
  StateSpace g = StateSpace::build(task, stateCap);
  std::vector<std::optional<Rational>> dist(g.states.size());
  std::priority_queue<PQEntry, std::vector<PQEntry>, PQCmp> q;
  dist[0] = Rational(0);
  q.push({Rational(0), 0});
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    auto uv = static_cast<std::size_t>(v);
    if (!dist[uv].has_value() || *dist[uv] < d) continue;
    if (g.isGoal[uv]) return d;
    for (const auto& [ai, w] : g.succ[uv]) {
      Rational nd = d + task.actions[static_cast<std::size_t>(ai)].cost;
      auto& dw = dist[static_cast<std::size_t>(w)];
      if (!dw.has_value() || nd < *dw) {
        dw = nd;
        q.push({nd, w});
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<std::string>> enumerate_optimal_plans(const PlanningTask& task,
                                                              const OracleCaps& caps) {
  StateSpace g = StateSpace::build(task, caps.stateCap);
  auto togo = g.costToGo(task);
  std::vector<std::vector<std::string>> out;
  if (!togo[0].has_value()) return out;
  const Rational cstar = *togo[0];

  // Walk only edges on optimal paths: g + c(a) + h*(next) == c*.
  std::vector<std::string> names;
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int v, const Rational& gcost) -> void {
    if (out.size() >= caps.solutionCap)
      throw CapExceededError("optimal-plan enumeration cap exceeded");
    auto uv = static_cast<std::size_t>(v);
    if (g.isGoal[uv] && gcost == cstar) out.push_back(names);
    if (names.size() >= caps.planLenCap) return;
    for (const auto& [ai, w] : g.succ[uv]) {
      const auto& act = task.actions[static_cast<std::size_t>(ai)];
      Rational ng = gcost + act.cost;
      const auto& h = togo[static_cast<std::size_t>(w)];
      if (!h.has_value() || ng + *h != cstar) continue;
      names.push_back(act.name);
      self(self, w, ng);
      names.pop_back();
    }
  };
  dfs(dfs, 0, Rational(0));
  return out;
}

namespace {

// Product execution of one plan in two models: a step is applicable iff it
// is applicable in both, and a goal needs both goals to hold.
struct PairKey {
  State a, b;
  bool operator==(const PairKey& o) const { return a == o.a && b == o.b; }
};
struct PairHash {
  std::size_t operator()(const PairKey& k) const {
    return k.a.hashValue() * 1000003u ^ k.b.hashValue();
  }
};

// Dijkstra over the product of robot and updated-observer executions.
std::optional<Rational> pairDijkstra(const PlanningTask& robot, const PlanningTask& human,
                                     std::size_t stateCap) {
  std::unordered_map<PairKey, Rational, PairHash> dist;
  using Entry = std::pair<Rational, PairKey>;
  struct Cmp {
    bool operator()(const Entry& x, const Entry& y) const { return y.first < x.first; }
  };
  std::priority_queue<Entry, std::vector<Entry>, Cmp> q;
  PairKey start{robot.init, human.init};
  dist[start] = Rational(0);
  q.push({Rational(0), start});
  while (!q.empty()) {
    auto [d, key] = q.top();
    q.pop();
    auto it = dist.find(key);
    if (it == dist.end() || it->second < d) continue;
    if (robot.goal.subsetOf(key.a) && human.goal.subsetOf(key.b)) return d;
    for (std::size_t ai = 0; ai < robot.actions.size(); ++ai) {
      const GroundAction& ra = robot.actions[ai];
      const GroundAction* ha = human.findAction(ra.name);
      if (ha == nullptr) continue;
      if (!applicable(key.a, ra, robot) || !applicable(key.b, *ha, human)) continue;
      PairKey next{apply(key.a, ra, robot), apply(key.b, *ha, human)};
      Rational nd = d + ra.cost;
      auto [jt, fresh] = dist.try_emplace(next, nd);
      if (!fresh) {
        if (!(nd < jt->second)) continue;
        jt->second = nd;
      } else if (dist.size() > stateCap) {
        throw CapExceededError("pair state cap exceeded");
      }
      q.push({nd, next});
    }
  }
  return std::nullopt;
}

std::vector<std::vector<ea::ModelUpdate>> allSubsets(const std::vector<ea::ModelUpdate>& all) {
  if (all.size() > 20) throw CapExceededError("model diff too large for subset enumeration");
  std::vector<std::vector<ea::ModelUpdate>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
    std::vector<ea::ModelUpdate> s;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(all[i]);
    subsets.push_back(std::move(s));
  }
  return subsets;
}

}  // namespace

std::vector<OracleSolution> enumerate_ea_solutions(const ea::EaProblem& prob,
                                                   const Rational& explanationCost,
                                                   const OracleCaps& caps) {
  ea::ModelDiff diff = ea::diff_models(prob);
  std::vector<OracleSolution> out;
  for (const auto& subset : allSubsets(diff.all())) {
    Rational ecost = explanationCost * Rational(static_cast<long long>(subset.size()));
    if (ecost > caps.costCap) continue;
    PlanningTask updated = ea::apply_updates(prob.human, subset);
    Rational budget = caps.costCap - ecost;
    // DFS over product executions, collecting every jointly valid plan.
    std::vector<std::string> names;
    auto dfs = [&](auto&& self, const State& sr, const State& sh, const Rational& g) -> void {
      if (prob.robot.goal.subsetOf(sr) && updated.goal.subsetOf(sh)) {
        out.push_back({subset, names, ecost, g});
        if (out.size() > caps.solutionCap)
          throw CapExceededError("solution enumeration cap exceeded");
      }
      if (names.size() >= caps.planLenCap) return;
      for (std::size_t ai = 0; ai < prob.robot.actions.size(); ++ai) {
        const GroundAction& ra = prob.robot.actions[ai];
        const GroundAction* ha = updated.findAction(ra.name);
        Rational ng = g + ra.cost;
        if (ng > budget) continue;
        if (!applicable(sr, ra, prob.robot) || !applicable(sh, *ha, updated)) continue;
        names.push_back(ra.name);
        self(self, apply(sr, ra, prob.robot), apply(sh, *ha, updated), ng);
        names.pop_back();
      }
    };
    dfs(dfs, prob.robot.init, updated.init, Rational(0));
  }
  return out;
}

std::optional<Rational> min_valid_total_cost(const ea::EaProblem& prob,
                                             const Rational& explanationCost,
                                             const OracleCaps& caps) {
  ea::ModelDiff diff = ea::diff_models(prob);
  std::optional<Rational> best;
  for (const auto& subset : allSubsets(diff.all())) {
    Rational ecost = explanationCost * Rational(static_cast<long long>(subset.size()));
    if (best.has_value() && !(ecost < *best)) continue;
    PlanningTask updated = ea::apply_updates(prob.human, subset);
    auto planCost = pairDijkstra(prob.robot, updated, caps.stateCap);
    if (!planCost.has_value()) continue;
    Rational total = ecost + *planCost;
    if (!best.has_value() || total < *best) best = total;
  }
  return best;
}

std::optional<std::vector<ea::ModelUpdate>> mce(const ea::EaProblem& prob,
                                                const std::vector<std::string>& plan,
                                                const Rational& explanationCost,
                                                const OracleCaps& caps, Rational* costOut) {
  ValidityReport inRobot = validate_plan(prob.robot, plan);
  auto robotOpt = dijkstra_cost(prob.robot, caps.stateCap);
  if (!inRobot.valid() || !robotOpt.has_value() || *robotOpt != inRobot.totalCost)
    return std::nullopt;  // MCEs are defined for robot-optimal plans

  ea::ModelDiff diff = ea::diff_models(prob);
  auto subsets = allSubsets(diff.all());
  // Cheapest first, lexicographic canonical key among ties.
  std::vector<std::pair<std::pair<Rational, std::string>, std::size_t>> order;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    Rational c = explanationCost * Rational(static_cast<long long>(subsets[i].size()));
    std::string key;
    for (const auto& u : subsets[i]) key += u.canonical() + "+";
    order.push_back({{c, key}, i});
  }
  std::sort(order.begin(), order.end());
  for (const auto& [rank, idx] : order) {
    const auto& subset = subsets[idx];
    PlanningTask updated = ea::apply_updates(prob.human, subset);
    ValidityReport rep = validate_plan(updated, plan);
    if (!rep.valid()) continue;
    auto opt = dijkstra_cost(updated, caps.stateCap);
    if (opt.has_value() && *opt == rep.totalCost) {
      if (costOut != nullptr) *costOut = rank.first;
      return subset;
    }
  }
  return std::nullopt;  // unreachable: the full diff restores the robot model
}

DeltaResult exact_delta(const PlanningTask& task, const OracleCaps& caps) {
  StateSpace g = StateSpace::build(task, caps.stateCap);
  // Two smallest distinct walk costs per state.
  std::vector<std::vector<Rational>> labels(g.states.size());
  using Entry = std::pair<Rational, int>;
  std::priority_queue<Entry, std::vector<Entry>, PQCmp> q;
  auto offer = [&](int v, const Rational& d) {
    auto& ls = labels[static_cast<std::size_t>(v)];
    for (const auto& x : ls)
      if (x == d) return false;
    if (ls.size() < 2) {
      ls.push_back(d);
      std::sort(ls.begin(), ls.end());
      return true;
    }
    if (d < ls[1]) {
      ls[1] = d;
      std::sort(ls.begin(), ls.end());
      return true;
    }
    return false;
  };
  offer(0, Rational(0));
  q.push({Rational(0), 0});
  std::set<Rational> goalCosts;
  while (!q.empty()) {
    auto [d, v] = q.top();
    q.pop();
    auto uv = static_cast<std::size_t>(v);
    bool live = false;
    for (const auto& x : labels[uv]) live |= x == d;
    if (!live) continue;
    if (g.isGoal[uv]) goalCosts.insert(d);
    if (goalCosts.size() >= 2) break;
    for (const auto& [ai, w] : g.succ[uv]) {
      Rational nd = d + task.actions[static_cast<std::size_t>(ai)].cost;
      if (nd > caps.costCap) continue;
      if (offer(w, nd)) q.push({nd, w});
    }
  }
  if (goalCosts.empty()) throw CapExceededError("no valid plan within caps");
  if (goalCosts.size() < 2) {
    // No second distinct plan cost within the caps.
    return {caps.costCap - *goalCosts.begin(), true};
  }
  auto it = goalCosts.begin();
  Rational c1 = *it;
  ++it;
  return {*it - c1, false};
}

}  // namespace eaplan::oracle
