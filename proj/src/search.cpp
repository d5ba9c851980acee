#include "eaplan/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <unordered_map>

namespace eaplan::search {

std::string to_string(Status s) {
  switch (s) {
    case Status::Solved: return "solved";
    case Status::ProvenUnsolvable: return "proven-unsolvable";
    case Status::Timeout: return "timeout";
    case Status::ResourceLimit: return "resource-limit";
  }
  return "?";
}

std::vector<std::string> Result::planNames(const PlanningTask& task) const {
  std::vector<std::string> names;
  names.reserve(plan.size());
  for (int id : plan) names.push_back(task.actions[static_cast<std::size_t>(id)].name);
  return names;
}

namespace {

// Fixpoint engine for h_max / h_add over the delete relaxation. The static
// consumer lists are built once and reused across states.
//
// Implication preconditions (guard -> consequent) enter the relaxation as
// OR-nodes: when the guard holds in the evaluated state, the implication is
// charged min(h(consequent), cheapest cost of any guard-deleting action).
// Either route is genuinely required by any real plan, so the bound stays
// admissible; when the guard is false the implication contributes nothing.
// Conditional adds are treated as unconditional, which only relaxes further.
class RelaxEngine {
 public:
  explicit RelaxEngine(const PlanningTask& task) : task_(task) {
    const std::size_t nf = task.numFluents();
    const std::size_t na = task.actions.size();
    consumers_.resize(nf);
    precCount_.resize(na, 0);
    adds_.resize(na);

    // Cheapest deleter per fluent (conditions ignored: optimistic).
    std::vector<std::optional<Rational>> delCost(nf);
    for (const auto& a : task.actions)
      for (const auto& e : a.effects)
        e.del.forEachSet([&](int f) {
          auto& c = delCost[static_cast<std::size_t>(f)];
          if (!c.has_value() || a.cost < *c) c = a.cost;
        });

    // One virtual OR-fluent per distinct (guard, consequent) pair.
    std::map<std::pair<int, int>, int> orIndex;
    for (std::size_t ai = 0; ai < na; ++ai) {
      const auto& a = task.actions[ai];
      int cnt = 0;
      a.hardPrec.forEachSet([&](int f) {
        consumers_[static_cast<std::size_t>(f)].push_back(static_cast<int>(ai));
        ++cnt;
      });
      for (const auto& ip : a.implPrec) {
        auto [it, fresh] = orIndex.try_emplace({ip.guard, ip.consequent},
                                               static_cast<int>(orNodes_.size()));
        if (fresh) {
          orNodes_.push_back({ip.guard, ip.consequent,
                              delCost[static_cast<std::size_t>(ip.guard)]});
          orConsumers_.emplace_back();
        }
        orConsumers_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(ai));
        ++cnt;
      }
      precCount_[ai] = cnt;
      for (const auto& e : a.effects)
        e.add.forEachSet([&](int f) { adds_[ai].push_back(f); });
    }
    orByConsequent_.resize(nf);
    for (std::size_t oi = 0; oi < orNodes_.size(); ++oi)
      orByConsequent_[static_cast<std::size_t>(orNodes_[oi].consequent)].push_back(
          static_cast<int>(oi));
  }

  template <bool UseMax>
  std::optional<Rational> value(const State& s) {
    const std::size_t nf = task_.numFluents();
    const std::size_t na = task_.actions.size();
    const std::size_t no = orNodes_.size();
    fval_.assign(nf + no, std::nullopt);
    missing_ = precCount_;
    acc_.assign(na, Rational(0));

    using QE = std::pair<Rational, int>;
    auto cmp = [](const QE& a, const QE& b) { return b.first < a.first; };
    std::priority_queue<QE, std::vector<QE>, decltype(cmp)> q(cmp);

    auto reach = [&](std::size_t node, const Rational& v) {
      auto& cur = fval_[node];
      if (!cur.has_value() || v < *cur) {
        cur = v;
        q.push({v, static_cast<int>(node)});
      }
    };
    auto fireAction = [&](std::size_t ai) {
      Rational base = acc_[ai] + task_.actions[ai].cost;
      for (int f : adds_[ai]) reach(static_cast<std::size_t>(f), base);
    };

    s.forEachSet([&](int f) { reach(static_cast<std::size_t>(f), Rational(0)); });
    for (std::size_t oi = 0; oi < no; ++oi) {
      const OrNode& on = orNodes_[oi];
      if (!s.test(on.guard)) {
        reach(nf + oi, Rational(0));  // vacuous here
      } else if (on.guardDeleteCost.has_value()) {
        reach(nf + oi, *on.guardDeleteCost);
      }
      // the consequent route feeds in when the consequent fluent settles
    }
    for (std::size_t ai = 0; ai < na; ++ai)
      if (missing_[ai] == 0) fireAction(ai);

    while (!q.empty()) {
      auto [v, node] = q.top();
      q.pop();
      auto un = static_cast<std::size_t>(node);
      const auto& cur = fval_[un];
      if (!cur.has_value() || *cur < v) continue;  // stale entry
      auto feed = [&](int ai) {
        auto uai = static_cast<std::size_t>(ai);
        if constexpr (UseMax) {
          if (v > acc_[uai]) acc_[uai] = v;
        } else {
          acc_[uai] += v;
        }
        if (--missing_[uai] == 0) fireAction(uai);
      };
      if (un < nf) {
        for (int ai : consumers_[un]) feed(ai);
        for (int oi : orByConsequent_[un]) reach(nf + static_cast<std::size_t>(oi), v);
      } else {
        for (int ai : orConsumers_[un - nf]) feed(ai);
      }
    }

    Rational total(0);
    bool any = false;
    bool unreachable = false;
    task_.goal.forEachSet([&](int g) {
      const auto& v = fval_[static_cast<std::size_t>(g)];
      if (!v.has_value()) {
        unreachable = true;
        return;
      }
      if constexpr (UseMax) {
        if (!any || *v > total) total = *v;
      } else {
        total += *v;
      }
      any = true;
    });
    if (unreachable) return std::nullopt;
    return total;
  }

 private:
  struct OrNode {
    int guard;
    int consequent;
    std::optional<Rational> guardDeleteCost;
  };

  const PlanningTask& task_;
  std::vector<std::vector<int>> consumers_;
  std::vector<int> precCount_;
  std::vector<std::vector<int>> adds_;
  std::vector<OrNode> orNodes_;
  std::vector<std::vector<int>> orConsumers_;
  std::vector<std::vector<int>> orByConsequent_;
  // per-evaluation scratch
  std::vector<std::optional<Rational>> fval_;
  std::vector<int> missing_;
  std::vector<Rational> acc_;
};

struct Node {
  State state;
  Rational g;
  int parent;
  int actionId;
};

struct OpenEntry {
  Rational f;
  Rational h;
  std::uint64_t seq;
  int node;
};

struct OpenCmp {
  // min-heap: lower f, then lower h, then FIFO by generation order
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return b.f < a.f;
    if (a.h != b.h) return b.h < a.h;
    return a.seq > b.seq;
  }
};

std::vector<int> reconstruct(const std::vector<Node>& arena, int node) {
  std::vector<int> plan;
  for (int cur = node; arena[static_cast<std::size_t>(cur)].parent >= 0;
       cur = arena[static_cast<std::size_t>(cur)].parent)
    plan.push_back(arena[static_cast<std::size_t>(cur)].actionId);
  std::reverse(plan.begin(), plan.end());
  return plan;
}

}  // namespace

std::optional<Rational> hmax_value(const PlanningTask& task, const State& s) {
  return RelaxEngine(task).value<true>(s);
}

std::optional<Rational> hadd_value(const PlanningTask& task, const State& s) {
  return RelaxEngine(task).value<false>(s);
}

Result astar(const PlanningTask& task, HeuristicKind hk, const Limits& limits,
             const GoalJudge& judge) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  Result res;
  RelaxEngine relax(task);
  auto evalH = [&](const State& s) -> std::optional<Rational> {
    switch (hk) {
      case HeuristicKind::Blind: return Rational(0);
      case HeuristicKind::HMax: return relax.value<true>(s);
      case HeuristicKind::HAdd: return relax.value<false>(s);
    }
    return Rational(0);
  };

  std::vector<Node> arena;
  std::unordered_map<State, Rational> bestG;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenCmp> open;
  std::uint64_t seq = 0;

  auto h0 = evalH(task.init);
  arena.push_back({task.init, Rational(0), -1, -1});
  bestG.emplace(task.init, Rational(0));
  if (h0.has_value()) open.push({*h0, *h0, seq++, 0});
  res.generated = 1;

  // Best judged objective so far (for penalty-style judges).
  std::optional<Rational> bestObjective;
  std::vector<int> bestPlan;

  auto finishWithBest = [&](Status fallback) {
    res.wallTime = elapsed();
    if (bestObjective.has_value()) {
      res.status = Status::Solved;
      res.plan = bestPlan;
      res.cost = *bestObjective;
    } else {
      res.status = fallback;
    }
    return res;
  };

  while (!open.empty()) {
    if (limits.maxSeconds > 0 && (res.expanded & 255u) == 0 && elapsed() > limits.maxSeconds)
      return finishWithBest(Status::Timeout);
    if (limits.maxExpansions > 0 && res.expanded >= limits.maxExpansions)
      return finishWithBest(Status::ResourceLimit);
    if (limits.maxMemoryMB > 0) {
      std::size_t bytes = arena.size() * (sizeof(Node) + task.numFluents() / 8 + 48);
      if (bytes / (1024 * 1024) >= limits.maxMemoryMB)
        return finishWithBest(Status::ResourceLimit);
    }

    OpenEntry top = open.top();
    open.pop();
    Node& node = arena[static_cast<std::size_t>(top.node)];
    {
      auto it = bestG.find(node.state);
      if (it != bestG.end() && it->second < node.g) continue;  // stale
    }

    // Frontier can no longer beat the recorded objective.
    if (bestObjective.has_value() && *bestObjective <= top.f) return finishWithBest(Status::Solved);

    if (task.goal.subsetOf(node.state)) {
      if (judge == nullptr) {
        res.status = Status::Solved;
        res.plan = reconstruct(arena, top.node);
        res.cost = node.g;
        res.wallTime = elapsed();
        return res;
      }
      std::vector<int> plan = reconstruct(arena, top.node);
      std::optional<Rational> objective = judge(node.state, node.g, plan);
      if (objective.has_value()) {
        if (*objective == node.g) {  // no surcharge: optimal, stop here
          res.status = Status::Solved;
          res.plan = std::move(plan);
          res.cost = node.g;
          res.wallTime = elapsed();
          return res;
        }
        if (!bestObjective.has_value() || *objective < *bestObjective) {
          bestObjective = *objective;
          bestPlan = std::move(plan);
        }
      }
      // Either rejected or penalized: expand as usual (goal states produced
      // by the compilation are terminal, but plain tasks may continue).
    }

    ++res.expanded;
    const Rational parentG = node.g;
    const State parentState = node.state;  // copy: arena may reallocate
    for (std::size_t ai = 0; ai < task.actions.size(); ++ai) {
      const GroundAction& act = task.actions[ai];
      if (!applicable(parentState, act, task)) continue;
      State succ = apply(parentState, act, task);
      Rational g = parentG + act.cost;
      auto it = bestG.find(succ);
      if (it != bestG.end() && !(g < it->second)) continue;
      auto h = evalH(succ);
      ++res.generated;
      if (!h.has_value()) continue;  // dead end under admissible relaxation
      if (it == bestG.end())
        bestG.emplace(succ, g);
      else
        it->second = g;
      arena.push_back({std::move(succ), g, top.node, static_cast<int>(ai)});
      open.push({g + *h, *h, seq++, static_cast<int>(arena.size() - 1)});
    }
  }
  return finishWithBest(Status::ProvenUnsolvable);
}

std::optional<Rational> optimal_cost(const PlanningTask& task, const Limits& limits,
                                     Status* statusOut) {
  Result r = astar(task, HeuristicKind::HMax, limits);
  if (statusOut != nullptr) *statusOut = r.status;
  if (r.status == Status::Solved) return r.cost;
  return std::nullopt;
}

}  // namespace eaplan::search
