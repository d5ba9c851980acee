#include "eaplan/ground.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace eaplan::ground {

namespace {

using pddl::Atom;
using pddl::LiftedDomain;
using pddl::LiftedProblem;

std::string joinAtom(const Atom& a, const std::unordered_map<std::string, std::string>& sub) {
  std::string s = a.pred;
  for (const auto& arg : a.args) {
    s += " ";
    if (!arg.empty() && arg[0] == '?') {
      auto it = sub.find(arg);
      if (it == sub.end()) throw GroundingError("unbound variable " + arg + " in " + a.pred);
      s += it->second;
    } else {
      s += arg;
    }
  }
  return s;
}

struct GroundActionDraft {
  std::string name;
  std::vector<std::string> prec;
  std::vector<std::pair<std::string, std::string>> implPrec;  // guard -> consequent
  std::vector<std::pair<std::vector<std::string>, std::pair<std::string, bool>>> effects;
  Rational cost{1};
};

}  // namespace

PlanningTask ground(const LiftedDomain& dom, const LiftedProblem& prob, const GroundConfig& cfg,
                    GroundStats* stats) {
  // Objects per type (respecting the hierarchy).
  std::vector<pddl::TypedName> objects = prob.objects;
  objects.insert(objects.end(), dom.constants.begin(), dom.constants.end());
  auto objectsOfType = [&](const std::string& type) {
    std::vector<std::string> out;
    for (const auto& o : objects)
      if (dom.isSubtype(o.type, type)) out.push_back(o.name);
    std::sort(out.begin(), out.end());
    return out;
  };

  // Enumerate the fluent universe from predicates over typed objects.
  std::set<std::string> fluentNames;
  for (const auto& p : dom.predicates) {
    std::vector<std::vector<std::string>> choices;
    for (const auto& param : p.params) choices.push_back(objectsOfType(param.type));
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::string name = p.name;
      bool ok = true;
      for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i].empty()) { ok = false; break; }
        name += " " + choices[i][idx[i]];
      }
      if (ok) fluentNames.insert(name);
      // advance
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (choices[k].empty()) break;
        if (++idx[k] < choices[k].size()) break;
        idx[k] = 0;
      }
      if (choices.empty() || k == idx.size()) break;
      if (k < idx.size() && choices[k].empty()) break;
    }
  }

  // Enumerate ground actions by typed substitution.
  std::vector<GroundActionDraft> drafts;
  for (const auto& schema : dom.actions) {
    std::vector<std::vector<std::string>> choices;
    for (const auto& param : schema.params) choices.push_back(objectsOfType(param.type));
    bool anyEmpty = false;
    for (const auto& c : choices) anyEmpty |= c.empty();
    if (anyEmpty) continue;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::unordered_map<std::string, std::string> sub;
      std::string name = schema.name;
      for (std::size_t i = 0; i < choices.size(); ++i) {
        sub[schema.params[i].name] = choices[i][idx[i]];
        name += " " + choices[i][idx[i]];
      }
      bool unequalOk = true;
      for (const auto& [x, y] : schema.inequalities) {
        auto lookup = [&](const std::string& t) {
          auto it = sub.find(t);
          return it == sub.end() ? t : it->second;
        };
        if (lookup(x) == lookup(y)) unequalOk = false;
      }
      if (!unequalOk) {
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < choices[k].size()) break;
          idx[k] = 0;
        }
        if (choices.empty() || k == idx.size()) break;
        continue;
      }
      GroundActionDraft d;
      d.name = name;
      d.cost = schema.cost;
      for (const auto& at : schema.precondition) d.prec.push_back(joinAtom(at, sub));
      for (const auto& imp : schema.implPrecs)
        d.implPrec.push_back({joinAtom(imp.guard, sub), joinAtom(imp.consequent, sub)});
      for (const auto& e : schema.effects) {
        std::vector<std::string> cond;
        for (const auto& c : e.condition) cond.push_back(joinAtom(c, sub));
        d.effects.push_back({cond, {joinAtom(e.atom, sub), e.isDelete}});
      }
      drafts.push_back(std::move(d));
      if (drafts.size() > cfg.actionCap)
        throw ResourceError("ground action cap exceeded (" + std::to_string(cfg.actionCap) +
                            "); raise --action-cap or shrink the instance");
      std::size_t k = 0;
      for (; k < idx.size(); ++k) {
        if (++idx[k] < choices[k].size()) break;
        idx[k] = 0;
      }
      if (choices.empty() || k == idx.size()) break;
    }
  }
  if (stats != nullptr) stats->enumeratedActions = drafts.size();

  // Apply cost overrides (schema or ground name).
  for (auto& d : drafts) {
    std::string schemaName = d.name.substr(0, d.name.find(' '));
    auto it = cfg.costOverrides.find(d.name);
    if (it == cfg.costOverrides.end()) it = cfg.costOverrides.find(schemaName);
    if (it != cfg.costOverrides.end()) d.cost = it->second;
  }

  std::sort(drafts.begin(), drafts.end(),
            [](const GroundActionDraft& a, const GroundActionDraft& b) { return a.name < b.name; });

  // Optional delete-relaxed reachability pruning.
  if (cfg.pruneUnreachable) {
    std::set<std::string> reached;
    for (const auto& at : prob.init) {
      std::string n = at.pred;
      for (const auto& arg : at.args) n += " " + arg;
      reached.insert(n);
    }
    bool changed = true;
    std::vector<bool> applied(drafts.size(), false);
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < drafts.size(); ++i) {
        if (applied[i]) continue;
        bool ok = true;
        for (const auto& p : drafts[i].prec)
          if (reached.count(p) == 0) { ok = false; break; }
        if (!ok) continue;
        applied[i] = true;
        changed = true;
        for (const auto& e : drafts[i].effects)
          if (!e.second.second) reached.insert(e.second.first);
      }
    }
    std::vector<GroundActionDraft> kept;
    for (std::size_t i = 0; i < drafts.size(); ++i)
      if (applied[i]) kept.push_back(std::move(drafts[i]));
    if (stats != nullptr) stats->prunedActions = drafts.size() - kept.size();
    drafts = std::move(kept);
  }

  PlanningTask task;
  task.name = dom.name + "/" + prob.name;
  task.hasCosts = dom.hasTotalCost;
  std::vector<std::string> names(fluentNames.begin(), fluentNames.end());
  for (std::size_t i = 0; i < names.size(); ++i)
    task.fluents.push_back({static_cast<int>(i), names[i], FluentRole::Task});
  task.init = Bits(names.size());
  task.goal = Bits(names.size());
  task.reindex();

  auto requireId = [&](const std::string& n, const std::string& where) {
    int id = task.fluentId(n);
    if (id < 0) throw GroundingError("unknown ground atom (" + n + ") in " + where);
    return id;
  };

  for (const auto& at : prob.init) {
    std::string n = at.pred;
    for (const auto& arg : at.args) n += " " + arg;
    task.init.set(requireId(n, "init"));
  }
  for (const auto& at : prob.goal) {
    std::string n = at.pred;
    for (const auto& arg : at.args) n += " " + arg;
    task.goal.set(requireId(n, "goal"));
  }

  for (auto& d : drafts) {
    GroundAction a;
    a.name = d.name;
    a.cost = d.cost;
    a.hardPrec = task.emptySet();
    for (const auto& p : d.prec) a.hardPrec.set(requireId(p, d.name));
    for (const auto& [g, c] : d.implPrec)
      a.implPrec.push_back({requireId(g, d.name), requireId(c, d.name)});
    // Group effects by condition; the unconditional group always exists and
    // comes first, conditional groups follow in sorted-key order.
    std::map<std::string, EffectGroup> byCond;
    EffectGroup uncond{task.emptySet(), task.emptySet(), task.emptySet()};
    for (const auto& e : d.effects) {
      int id = requireId(e.second.first, d.name);
      if (e.first.empty()) {
        if (e.second.second) uncond.del.set(id); else uncond.add.set(id);
      } else {
        std::vector<std::string> cond = e.first;
        std::sort(cond.begin(), cond.end());
        std::string key;
        for (const auto& c : cond) key += c + "|";
        auto [it, fresh] = byCond.try_emplace(key, EffectGroup{task.emptySet(), task.emptySet(),
                                                               task.emptySet()});
        if (fresh)
          for (const auto& c : cond) it->second.condition.set(requireId(c, d.name));
        if (e.second.second) it->second.del.set(id); else it->second.add.set(id);
      }
    }
    a.effects.push_back(std::move(uncond));
    for (auto& [key, grp] : byCond) a.effects.push_back(std::move(grp));
    task.actions.push_back(std::move(a));
  }
  task.reindex();
  task.checkInvariants();
  return task;
}

namespace {

// Identifier-safe flattening for serialization: "on a b" -> "on_a_b".
std::string flat(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(c == ' ' ? '_' : c);
  return out;
}

}  // namespace

SerializedTask serialize_task(const PlanningTask& task) {
  bool anyImpl = false, anyCond = false;
  for (const auto& a : task.actions) {
    anyImpl |= !a.implPrec.empty();
    anyCond |= a.effects.size() > 1;
  }
  std::ostringstream os;
  std::string domName = flat(task.name.substr(0, task.name.find('/')));
  os << "(define (domain " << domName << ")\n";
  os << "  (:requirements :strips";
  if (anyImpl) os << " :negative-preconditions :disjunctive-preconditions";
  if (anyCond) os << " :conditional-effects";
  if (task.hasCosts) os << " :action-costs";
  os << ")\n  (:predicates\n";
  std::vector<std::string> names;
  for (const auto& f : task.fluents) names.push_back(flat(f.name));
  std::sort(names.begin(), names.end());
  for (const auto& n : names) os << "    (" << n << ")\n";
  os << "  )\n";
  if (task.hasCosts) os << "  (:functions (total-cost))\n";

  std::vector<int> order(task.actions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return task.actions[static_cast<std::size_t>(x)].name <
           task.actions[static_cast<std::size_t>(y)].name;
  });
  auto emitSet = [&](const Bits& b, const char* sep, bool negate) {
    std::vector<std::string> xs;
    b.forEachSet([&](int id) { xs.push_back(flat(task.fluents[static_cast<std::size_t>(id)].name)); });
    std::sort(xs.begin(), xs.end());
    std::string out;
    for (const auto& x : xs) {
      out += sep;
      if (negate) out += "(not ";
      out += "(" + x + ")";
      if (negate) out += ")";
    }
    return out;
  };
  for (int id : order) {
    const GroundAction& a = task.actions[static_cast<std::size_t>(id)];
    os << "  (:action " << flat(a.name) << "\n    :parameters ()\n";
    os << "    :precondition (and" << emitSet(a.hardPrec, " ", false);
    std::vector<std::string> imps;
    for (const auto& ip : a.implPrec) {
      imps.push_back("(implies (" + flat(task.fluents[static_cast<std::size_t>(ip.guard)].name) +
                     ") (" + flat(task.fluents[static_cast<std::size_t>(ip.consequent)].name) +
                     "))");
    }
    std::sort(imps.begin(), imps.end());
    for (const auto& s : imps) os << "\n      " << s;
    os << ")\n    :effect (and";
    os << emitSet(a.effects[0].del, "\n      ", true);
    os << emitSet(a.effects[0].add, "\n      ", false);
    std::vector<std::string> condParts;
    for (std::size_t g = 1; g < a.effects.size(); ++g) {
      const auto& e = a.effects[g];
      std::string part = "(when (and" + emitSet(e.condition, " ", false) + ") (and" +
                         emitSet(e.del, " ", true) + emitSet(e.add, " ", false) + "))";
      condParts.push_back(part);
    }
    std::sort(condParts.begin(), condParts.end());
    for (const auto& p : condParts) os << "\n      " << p;
    if (task.hasCosts) os << "\n      (increase (total-cost) " << a.cost.str() << ")";
    os << ")\n  )\n";
  }
  os << ")\n";

  std::ostringstream ps;
  std::string probName = flat(task.name.substr(task.name.find('/') + 1));
  ps << "(define (problem " << probName << ")\n  (:domain " << domName << ")\n";
  ps << "  (:init" << [&] {
    std::vector<std::string> xs;
    task.init.forEachSet(
        [&](int id) { xs.push_back(flat(task.fluents[static_cast<std::size_t>(id)].name)); });
    std::sort(xs.begin(), xs.end());
    std::string out;
    for (const auto& x : xs) out += "\n    (" + x + ")";
    return out;
  }();
  if (task.hasCosts) ps << "\n    (= (total-cost) 0)";
  ps << "\n  )\n  (:goal (and" << [&] {
    std::vector<std::string> xs;
    task.goal.forEachSet(
        [&](int id) { xs.push_back(flat(task.fluents[static_cast<std::size_t>(id)].name)); });
    std::sort(xs.begin(), xs.end());
    std::string out;
    for (const auto& x : xs) out += " (" + x + ")";
    return out;
  }() << "))\n";
  if (task.hasCosts) ps << "  (:metric minimize (total-cost))\n";
  ps << ")\n";
  return {os.str(), ps.str()};
}

}  // namespace eaplan::ground
