#include "eaplan/ea.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace eaplan::ea {

namespace {

constexpr const char* kNeverTrue = "ea_never_true";
constexpr const char* kInitSentinel = "ea_init";
constexpr const char* kGoalSentinel = "ea_goal";
constexpr const char* kStarted = "ea_started";

std::string flat(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(c == ' ' ? '_' : c);
  return out;
}

std::string wrapped(const std::string& name) { return "(" + name + ")"; }

}  // namespace

bool is_plus_kind(UpdateKind k) {
  switch (k) {
    case UpdateKind::InitAdd:
    case UpdateKind::GoalAdd:
    case UpdateKind::PrecAdd:
    case UpdateKind::AddEffAdd:
    case UpdateKind::DelEffAdd:
      return true;
    default:
      return false;
  }
}

std::string kind_name(UpdateKind k) {
  switch (k) {
    case UpdateKind::InitAdd: return "init-add";
    case UpdateKind::InitRemove: return "init-remove";
    case UpdateKind::GoalAdd: return "goal-add";
    case UpdateKind::GoalRemove: return "goal-remove";
    case UpdateKind::PrecAdd: return "prec-add";
    case UpdateKind::PrecRemove: return "prec-remove";
    case UpdateKind::AddEffAdd: return "addeff-add";
    case UpdateKind::AddEffRemove: return "addeff-remove";
    case UpdateKind::DelEffAdd: return "deleff-add";
    case UpdateKind::DelEffRemove: return "deleff-remove";
  }
  return "?";
}

std::optional<UpdateKind> kind_from_name(const std::string& name) {
  static const std::vector<UpdateKind> all = {
      UpdateKind::InitAdd,   UpdateKind::InitRemove,   UpdateKind::GoalAdd,
      UpdateKind::GoalRemove, UpdateKind::PrecAdd,     UpdateKind::PrecRemove,
      UpdateKind::AddEffAdd, UpdateKind::AddEffRemove, UpdateKind::DelEffAdd,
      UpdateKind::DelEffRemove};
  for (auto k : all)
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

std::string ModelUpdate::canonical() const {
  bool plus = is_plus_kind(kind);
  std::string verb = plus ? "add-" : "remove-";
  std::string link = plus ? "-to-" : "-from-";
  switch (kind) {
    case UpdateKind::InitAdd:
    case UpdateKind::InitRemove:
      return verb + wrapped(fluent) + link + "I";
    case UpdateKind::GoalAdd:
    case UpdateKind::GoalRemove:
      return verb + wrapped(fluent) + link + "G";
    case UpdateKind::PrecAdd:
    case UpdateKind::PrecRemove:
      return verb + wrapped(fluent) + link + "prec-of-" + wrapped(action);
    case UpdateKind::AddEffAdd:
    case UpdateKind::AddEffRemove:
      return verb + wrapped(fluent) + link + "adds-of-" + wrapped(action);
    case UpdateKind::DelEffAdd:
    case UpdateKind::DelEffRemove:
      return verb + wrapped(fluent) + link + "dels-of-" + wrapped(action);
  }
  return "?";
}

std::string ModelUpdate::metaFluentName() const {
  std::string sign = is_plus_kind(kind) ? "mu_plus_" : "mu_minus_";
  std::string field;
  switch (kind) {
    case UpdateKind::InitAdd:
    case UpdateKind::InitRemove: field = "init"; break;
    case UpdateKind::GoalAdd:
    case UpdateKind::GoalRemove: field = "goal"; break;
    case UpdateKind::PrecAdd:
    case UpdateKind::PrecRemove: field = "prec"; break;
    case UpdateKind::AddEffAdd:
    case UpdateKind::AddEffRemove: field = "adds"; break;
    case UpdateKind::DelEffAdd:
    case UpdateKind::DelEffRemove: field = "dels"; break;
  }
  std::string name = sign + field + "__";
  if (!action.empty()) name += flat(action) + "__";
  return name + flat(fluent);
}

std::vector<ModelUpdate> ModelDiff::all() const {
  std::vector<ModelUpdate> out = plus;
  out.insert(out.end(), minus.begin(), minus.end());
  std::sort(out.begin(), out.end(), [](const ModelUpdate& a, const ModelUpdate& b) {
    return a.canonical() < b.canonical();
  });
  return out;
}

bool ModelDiff::contains(const ModelUpdate& u) const {
  for (const auto& v : plus)
    if (v == u) return true;
  for (const auto& v : minus)
    if (v == u) return true;
  return false;
}

namespace {

PlanningTask addFluent(const PlanningTask& task, const std::string& name, FluentRole role) {
  PlanningTask out = task;
  std::size_t n = task.numFluents() + 1;
  out.fluents.push_back({static_cast<int>(task.numFluents()), name, role});
  out.init = task.init.resized(n);
  out.goal = task.goal.resized(n);
  for (auto& a : out.actions) {
    a.hardPrec = a.hardPrec.resized(n);
    for (auto& e : a.effects) {
      e.condition = e.condition.resized(n);
      e.add = e.add.resized(n);
      e.del = e.del.resized(n);
    }
  }
  out.reindex();
  return out;
}

// Canonical key of the conditional-effect tail, for cross-model comparison.
std::string condGroupsKey(const PlanningTask& task, const GroundAction& a) {
  std::vector<std::string> parts;
  for (std::size_t g = 1; g < a.effects.size(); ++g) {
    const auto& e = a.effects[g];
    std::string part = "C:";
    auto names = [&](const Bits& b) {
      std::vector<std::string> xs;
      b.forEachSet([&](int id) { xs.push_back(task.fluents[static_cast<std::size_t>(id)].name); });
      std::sort(xs.begin(), xs.end());
      std::string s;
      for (const auto& x : xs) s += x + ",";
      return s;
    };
    part += names(e.condition) + "A:" + names(e.add) + "D:" + names(e.del);
    parts.push_back(part);
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& p : parts) key += p + ";";
  return key;
}

}  // namespace

EaProblem make_ea_problem(PlanningTask robot, PlanningTask human) {
  if (robot.numFluents() != human.numFluents())
    throw ModelMismatchError("models use different fluent vocabularies (" +
                             std::to_string(robot.numFluents()) + " vs " +
                             std::to_string(human.numFluents()) + " fluents)");
  for (std::size_t i = 0; i < robot.numFluents(); ++i)
    if (robot.fluents[i].name != human.fluents[i].name)
      throw ModelMismatchError("fluent vocabulary mismatch at id " + std::to_string(i) + ": " +
                               robot.fluents[i].name + " vs " + human.fluents[i].name);

  EaProblem prob;
  prob.robot = std::move(robot);
  prob.human = std::move(human);

  // Align action universes: a missing action becomes a stub that requires a
  // reserved never-true fluent, so capability gaps surface as precondition
  // updates rather than a vocabulary extension.
  std::set<std::string> names;
  for (const auto& a : prob.robot.actions) names.insert(a.name);
  for (const auto& a : prob.human.actions) names.insert(a.name);
  bool needStub = false;
  for (const auto& n : names)
    needStub |= prob.robot.actionId(n) < 0 || prob.human.actionId(n) < 0;
  if (needStub) {
    if (prob.robot.fluentId(kNeverTrue) >= 0)
      throw ModelMismatchError(std::string("reserved fluent name in input: ") + kNeverTrue);
    prob.robot = addFluent(prob.robot, kNeverTrue, FluentRole::Task);
    prob.human = addFluent(prob.human, kNeverTrue, FluentRole::Task);
    prob.alignmentFluentAdded = true;
    auto stubInto = [&](PlanningTask& dst, const PlanningTask& src, const std::string& n) {
      const GroundAction* real = src.findAction(n);
      GroundAction stub;
      stub.name = n;
      stub.cost = real->cost;
      stub.hardPrec = dst.emptySet();
      stub.hardPrec.set(dst.fluentId(kNeverTrue));
      stub.effects.push_back({dst.emptySet(), dst.emptySet(), dst.emptySet()});
      // Conditional tails are carried over verbatim; only the flat parts of
      // the two variants are expected to differ.
      for (std::size_t g = 1; g < real->effects.size(); ++g) stub.effects.push_back(real->effects[g]);
      dst.actions.push_back(std::move(stub));
      std::sort(dst.actions.begin(), dst.actions.end(),
                [](const GroundAction& a, const GroundAction& b) { return a.name < b.name; });
      dst.reindex();
    };
    for (const auto& n : names) {
      if (prob.robot.actionId(n) < 0) stubInto(prob.robot, prob.human, n);
      if (prob.human.actionId(n) < 0) stubInto(prob.human, prob.robot, n);
    }
  }

  for (const auto& n : names) {
    const GroundAction* ra = prob.robot.findAction(n);
    const GroundAction* ha = prob.human.findAction(n);
    if (!ra->implPrec.empty() || !ha->implPrec.empty())
      throw ModelMismatchError("action " + n +
                               " carries implication preconditions; base models are plain "
                               "positive-conjunction tasks");
    if (ra->cost != ha->cost)
      throw ModelMismatchError("action cost differs between models for " + n +
                               "; both agents are assumed to share the cost function");
    if (condGroupsKey(prob.robot, *ra) != condGroupsKey(prob.human, *ha))
      throw ModelMismatchError(
          "conditional effects of " + n +
          " differ between models; update vocabulary covers flat effects only");
    for (std::size_t g = 1; g < ra->effects.size(); ++g)
      if (ra->effects[g].del.any())
        throw ModelMismatchError("conditional delete effect in " + n +
                                 "; only conditional adds are supported in model pairs");
  }
  prob.robot.checkInvariants();
  prob.human.checkInvariants();
  return prob;
}

ModelDiff diff_models(const EaProblem& prob) {
  const PlanningTask& R = prob.robot;
  const PlanningTask& H = prob.human;
  ModelDiff diff;
  auto scanBits = [&](const Bits& r, const Bits& h, UpdateKind plusKind, UpdateKind minusKind,
                      const std::string& action) {
    for (std::size_t i = 0; i < R.numFluents(); ++i) {
      int id = static_cast<int>(i);
      bool inR = r.test(id), inH = h.test(id);
      if (inR && !inH) diff.plus.push_back({plusKind, action, R.fluents[i].name});
      if (!inR && inH) diff.minus.push_back({minusKind, action, R.fluents[i].name});
    }
  };
  scanBits(R.init, H.init, UpdateKind::InitAdd, UpdateKind::InitRemove, "");
  scanBits(R.goal, H.goal, UpdateKind::GoalAdd, UpdateKind::GoalRemove, "");
  for (const auto& ra : R.actions) {
    const GroundAction* ha = H.findAction(ra.name);
    assert(ha != nullptr);
    scanBits(ra.hardPrec, ha->hardPrec, UpdateKind::PrecAdd, UpdateKind::PrecRemove, ra.name);
    scanBits(ra.effects[0].add, ha->effects[0].add, UpdateKind::AddEffAdd,
             UpdateKind::AddEffRemove, ra.name);
    scanBits(ra.effects[0].del, ha->effects[0].del, UpdateKind::DelEffAdd,
             UpdateKind::DelEffRemove, ra.name);
  }
  auto byCanonical = [](const ModelUpdate& a, const ModelUpdate& b) {
    return a.canonical() < b.canonical();
  };
  std::sort(diff.plus.begin(), diff.plus.end(), byCanonical);
  std::sort(diff.minus.begin(), diff.minus.end(), byCanonical);
  return diff;
}

PlanningTask apply_updates(const PlanningTask& human, const std::vector<ModelUpdate>& updates) {
  PlanningTask out = human;
  for (const auto& u : updates) {
    int fid = out.fluentId(u.fluent);
    if (fid < 0) throw InconsistentUpdateError("unknown fluent in update: " + u.canonical());
    Bits* target = nullptr;
    GroundAction* act = nullptr;
    if (!u.action.empty()) {
      int aid = out.actionId(u.action);
      if (aid < 0) throw InconsistentUpdateError("unknown action in update: " + u.canonical());
      act = &out.actions[static_cast<std::size_t>(aid)];
    }
    bool add = is_plus_kind(u.kind);
    switch (u.kind) {
      case UpdateKind::InitAdd:
      case UpdateKind::InitRemove: target = &out.init; break;
      case UpdateKind::GoalAdd:
      case UpdateKind::GoalRemove: target = &out.goal; break;
      case UpdateKind::PrecAdd:
      case UpdateKind::PrecRemove: target = &act->hardPrec; break;
      case UpdateKind::AddEffAdd:
      case UpdateKind::AddEffRemove: target = &act->effects[0].add; break;
      case UpdateKind::DelEffAdd:
      case UpdateKind::DelEffRemove: target = &act->effects[0].del; break;
    }
    if (add)
      target->set(fid);
    else
      target->reset(fid);
  }
  return out;
}

PlanningTask apply_updates_checked(const EaProblem& prob, const ModelDiff& diff,
                                   const std::vector<ModelUpdate>& updates) {
  for (const auto& u : updates)
    if (!diff.contains(u))
      throw InconsistentUpdateError("update not consistent with the robot model: " +
                                    u.canonical());
  return apply_updates(prob.human, updates);
}

std::optional<Ordering> ordering_from_name(const std::string& s) {
  if (s == "free") return Ordering::Free;
  if (s == "before-first-use") return Ordering::BeforeFirstUse;
  if (s == "prefix") return Ordering::PlanPrefix;
  return std::nullopt;
}

std::optional<Stage> stage_from_name(const std::string& s) {
  if (s == "propose") return Stage::Propose;
  if (s == "execute") return Stage::Execute;
  return std::nullopt;
}

AugmentedTask compile(const EaProblem& prob, const CompileConfig& cfg) {
  const PlanningTask& R = prob.robot;
  const PlanningTask& H = prob.human;
  AugmentedTask aug;
  aug.diff = diff_models(prob);
  aug.cfg = cfg;
  aug.numBaseFluents = static_cast<int>(R.numFluents());

  const int F = aug.numBaseFluents;
  std::vector<ModelUpdate> updates = aug.diff.all();

  PlanningTask& T = aug.task;
  auto slash = R.name.find('/');
  T.name = slash == std::string::npos
               ? R.name + "_aug"
               : R.name.substr(0, slash) + "_aug/" + R.name.substr(slash + 1) + "_aug";
  T.hasCosts = true;

  // Fluent layout: task copies, belief twins, meta fluents, the two
  // sentinels, then ordering machinery.
  for (int i = 0; i < F; ++i) T.fluents.push_back({i, R.fluents[static_cast<std::size_t>(i)].name, FluentRole::Task});
  for (int i = 0; i < F; ++i)
    T.fluents.push_back({F + i, "b__" + flat(R.fluents[static_cast<std::size_t>(i)].name),
                         FluentRole::Belief});
  std::unordered_map<std::string, int> metaId;  // canonical update -> fluent id
  for (const auto& u : updates) {
    int id = static_cast<int>(T.fluents.size());
    T.fluents.push_back({id, u.metaFluentName(),
                         is_plus_kind(u.kind) ? FluentRole::MetaPlus : FluentRole::MetaMinus});
    metaId[u.canonical()] = id;
    aug.backPointers[id] = u;
  }
  aug.initSentinel = static_cast<int>(T.fluents.size());
  T.fluents.push_back({aug.initSentinel, kInitSentinel, FluentRole::SentinelInit});
  aug.goalSentinel = static_cast<int>(T.fluents.size());
  T.fluents.push_back({aug.goalSentinel, kGoalSentinel, FluentRole::SentinelGoal});

  int startedId = -1;
  std::unordered_map<std::string, int> usedId;  // action name -> used marker
  if (cfg.ordering == Ordering::PlanPrefix) {
    startedId = static_cast<int>(T.fluents.size());
    T.fluents.push_back({startedId, kStarted, FluentRole::Aux});
  } else if (cfg.ordering == Ordering::BeforeFirstUse) {
    std::set<std::string> differing;
    for (const auto& u : updates)
      if (!u.action.empty()) differing.insert(u.action);
    for (const auto& a : differing) {
      int id = static_cast<int>(T.fluents.size());
      T.fluents.push_back({id, "ea_used__" + flat(a), FluentRole::Aux});
      usedId[a] = id;
    }
  }

  const std::size_t NF = T.fluents.size();
  auto bits = [&] { return Bits(NF); };
  auto belief = [&](int f) { return F + f; };

  T.init = bits();
  T.init.set(aug.initSentinel);
  T.goal = bits();
  T.goal.set(aug.goalSentinel);

  // Implications blocking everything before a_0 and after a_inf: in the
  // running phase both sentinels are false, so "init-sentinel iff
  // goal-sentinel" holds exactly there.
  const ImplPrec phaseA{aug.initSentinel, aug.goalSentinel};
  const ImplPrec phaseB{aug.goalSentinel, aug.initSentinel};

  auto lookupMeta = [&](UpdateKind k, const std::string& action, int fluent) {
    ModelUpdate u{k, action, R.fluents[static_cast<std::size_t>(fluent)].name};
    auto it = metaId.find(u.canonical());
    assert(it != metaId.end());
    return it->second;
  };

  // Task-level actions.
  for (const auto& ra : R.actions) {
    const GroundAction& ha = *H.findAction(ra.name);
    GroundAction a;
    a.name = ra.name;
    a.cost = ra.cost;  // both agents share the cost function
    a.role = ActionRole::TaskLevel;
    a.hardPrec = bits();
    a.implPrec = {phaseA, phaseB};
    for (int f = 0; f < F; ++f) {
      bool inR = ra.hardPrec.test(f), inH = ha.hardPrec.test(f);
      if (inR) a.hardPrec.set(f);
      if (inR && inH) {
        a.hardPrec.set(belief(f));
      } else if (inR && !inH) {
        a.implPrec.push_back({lookupMeta(UpdateKind::PrecAdd, ra.name, f), belief(f)});
      } else if (!inR && inH) {
        a.implPrec.push_back({lookupMeta(UpdateKind::PrecRemove, ra.name, f), belief(f)});
      }
    }

    EffectGroup uncond{bits(), bits(), bits()};
    std::vector<EffectGroup> guarded;
    for (int f = 0; f < F; ++f) {
      bool addR = ra.effects[0].add.test(f), addH = ha.effects[0].add.test(f);
      bool delR = ra.effects[0].del.test(f), delH = ha.effects[0].del.test(f);
      if (addR) uncond.add.set(f);
      if (delR) uncond.del.set(f);
      if (addR && addH) uncond.add.set(belief(f));
      if (delR && delH) uncond.del.set(belief(f));
      // Differing effects touch the belief only while the observer's model
      // says they should: robot-only parts once explained (mu+ set),
      // observer-only parts until retracted (mu- still set).
      auto guard = [&](UpdateKind k, bool isDel) {
        EffectGroup g{bits(), bits(), bits()};
        g.condition.set(lookupMeta(k, ra.name, f));
        if (isDel)
          g.del.set(belief(f));
        else
          g.add.set(belief(f));
        guarded.push_back(std::move(g));
      };
      if (addR && !addH) guard(UpdateKind::AddEffAdd, false);
      if (!addR && addH) guard(UpdateKind::AddEffRemove, false);
      if (delR && !delH) guard(UpdateKind::DelEffAdd, true);
      if (!delR && delH) guard(UpdateKind::DelEffRemove, true);
    }
    if (cfg.ordering == Ordering::PlanPrefix) uncond.add.set(startedId);
    if (cfg.ordering == Ordering::BeforeFirstUse) {
      auto it = usedId.find(ra.name);
      if (it != usedId.end()) uncond.add.set(it->second);
    }
    a.effects.push_back(std::move(uncond));
    for (auto& g : guarded) a.effects.push_back(std::move(g));
    // Shared conditional effects: keep the task-side group and let the
    // observer simulate it over beliefs.
    for (std::size_t g = 1; g < ra.effects.size(); ++g) {
      EffectGroup taskSide{bits(), bits(), bits()};
      EffectGroup beliefSide{bits(), bits(), bits()};
      ra.effects[g].condition.forEachSet([&](int f) {
        taskSide.condition.set(f);
        beliefSide.condition.set(belief(f));
      });
      ra.effects[g].add.forEachSet([&](int f) {
        taskSide.add.set(f);
        beliefSide.add.set(belief(f));
      });
      ra.effects[g].del.forEachSet([&](int f) {
        taskSide.del.set(f);
        beliefSide.del.set(belief(f));
      });
      a.effects.push_back(std::move(taskSide));
      a.effects.push_back(std::move(beliefSide));
    }
    T.actions.push_back(std::move(a));
  }

  // Explanatory actions: mu+ markers get added, mu- markers get deleted.
  // Initial-state updates also move the current belief, which is the entire
  // content of such an explanation.
  for (const auto& u : updates) {
    GroundAction a;
    a.name = u.explainActionName();
    a.cost = cfg.costOf(u);
    a.role = ActionRole::Explanatory;
    a.hardPrec = bits();
    a.implPrec = {phaseA, phaseB};
    if (cfg.ordering == Ordering::PlanPrefix)
      a.implPrec.push_back({startedId, aug.initSentinel});
    if (cfg.ordering == Ordering::BeforeFirstUse && !u.action.empty())
      a.implPrec.push_back({usedId.at(u.action), aug.initSentinel});
    EffectGroup eff{bits(), bits(), bits()};
    int mid = metaId.at(u.canonical());
    if (is_plus_kind(u.kind)) {
      eff.add.set(mid);
      if (u.kind == UpdateKind::InitAdd) eff.add.set(belief(R.fluentId(u.fluent)));
    } else {
      eff.del.set(mid);
      if (u.kind == UpdateKind::InitRemove) eff.del.set(belief(R.fluentId(u.fluent)));
    }
    a.effects.push_back(std::move(eff));
    T.actions.push_back(std::move(a));
  }

  {  // a_0: stamps the robot initial state, the believed initial state, and
     // every mu- marker (misconceptions stand until retracted).
    GroundAction a0;
    a0.name = "a_0";
    a0.cost = Rational(0);
    a0.role = ActionRole::InitSentinel;
    a0.hardPrec = bits();
    a0.hardPrec.set(aug.initSentinel);
    EffectGroup eff{bits(), bits(), bits()};
    R.init.forEachSet([&](int f) { eff.add.set(f); });
    H.init.forEachSet([&](int f) { eff.add.set(belief(f)); });
    for (const auto& [mid, u] : aug.backPointers)
      if (!is_plus_kind(u.kind)) eff.add.set(mid);
    eff.del.set(aug.initSentinel);
    a0.effects.push_back(std::move(eff));
    T.actions.push_back(std::move(a0));
  }
  {  // a_inf: checks the goal on both sides and closes the run.
    GroundAction ainf;
    ainf.name = "a_inf";
    ainf.cost = Rational(0);
    ainf.role = ActionRole::GoalSentinel;
    ainf.hardPrec = bits();
    ainf.implPrec = {phaseA, phaseB};
    for (int f = 0; f < F; ++f) {
      bool inR = R.goal.test(f), inH = H.goal.test(f);
      if (inR) ainf.hardPrec.set(f);
      if (inR && inH) {
        ainf.hardPrec.set(belief(f));
      } else if (inR && !inH) {
        ainf.implPrec.push_back({lookupMeta(UpdateKind::GoalAdd, "", f), belief(f)});
      } else if (!inR && inH) {
        ainf.implPrec.push_back({lookupMeta(UpdateKind::GoalRemove, "", f), belief(f)});
      }
    }
    EffectGroup eff{bits(), bits(), bits()};
    eff.add.set(aug.goalSentinel);
    ainf.effects.push_back(std::move(eff));
    T.actions.push_back(std::move(ainf));
  }

  std::sort(T.actions.begin(), T.actions.end(),
            [](const GroundAction& a, const GroundAction& b) { return a.name < b.name; });
  T.reindex();
  T.checkInvariants();

  // Theorem-1 size accounting: linear, and exactly 2|F| + |diff| + 2 fluents
  // outside the ordering machinery.
  std::size_t aux = cfg.ordering == Ordering::PlanPrefix
                        ? 1
                        : (cfg.ordering == Ordering::BeforeFirstUse ? usedId.size() : 0);
  if (T.fluents.size() != 2 * static_cast<std::size_t>(F) + aug.diff.size() + 2 + aux)
    throw std::logic_error("augmented fluent count violates the linear-size bound");
  if (T.actions.size() != R.actions.size() + aug.diff.size() + 2)
    throw std::logic_error("augmented action count violates the linear-size bound");
  return aug;
}

void annotate_side_effects(AugmentedTask& aug, Stage mode, bool inference) {
  if (mode == Stage::Propose) return;  // proposal stage has no observation channel
  if (aug.stage == Stage::Execute) return;
  aug.stage = Stage::Execute;
  aug.inferenceApplied = inference;

  PlanningTask& T = aug.task;
  const int F = aug.numBaseFluents;

  // Init-difference markers indexed by task fluent, for discharge rules.
  std::unordered_map<int, int> initPlusMeta, initMinusMeta;
  for (const auto& [mid, u] : aug.backPointers) {
    if (u.kind == UpdateKind::InitAdd) initPlusMeta[T.fluentId(u.fluent)] = mid;
    if (u.kind == UpdateKind::InitRemove) initMinusMeta[T.fluentId(u.fluent)] = mid;
  }

  // "Previously unused" fluents: never touched by any effect of any
  // task-level action, on either the task or the belief side.
  std::vector<bool> touched(static_cast<std::size_t>(F), false);
  for (const auto& a : T.actions) {
    if (a.role != ActionRole::TaskLevel) continue;
    for (const auto& e : a.effects) {
      auto mark = [&](const Bits& b) {
        b.forEachSet([&](int id) {
          if (aug.isTaskFluent(id))
            touched[static_cast<std::size_t>(id)] = true;
          else if (id < 2 * F)
            touched[static_cast<std::size_t>(id - F)] = true;
        });
      };
      mark(e.add);
      mark(e.del);
    }
  }

  for (auto& a : T.actions) {
    if (a.role != ActionRole::TaskLevel) continue;
    std::vector<bool> drop(a.effects.size(), false);
    std::vector<EffectGroup> inferred;
    for (std::size_t gi = 1; gi < a.effects.size(); ++gi) {
      // Differing-effect groups are exactly those guarded by a single meta
      // fluent and touching a single belief fluent.
      const EffectGroup& e = a.effects[gi];
      int metaGuard = -1;
      if (e.condition.count() == 1) {
        e.condition.forEachSet([&](int id) {
          if (aug.backPointers.count(id) > 0) metaGuard = id;
        });
      }
      if (metaGuard < 0) continue;
      const ModelUpdate& u = aug.backPointers.at(metaGuard);
      int bf = -1;
      e.add.forEachSet([&](int id) { bf = id; });
      e.del.forEachSet([&](int id) { bf = id; });
      EffectGroup& uncond = a.effects[0];
      switch (u.kind) {
        case UpdateKind::AddEffAdd:  // observers watch the add happen
          uncond.add.set(bf);
          uncond.add.set(metaGuard);
          drop[gi] = true;
          break;
        case UpdateKind::DelEffAdd:  // and the delete
          uncond.del.set(bf);
          uncond.add.set(metaGuard);
          drop[gi] = true;
          break;
        case UpdateKind::AddEffRemove:  // expected add fails to appear
          uncond.del.set(metaGuard);
          drop[gi] = true;
          break;
        case UpdateKind::DelEffRemove:  // expected delete fails to appear
          uncond.del.set(metaGuard);
          drop[gi] = true;
          break;
        default:
          break;
      }
    }
    std::vector<EffectGroup> rewritten;
    for (std::size_t gi = 0; gi < a.effects.size(); ++gi)
      if (!drop[gi]) rewritten.push_back(std::move(a.effects[gi]));
    a.effects = std::move(rewritten);

    if (inference) {
      // Fired conditional effects teach the observer both the effect and the
      // condition; when that pins down a disputed initial-state fact, the
      // matching marker discharges without a separate explanation.
      for (const auto& e : a.effects) {
        if (!e.condition.any()) continue;
        bool conditionOnTask = true;
        e.condition.forEachSet([&](int id) { conditionOnTask &= aug.isTaskFluent(id); });
        if (!conditionOnTask) continue;
        if (aug.cfg.restrictUnusedInference) {
          bool allUnused = true;
          e.condition.forEachSet(
              [&](int id) { allUnused &= !touched[static_cast<std::size_t>(id)]; });
          if (!allUnused) continue;
        }
        EffectGroup g{e.condition, Bits(T.numFluents()), Bits(T.numFluents())};
        auto learnTrue = [&](int f) {
          g.add.set(aug.beliefOf(f));
          auto it = initPlusMeta.find(f);
          if (it != initPlusMeta.end()) g.add.set(it->second);
        };
        e.add.forEachSet([&](int id) {
          if (aug.isTaskFluent(id)) learnTrue(id);
        });
        e.condition.forEachSet([&](int id) { learnTrue(id); });
        inferred.push_back(std::move(g));
      }
      for (auto& g : inferred) a.effects.push_back(std::move(g));
    }
  }
  T.checkInvariants();
}

EASolution extract_solution(const AugmentedTask& aug, const std::vector<int>& plan) {
  const PlanningTask& T = aug.task;
  ValidityReport vr = validate_plan(T, plan);
  if (!vr.valid())
    throw InvalidAugmentedPlanError(
        "plan is not a valid augmented-model plan (step " + std::to_string(vr.failStep) +
        ": " + vr.violatedCondition + ")");

  State s = T.init;
  for (int id : plan) s = apply(s, T.actions[static_cast<std::size_t>(id)], T);

  EASolution sol;
  // E is read off the meta fluents of the final state: mu+ present means
  // established, mu- absent means retracted.
  std::set<std::string> explicitOnes;
  for (int id : plan) {
    const GroundAction& a = T.actions[static_cast<std::size_t>(id)];
    if (a.role == ActionRole::Explanatory) {
      sol.explanationCost += a.cost;
      explicitOnes.insert(a.name);
    } else if (a.role == ActionRole::TaskLevel) {
      bool touchesTask = false;
      for (const auto& e : a.effects) {
        auto scan = [&](const Bits& b) {
          b.forEachSet([&](int f) { touchesTask |= aug.isTaskFluent(f); });
        };
        scan(e.add);
        scan(e.del);
      }
      if (touchesTask) {
        sol.taskPlan.push_back(a.name);
        sol.taskCost += a.cost;
      }
    }
  }
  std::vector<std::pair<std::string, ModelUpdate>> collected;
  for (const auto& [mid, u] : aug.backPointers) {
    bool conveyed = is_plus_kind(u.kind) ? s.test(mid) : !s.test(mid);
    if (conveyed) collected.push_back({u.canonical(), u});
  }
  std::sort(collected.begin(), collected.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [canon, u] : collected) {
    if (explicitOnes.count(u.explainActionName()) == 0) sol.sideEffectConveyed.push_back(canon);
    sol.explanation.push_back(u);
  }
  return sol;
}

EASolution extract_solution(const AugmentedTask& aug, const std::vector<std::string>& plan) {
  std::vector<int> ids;
  for (const auto& n : plan) {
    int id = aug.task.actionId(n);
    if (id < 0) throw InvalidAugmentedPlanError("unknown augmented action: " + n);
    ids.push_back(id);
  }
  return extract_solution(aug, ids);
}

SolutionReport verify_solution(const EaProblem& prob, const EASolution& sol,
                               bool checkOptimality, const search::Limits& innerLimits) {
  SolutionReport rep;
  ModelDiff diff = diff_models(prob);
  for (const auto& u : sol.explanation) rep.updatesConsistent &= diff.contains(u);

  rep.robot = validate_plan(prob.robot, sol.taskPlan);
  PlanningTask updated = apply_updates(prob.human, sol.explanation);
  rep.updatedHuman = validate_plan(updated, sol.taskPlan);

  if (checkOptimality && rep.updatedHuman.valid()) {
    search::Status st;
    auto opt = search::optimal_cost(updated, innerLimits, &st);
    if (opt.has_value()) {
      rep.updatedOptimalCost = *opt;
      rep.taskPlanOptimalInUpdated = (*opt == rep.updatedHuman.totalCost);
    } else if (st != search::Status::ProvenUnsolvable) {
      // Indeterminate inner search: never counts as optimal.
      rep.taskPlanOptimalInUpdated = false;
    } else {
      rep.taskPlanOptimalInUpdated = false;
    }
  } else if (checkOptimality) {
    rep.taskPlanOptimalInUpdated = false;
  }
  return rep;
}

bool models_equal(const PlanningTask& a, const PlanningTask& b) {
  if (a.numFluents() != b.numFluents() || a.actions.size() != b.actions.size()) return false;
  for (std::size_t i = 0; i < a.numFluents(); ++i)
    if (a.fluents[i].name != b.fluents[i].name) return false;
  if (a.init != b.init || a.goal != b.goal) return false;
  for (const auto& aa : a.actions) {
    const GroundAction* ba = b.findAction(aa.name);
    if (ba == nullptr) return false;
    if (aa.cost != ba->cost || aa.hardPrec != ba->hardPrec) return false;
    if (aa.effects[0].add != ba->effects[0].add || aa.effects[0].del != ba->effects[0].del)
      return false;
    if (condGroupsKey(a, aa) != condGroupsKey(b, *ba)) return false;
  }
  return true;
}

}  // namespace eaplan::ea
