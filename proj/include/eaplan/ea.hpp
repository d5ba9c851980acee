#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eaplan/search.hpp"
#include "eaplan/task.hpp"

namespace eaplan::ea {

// The ten update kinds close the three update families (initial state,
// action structure, goal) under add/remove. "Add" kinds establish robot-model
// facts the observer lacks; "remove" kinds retract observer-model facts the
// robot lacks.
enum class UpdateKind {
  InitAdd,
  InitRemove,
  GoalAdd,
  GoalRemove,
  PrecAdd,
  PrecRemove,
  AddEffAdd,
  AddEffRemove,
  DelEffAdd,
  DelEffRemove,
};

bool is_plus_kind(UpdateKind k);  // add kinds carry mu+ markers, removes mu-
std::string kind_name(UpdateKind k);
std::optional<UpdateKind> kind_from_name(const std::string& name);

struct ModelUpdate {
  UpdateKind kind;
  std::string action;  // empty for init/goal kinds
  std::string fluent;  // canonical ground-atom string, e.g. "clear_p2_p3" or "on a b"

  // e.g. "add-(clear_p2_p3)-to-I", "remove-(on a b)-from-prec-of-(stack a b)"
  std::string canonical() const;
  // e.g. "mu_plus_init__clear_p2_p3", "mu_minus_prec__stack_a_b__on_a_b"
  std::string metaFluentName() const;
  std::string explainActionName() const { return "explain_" + metaFluentName(); }

  friend bool operator==(const ModelUpdate&, const ModelUpdate&) = default;
};

struct ModelDiff {
  std::vector<ModelUpdate> plus;   // robot-model facts missing from the observer model
  std::vector<ModelUpdate> minus;  // observer-model facts absent from the robot model
  std::size_t size() const { return plus.size() + minus.size(); }
  bool empty() const { return plus.empty() && minus.empty(); }
  // plus ∪ minus sorted by canonical string
  std::vector<ModelUpdate> all() const;
  bool contains(const ModelUpdate& u) const;
};

struct ModelMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentUpdateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A robot model plus the model an observer ascribes to it. Construction
// validates that both share one fluent vocabulary and aligns the action
// universes: an action present in only one model is added to the other with
// an unsatisfiable precondition on a reserved never-true fluent, so the diff
// covers capability differences through precondition updates.
struct EaProblem {
  PlanningTask robot;
  PlanningTask human;
  bool alignmentFluentAdded = false;
};

EaProblem make_ea_problem(PlanningTask robot, PlanningTask human);

ModelDiff diff_models(const EaProblem& prob);

// Observer model with the updates applied. Unchecked against the robot
// model; callers holding an EaProblem should use apply_updates_checked.
PlanningTask apply_updates(const PlanningTask& human, const std::vector<ModelUpdate>& updates);
PlanningTask apply_updates_checked(const EaProblem& prob, const ModelDiff& diff,
                                   const std::vector<ModelUpdate>& updates);

enum class Ordering { Free, BeforeFirstUse, PlanPrefix };
enum class Stage { Propose, Execute };
std::optional<Ordering> ordering_from_name(const std::string&);
std::optional<Stage> stage_from_name(const std::string&);

struct CompileConfig {
  Rational explanationCost{1};
  // Per-update overrides keyed by canonical update string.
  std::map<std::string, Rational> explanationCostTable;
  // Explanatory actions restricted to the plan start by default; Free yields
  // the canonical augmented model.
  Ordering ordering = Ordering::PlanPrefix;
  // Side-effect inference only fires on conditions over fluents no effect
  // ever touches, so the observer never has to regress over the plan.
  bool restrictUnusedInference = true;

  Rational costOf(const ModelUpdate& u) const {
    auto it = explanationCostTable.find(u.canonical());
    return it == explanationCostTable.end() ? explanationCost : it->second;
  }
};

struct AugmentedTask {
  PlanningTask task;
  ModelDiff diff;
  CompileConfig cfg;
  std::unordered_map<int, ModelUpdate> backPointers;  // meta fluent id -> update
  int numBaseFluents = 0;  // |F| of the aligned pair
  int initSentinel = -1;   // fluent ids
  int goalSentinel = -1;
  Stage stage = Stage::Propose;
  bool inferenceApplied = false;

  int beliefOf(int taskFluent) const { return taskFluent + numBaseFluents; }
  bool isTaskFluent(int id) const { return id < numBaseFluents; }
};

// Builds the augmented model: belief twins for every task fluent, one meta
// fluent and one explanatory action per model update, start/finish sentinel
// actions, and implication preconditions tying observer-side checks to the
// meta fluents. The output is the propose-stage model; run
// annotate_side_effects for the execution stage.
AugmentedTask compile(const EaProblem& prob, const CompileConfig& cfg = {});

// Execution-stage rewrite: effects the observer watches update belief and
// meta fluents directly, and (with inference on) fired conditional effects
// teach the observer their conditions. Propose mode is the identity.
void annotate_side_effects(AugmentedTask& aug, Stage mode, bool inference);

struct EASolution {
  std::vector<ModelUpdate> explanation;          // E: all updates the plan conveys
  std::vector<std::string> sideEffectConveyed;   // canonical subset conveyed without
                                                 // an explanatory action
  std::vector<std::string> taskPlan;             // D: original action names
  Rational explanationCost{0};                   // cost of explanatory actions taken
  Rational taskCost{0};
};

struct InvalidAugmentedPlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits a valid augmented plan into the updates it conveys (read off the
// meta fluents of the final state) and its task-level fragment.
EASolution extract_solution(const AugmentedTask& aug, const std::vector<int>& plan);
EASolution extract_solution(const AugmentedTask& aug, const std::vector<std::string>& plan);

struct SolutionReport {
  ValidityReport robot;
  ValidityReport updatedHuman;
  bool updatesConsistent = true;  // E within the model diff
  std::optional<bool> taskPlanOptimalInUpdated;
  std::optional<Rational> updatedOptimalCost;
  bool valid() const {
    return updatesConsistent && robot.valid() && updatedHuman.valid() &&
           (!taskPlanOptimalInUpdated.has_value() || *taskPlanOptimalInUpdated);
  }
};

// Checks the two halves of solution validity: the task plan must reach the
// goal in the robot model and in the observer model updated with E. The
// optimality flavor additionally demands the plan be optimal there.
SolutionReport verify_solution(const EaProblem& prob, const EASolution& sol,
                               bool checkOptimality = false,
                               const search::Limits& innerLimits = {});

// Structural equality of ground models up to set order.
bool models_equal(const PlanningTask& a, const PlanningTask& b);

}  // namespace eaplan::ea
