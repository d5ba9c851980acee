#pragma once

#include <map>
#include <string>

#include "eaplan/pddl.hpp"
#include "eaplan/task.hpp"

namespace eaplan::ground {

struct GroundConfig {
  // Drop actions that a delete-relaxed reachability pass proves unreachable.
  // Off by default: model pairs must ground over one shared vocabulary.
  bool pruneUnreachable = false;
  std::size_t actionCap = 200000;
  // Optional cost overrides by schema name or ground action name.
  std::map<std::string, Rational> costOverrides;
};

struct GroundStats {
  std::size_t enumeratedActions = 0;
  std::size_t prunedActions = 0;
};

struct GroundingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : GroundingError {
  using GroundingError::GroundingError;
};

// Typed enumeration of all schema instantiations. Fluents and actions come
// out sorted by name, so grounding the same pair twice is byte-identical.
PlanningTask ground(const pddl::LiftedDomain& dom, const pddl::LiftedProblem& prob,
                    const GroundConfig& cfg = {}, GroundStats* stats = nullptr);

// Ground task rendered back as a 0-ary PDDL domain/problem pair. Emits only
// typing, negative/disjunctive preconditions (as "implies"), conditional
// effects and action costs.
struct SerializedTask {
  std::string domain;
  std::string problem;
};
SerializedTask serialize_task(const PlanningTask& task);

}  // namespace eaplan::ground
