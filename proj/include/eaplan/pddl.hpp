#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eaplan/rational.hpp"

namespace eaplan::pddl {

struct SourcePos {
  int line = 0;
  int col = 0;
};

// Malformed input for the supported fragment.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, SourcePos p) : std::runtime_error(msg), pos(p) {}
  SourcePos pos;
};

// Syntactically fine but outside the supported fragment; carries the name
// of the offending construct.
struct UnsupportedFeatureError : std::runtime_error {
  UnsupportedFeatureError(const std::string& construct, const std::string& msg, SourcePos p)
      : std::runtime_error(msg), construct(construct), pos(p) {}
  std::string construct;
  SourcePos pos;
};

struct TypedName {
  std::string name;
  std::string type = "object";
  friend bool operator==(const TypedName&, const TypedName&) = default;
};

struct Atom {
  std::string pred;
  std::vector<std::string> args;  // ?variables or constants
  friend bool operator==(const Atom&, const Atom&) = default;
  std::string str() const;
};

struct Implication {
  Atom guard;
  Atom consequent;
  friend bool operator==(const Implication&, const Implication&) = default;
};

// One add or delete of a single atom, optionally guarded by a conjunction.
struct Effect {
  std::vector<Atom> condition;
  Atom atom;
  bool isDelete = false;
  friend bool operator==(const Effect&, const Effect&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Atom> precondition;        // conjunction of positive atoms
  std::vector<Implication> implPrecs;    // only in the augmented fragment
  // Static (not (= ?x ?y)) constraints, resolved at grounding time.
  std::vector<std::pair<std::string, std::string>> inequalities;
  std::vector<Effect> effects;
  Rational cost{1};
  bool hasExplicitCost = false;
};

struct LiftedDomain {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypedName> types;  // name + supertype
  std::vector<TypedName> constants;
  struct Predicate {
    std::string name;
    std::vector<TypedName> params;
  };
  std::vector<Predicate> predicates;
  std::vector<ActionSchema> actions;
  bool hasTotalCost = false;

  const Predicate* findPredicate(std::string_view n) const;
  bool isSubtype(const std::string& sub, const std::string& super) const;
};

struct LiftedProblem {
  std::string name;
  std::string domainName;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Atom> goal;
  bool metricMinimizeCost = false;
};

LiftedDomain parse_domain(std::string_view text, const std::string& filename = "<domain>");
LiftedProblem parse_problem(std::string_view text, const LiftedDomain& dom,
                            const std::string& filename = "<problem>");

std::string serialize_domain(const LiftedDomain& dom);
std::string serialize_problem(const LiftedProblem& prob, const LiftedDomain& dom);

// Structural equality up to set order (predicates, schemas, conjuncts).
bool structurally_equal(const LiftedDomain& a, const LiftedDomain& b);
bool structurally_equal(const LiftedProblem& a, const LiftedProblem& b);

std::string read_file(const std::string& path);

}  // namespace eaplan::pddl
