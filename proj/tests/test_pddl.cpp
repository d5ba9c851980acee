#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eaplan/bench.hpp"
#include "eaplan/ground.hpp"
#include "eaplan/pddl.hpp"

using namespace eaplan;

namespace {
std::string dataPath(const std::string& rel) { return bench::data_dir() + "/" + rel; }
}  // namespace

TEST_CASE("move action parses with the expected sets") {
  const char* text = R"PDDL(
(define (domain mini)
  (:requirements :strips)
  (:predicates (at_p1) (at_p2) (clear_p1_p2))
  (:action move_from_p1_p2
    :precondition (and (at_p1) (clear_p1_p2))
    :effect (and (not (at_p1)) (at_p2) ))
))PDDL";
  auto dom = pddl::parse_domain(text);
  REQUIRE(dom.actions.size() == 1);
  const auto& a = dom.actions[0];
  CHECK(a.name == "move_from_p1_p2");
  REQUIRE(a.precondition.size() == 2);
  CHECK(a.precondition[0].pred == "at_p1");
  CHECK(a.precondition[1].pred == "clear_p1_p2");
  REQUIRE(a.effects.size() == 2);
  CHECK(a.effects[0].isDelete);
  CHECK(a.effects[0].atom.pred == "at_p1");
  CHECK_FALSE(a.effects[1].isDelete);
  CHECK(a.effects[1].atom.pred == "at_p2");
}

TEST_CASE("degenerate domain: one predicate, no actions") {
  auto dom = pddl::parse_domain("(define (domain d) (:predicates (p)))");
  CHECK(dom.actions.empty());
  CHECK(dom.predicates.size() == 1);
}

TEST_CASE("bundled blocksworld has 4 schemas with written arities") {
  auto dom = pddl::parse_domain(pddl::read_file(dataPath("blocksworld/domain.pddl")));
  REQUIRE(dom.actions.size() == 4);
  std::map<std::string, std::size_t> arity;
  for (const auto& a : dom.actions) arity[a.name] = a.params.size();
  CHECK(arity["pickup"] == 1);
  CHECK(arity["putdown"] == 1);
  CHECK(arity["stack"] == 2);
  CHECK(arity["unstack"] == 2);
}

TEST_CASE("3-block flat problem has 7 init atoms") {
  auto dom = pddl::parse_domain(pddl::read_file(dataPath("blocksworld/domain.pddl")));
  auto prob = pddl::parse_problem(pddl::read_file(dataPath("blocksworld/p_flat.pddl")), dom);
  CHECK(prob.init.size() == 7);
  CHECK(prob.objects.size() == 3);
}

TEST_CASE("observer map differs from robot map on the p16-p17 corridor") {
  auto dom = pddl::parse_domain(pddl::read_file(dataPath("usar/domain.pddl")));
  auto robot = pddl::parse_problem(pddl::read_file(dataPath("usar/problem_robot.pddl")), dom);
  auto human = pddl::parse_problem(pddl::read_file(dataPath("usar/problem_human.pddl")), dom);
  auto has = [](const pddl::LiftedProblem& p, const std::string& pred) {
    for (const auto& at : p.init)
      if (at.pred == pred) return true;
    return false;
  };
  CHECK_FALSE(has(robot, "clear_p16_p17"));
  CHECK(has(human, "clear_p16_p17"));
  CHECK(has(robot, "clear_p2_p3"));
  CHECK_FALSE(has(human, "clear_p2_p3"));
  CHECK(has(robot, "unlocked_d1"));
  CHECK_FALSE(has(human, "unlocked_d1"));
}

TEST_CASE("empty goal is satisfied by any state") {
  auto dom = pddl::parse_domain("(define (domain d) (:predicates (p)))");
  auto prob = pddl::parse_problem(
      "(define (problem q) (:domain d) (:init (p)) (:goal (and)))", dom);
  CHECK(prob.goal.empty());
}

TEST_CASE("errors carry position and construct names") {
  CHECK_THROWS_AS(pddl::parse_domain("(define (domain d) (:predicates (p))"), pddl::ParseError);
  try {
    pddl::parse_domain(
        "(define (domain d) (:predicates (p ?x))\n"
        "  (:action a :parameters (?x) :precondition (forall (?y) (p ?y)) :effect (and)))");
    FAIL("expected unsupported-feature error");
  } catch (const pddl::UnsupportedFeatureError& e) {
    CHECK(e.construct == "forall");
  }
  // undeclared predicate
  CHECK_THROWS_AS(pddl::parse_domain("(define (domain d) (:predicates (p)) "
                                     "(:action a :parameters () :precondition (and (q)) "
                                     ":effect (and (p))))"),
                  pddl::ParseError);
  // arity mismatch in problem
  auto dom = pddl::parse_domain("(define (domain d) (:predicates (p ?x)))");
  CHECK_THROWS_AS(
      pddl::parse_problem("(define (problem q) (:domain d) (:objects o) (:init (p)) "
                          "(:goal (and)))",
                          dom),
      pddl::ParseError);
  // undeclared object
  CHECK_THROWS_AS(
      pddl::parse_problem("(define (problem q) (:domain d) (:objects o) (:init (p z)) "
                          "(:goal (and)))",
                          dom),
      pddl::ParseError);
  // wrong domain name
  CHECK_THROWS_AS(
      pddl::parse_problem("(define (problem q) (:domain other) (:init) (:goal (and)))", dom),
      pddl::ParseError);
}

TEST_CASE("round-trip stability over the bundled corpus") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> corpus = {
      {"usar/domain.pddl", {"usar/problem_robot.pddl", "usar/problem_human.pddl"}},
      {"blocksworld/domain.pddl", {"blocksworld/p_flat.pddl", "blocksworld/p_tower.pddl"}},
      {"gripper/domain.pddl", {"gripper/p_toy.pddl", "gripper/p_bench.pddl"}},
      {"driverlog/domain.pddl", {"driverlog/p_toy.pddl", "driverlog/p_bench.pddl"}},
      {"elevator/domain.pddl", {"elevator/p_toy.pddl", "elevator/p_bench.pddl"}},
      {"satellite/domain.pddl", {"satellite/p_toy.pddl", "satellite/p_bench.pddl"}},
  };
  for (const auto& [domFile, probFiles] : corpus) {
    CAPTURE(domFile);
    auto dom = pddl::parse_domain(pddl::read_file(dataPath(domFile)), domFile);
    auto text = pddl::serialize_domain(dom);
    auto dom2 = pddl::parse_domain(text, domFile + "#roundtrip");
    CHECK(pddl::structurally_equal(dom, dom2));
    // serialized text is a fixed point
    CHECK(pddl::serialize_domain(dom2) == text);
    for (const auto& probFile : probFiles) {
      CAPTURE(probFile);
      auto prob = pddl::parse_problem(pddl::read_file(dataPath(probFile)), dom, probFile);
      auto ptext = pddl::serialize_problem(prob, dom);
      auto prob2 = pddl::parse_problem(ptext, dom2, probFile + "#roundtrip");
      CHECK(pddl::structurally_equal(prob, prob2));
      CHECK(pddl::serialize_problem(prob2, dom2) == ptext);
    }
  }
}

TEST_CASE("implication preconditions parse back from serialized tasks") {
  const char* text = R"PDDL(
(define (domain aug)
  (:requirements :strips :negative-preconditions :disjunctive-preconditions :action-costs)
  (:predicates (at_p1) (b__at_p1) (clear_p1_p2) (b__clear_p1_p2) (mu_plus_prec__move__clear_p1_p2))
  (:functions (total-cost))
  (:action move
    :parameters ()
    :precondition (and (at_p1) (b__at_p1) (clear_p1_p2)
      (implies (mu_plus_prec__move__clear_p1_p2) (b__clear_p1_p2)))
    :effect (and (not (at_p1)) (increase (total-cost) 10)))
))PDDL";
  auto dom = pddl::parse_domain(text);
  REQUIRE(dom.actions.size() == 1);
  REQUIRE(dom.actions[0].implPrecs.size() == 1);
  CHECK(dom.actions[0].implPrecs[0].guard.pred == "mu_plus_prec__move__clear_p1_p2");
  CHECK(dom.actions[0].implPrecs[0].consequent.pred == "b__clear_p1_p2");
  CHECK(dom.actions[0].cost == Rational(10));
  auto dom2 = pddl::parse_domain(pddl::serialize_domain(dom));
  CHECK(pddl::structurally_equal(dom, dom2));
}
