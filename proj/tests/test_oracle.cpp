#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "eaplan/bench.hpp"
#include "eaplan/ground.hpp"
#include "eaplan/oracle.hpp"
#include "eaplan/solve.hpp"

using namespace eaplan;

namespace {

PlanningTask loadBundled(const std::string& dom, const std::string& prob) {
  return bench::load_model(bench::data_dir() + "/" + dom, bench::data_dir() + "/" + prob);
}

// Two disjoint corridors to the goal, lengths 4 and 6, no way to wander.
PlanningTask twoChainTask() {
  const char* domText = R"PDDL(
(define (domain chains)
  (:predicates (a1) (a2) (a3) (g) (b1) (b2) (b3) (b4) (b5) (s))
  (:action sa1 :parameters () :precondition (and (s)) :effect (and (a1) (not (s))))
  (:action sa2 :parameters () :precondition (and (a1)) :effect (and (a2) (not (a1))))
  (:action sa3 :parameters () :precondition (and (a2)) :effect (and (a3) (not (a2))))
  (:action sa4 :parameters () :precondition (and (a3)) :effect (and (g) (not (a3))))
  (:action sb1 :parameters () :precondition (and (s)) :effect (and (b1) (not (s))))
  (:action sb2 :parameters () :precondition (and (b1)) :effect (and (b2) (not (b1))))
  (:action sb3 :parameters () :precondition (and (b2)) :effect (and (b3) (not (b2))))
  (:action sb4 :parameters () :precondition (and (b3)) :effect (and (b4) (not (b3))))
  (:action sb5 :parameters () :precondition (and (b4)) :effect (and (b5) (not (b4))))
  (:action sb6 :parameters () :precondition (and (b5)) :effect (and (g) (not (b5))))
))PDDL";
  auto dom = pddl::parse_domain(domText);
  auto prob =
      pddl::parse_problem("(define (problem t) (:domain chains) (:init (s)) (:goal (and (g))))",
                          dom);
  return ground::ground(dom, prob);
}

}  // namespace

TEST_CASE("state space closure and cost-to-go") {
  PlanningTask t = loadBundled("blocksworld/domain.pddl", "blocksworld/p_flat.pddl");
  auto space = oracle::StateSpace::build(t, 10000);
  CHECK(space.states.size() == 22);  // 13 hand-free block configurations + 9 holding states
  auto togo = space.costToGo(t);
  REQUIRE(togo[0].has_value());
  CHECK(*togo[0] == Rational(4));  // pickup b, stack b c, pickup a, stack a b
  CHECK(oracle::dijkstra_cost(t) == Rational(4));
}

TEST_CASE("state cap raises") {
  PlanningTask t = loadBundled("gripper/domain.pddl", "gripper/p_bench.pddl");
  CHECK_THROWS_AS(oracle::StateSpace::build(t, 3), oracle::CapExceededError);
}

TEST_CASE("exact delta on the two-chain task is 2") {
  PlanningTask t = twoChainTask();
  oracle::OracleCaps caps;
  caps.costCap = Rational(50);
  auto d = oracle::exact_delta(t, caps);
  CHECK_FALSE(d.capCensored);
  CHECK(d.value == Rational(2));  // plan costs are exactly {4, 6}
}

TEST_CASE("unique-plan task is cap-censored") {
  auto dom = pddl::parse_domain(
      "(define (domain d) (:predicates (p) (g)) "
      "(:action go :parameters () :precondition (and (p)) :effect (and (g) (not (p)))))");
  auto prob =
      pddl::parse_problem("(define (problem q) (:domain d) (:init (p)) (:goal (and (g))))", dom);
  PlanningTask t = ground::ground(dom, prob);
  oracle::OracleCaps caps;
  caps.costCap = Rational(9);
  auto d = oracle::exact_delta(t, caps);
  CHECK(d.capCensored);
}

TEST_CASE("exact delta dominates the certified lower bound on bundled tasks") {
  for (const auto& [d, p] : std::vector<std::pair<std::string, std::string>>{
           {"blocksworld/domain.pddl", "blocksworld/p_flat.pddl"},
           {"blocksworld/domain.pddl", "blocksworld/p_tower.pddl"},
           {"gripper/domain.pddl", "gripper/p_toy.pddl"},
           {"elevator/domain.pddl", "elevator/p_toy.pddl"},
           {"driverlog/domain.pddl", "driverlog/p_toy.pddl"},
           {"satellite/domain.pddl", "satellite/p_toy.pddl"},
           {"usar/domain.pddl", "usar/problem_robot.pddl"}}) {
    CAPTURE(p);
    PlanningTask t = loadBundled(d, p);
    oracle::OracleCaps caps;
    caps.costCap = Rational(400);
    caps.stateCap = 300000;
    auto exact = oracle::exact_delta(t, caps);
    auto bound = ea::delta_lower_bound(t);
    if (!exact.capCensored) CHECK(exact.value >= bound.value);
  }
}

TEST_CASE("rescue enumeration within cost 120 contains both scenario solutions") {
  auto prob = bench::load_usar();
  oracle::OracleCaps caps;
  caps.costCap = Rational(120);
  caps.planLenCap = 12;
  auto all = oracle::enumerate_ea_solutions(prob, Rational(1), caps);
  CHECK(all.size() > 2);

  const std::vector<std::string> blue = {"move_p1_p2",   "move_p2_p3",   "move_p3_p4",
                                         "move_p4_p11",  "move_p11_p13", "move_p13_p14",
                                         "move_p14_p18", "move_p18_p17"};
  const std::vector<std::string> rubble = {"move_p1_p2",  "move_p2_p5",   "clear_passage_p5_p6",
                                           "move_p5_p6",  "move_p6_p13",  "move_p13_p14",
                                           "move_p14_p18", "move_p18_p17"};
  bool sawBlueWithUpdates = false, sawRubbleBare = false;
  for (const auto& s : all) {
    if (s.plan == blue && s.updates.size() == 2) {
      std::set<std::string> got;
      for (const auto& u : s.updates) got.insert(u.canonical());
      if (got == std::set<std::string>{"add-(clear_p2_p3)-to-I",
                                       "remove-(clear_p16_p17)-from-I"})
        sawBlueWithUpdates = true;
    }
    if (s.plan == rubble && s.updates.empty()) sawRubbleBare = true;
  }
  CHECK(sawBlueWithUpdates);
  CHECK(sawRubbleBare);
  // every enumerated member verifies under Definition 1
  for (std::size_t i = 0; i < all.size(); i += 97) {
    ea::EASolution sol;
    sol.explanation = all[i].updates;
    sol.taskPlan = all[i].plan;
    CHECK(ea::verify_solution(prob, sol).valid());
  }
}

TEST_CASE("identical models enumerate to bare plans only") {
  auto robot = loadBundled("blocksworld/domain.pddl", "blocksworld/p_flat.pddl");
  auto prob = ea::make_ea_problem(robot, robot);
  oracle::OracleCaps caps;
  caps.costCap = Rational(5);
  caps.planLenCap = 5;
  auto all = oracle::enumerate_ea_solutions(prob, Rational(1), caps);
  CHECK(!all.empty());
  for (const auto& s : all) {
    CHECK(s.updates.empty());
    CHECK(validate_plan(prob.robot, s.plan).valid());
  }
}

TEST_CASE("oracle MCE of the robot route is the two-update set") {
  auto prob = bench::load_usar();
  const std::vector<std::string> blue = {"move_p1_p2",   "move_p2_p3",   "move_p3_p4",
                                         "move_p4_p11",  "move_p11_p13", "move_p13_p14",
                                         "move_p14_p18", "move_p18_p17"};
  oracle::OracleCaps caps;
  caps.stateCap = 300000;
  Rational cost;
  auto m = oracle::mce(prob, blue, Rational(1), caps, &cost);
  REQUIRE(m.has_value());
  CHECK(cost == Rational(2));
  std::set<std::string> got;
  for (const auto& u : *m) got.insert(u.canonical());
  CHECK(got ==
        std::set<std::string>{"add-(clear_p2_p3)-to-I", "remove-(clear_p16_p17)-from-I"});
}

TEST_CASE("MCE is empty when the plan is already optimal for the observer") {
  auto robot = loadBundled("blocksworld/domain.pddl", "blocksworld/p_tower.pddl");
  auto prob = ea::make_ea_problem(robot, robot);
  auto optimal = oracle::enumerate_optimal_plans(robot, {Rational(100), 10, 10000, 100000});
  REQUIRE(!optimal.empty());
  oracle::OracleCaps caps;
  auto m = oracle::mce(prob, optimal[0], Rational(1), caps);
  REQUIRE(m.has_value());
  CHECK(m->empty());
}

TEST_CASE("every robot-optimal rescue plan is the single blue route") {
  auto prob = bench::load_usar();
  oracle::OracleCaps caps;
  caps.costCap = Rational(200);
  caps.planLenCap = 10;
  caps.stateCap = 300000;
  auto plans = oracle::enumerate_optimal_plans(prob.robot, caps);
  REQUIRE(plans.size() == 1);
  CHECK(plans[0].size() == 8);
  CHECK(validate_plan(prob.robot, plans[0]).totalCost == Rational(80));
}

TEST_CASE("oracle minimum matches the solver on the rescue pair") {
  auto prob = bench::load_usar();
  oracle::OracleCaps caps;
  caps.stateCap = 400000;
  auto oracleMin = oracle::min_valid_total_cost(prob, Rational(1), caps);
  REQUIRE(oracleMin.has_value());
  ea::SolveConfig cfg;
  cfg.explanationCost = Rational(1);
  cfg.stage = ea::Stage::Propose;
  auto out = ea::solve_ea(prob, ea::SolveMode::valid(), cfg);
  REQUIRE(out.search.status == search::Status::Solved);
  CHECK(out.objective == *oracleMin);
}
