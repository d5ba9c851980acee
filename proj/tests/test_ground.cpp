#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eaplan/bench.hpp"
#include "eaplan/ground.hpp"

using namespace eaplan;

namespace {

PlanningTask loadBundled(const std::string& dom, const std::string& prob) {
  return bench::load_model(bench::data_dir() + "/" + dom, bench::data_dir() + "/" + prob);
}

}  // namespace

TEST_CASE("3-block blocksworld grounds to 18 actions before pruning") {
  PlanningTask t = loadBundled("blocksworld/domain.pddl", "blocksworld/p_flat.pddl");
  CHECK(t.actions.size() == 18);  // 3x2 stack + 3x2 unstack + 3 pickup + 3 putdown
  CHECK(t.init.count() == 7);
  // fluents: 9 on (incl. diagonal) + 3 ontable + 3 clear + 3 holding + 1 handempty
  CHECK(t.numFluents() == 19);
}

TEST_CASE("zero-schema domain grounds to zero actions") {
  auto dom = pddl::parse_domain("(define (domain d) (:predicates (p) (q)))");
  auto probSat = pddl::parse_problem(
      "(define (problem a) (:domain d) (:init (p)) (:goal (and (p))))", dom);
  PlanningTask t = ground::ground(dom, probSat);
  CHECK(t.actions.empty());
  CHECK(t.goal.subsetOf(t.init));
  auto probUnsat = pddl::parse_problem(
      "(define (problem b) (:domain d) (:init (p)) (:goal (and (q))))", dom);
  PlanningTask t2 = ground::ground(dom, probUnsat);
  CHECK_FALSE(t2.goal.subsetOf(t2.init));
}

TEST_CASE("rescue map grounds to one move per directed clear-able edge") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  std::size_t moves = 0, doors = 0, other = 0;
  for (const auto& a : t.actions) {
    if (a.name.rfind("move_", 0) == 0) ++moves;
    else if (a.name.rfind("movethroughdoor_", 0) == 0 || a.name.rfind("opendoor_", 0) == 0) ++doors;
    else ++other;
  }
  CHECK(moves == 40);  // 20 undirected clear-able edges
  CHECK(doors == 3);
  CHECK(other == 1);  // clear_passage
  CHECK(t.numFluents() == 41);
}

TEST_CASE("apply: move consumes and produces location atoms") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  const GroundAction& move = *t.findAction("move_p1_p2");
  State s = t.init;
  CHECK(applicable(s, move, t));
  State s2 = apply(s, move, t);
  CHECK(s2.test(t.fluentId("at_p2")));
  CHECK_FALSE(s2.test(t.fluentId("at_p1")));
  CHECK(s2.test(t.fluentId("clear_p1_p2")));  // statics survive
}

TEST_CASE("apply: inapplicable action reports the violated condition") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  const GroundAction& move = *t.findAction("move_p2_p3");
  CHECK_THROWS_AS(apply(t.init, move, t), InapplicableActionError);
  try {
    apply(t.init, move, t);
  } catch (const InapplicableActionError& e) {
    CHECK(e.violated == "at_p2");
  }
}

TEST_CASE("apply: empty-effect action leaves the state unchanged") {
  auto dom = pddl::parse_domain(
      "(define (domain d) (:predicates (p)) (:action noop :parameters () "
      ":precondition (and) :effect (and)))");
  auto prob =
      pddl::parse_problem("(define (problem q) (:domain d) (:init (p)) (:goal (and)))", dom);
  PlanningTask t = ground::ground(dom, prob);
  State s2 = apply(t.init, t.actions[0], t);
  CHECK(s2 == t.init);
}

TEST_CASE("apply: conditional door effect fires only when unlocked") {
  PlanningTask robot = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  PlanningTask human = loadBundled("usar/domain.pddl", "usar/problem_human.pddl");
  // walk the robot to p8: p1 -> p7 -> p8
  for (auto& t : {&robot, &human}) {
    State s = t->init;
    s = apply(s, *t->findAction("move_p1_p7"), *t);
    s = apply(s, *t->findAction("move_p7_p8"), *t);
    State s2 = apply(s, *t->findAction("opendoor_p8_d1"), *t);
    bool unlocked = t->init.test(t->fluentId("unlocked_d1"));
    CHECK(s2.test(t->fluentId("open_d1")) == unlocked);
  }
}

TEST_CASE("add wins when one action adds and deletes the same fluent") {
  auto dom = pddl::parse_domain(
      "(define (domain d) (:predicates (p) (q)) (:action a :parameters () "
      ":precondition (and) :effect (and (p) (not (p)) (q))))");
  auto prob =
      pddl::parse_problem("(define (problem x) (:domain d) (:init) (:goal (and (q))))", dom);
  PlanningTask t = ground::ground(dom, prob);
  State s2 = apply(t.init, t.actions[0], t);
  CHECK(s2.test(t.fluentId("p")));
  CHECK(s2.test(t.fluentId("q")));
}

TEST_CASE("validate_plan: the direct route costs 80 in the robot model") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  std::vector<std::string> blue = {"move_p1_p2",   "move_p2_p3",   "move_p3_p4",
                                   "move_p4_p11",  "move_p11_p13", "move_p13_p14",
                                   "move_p14_p18", "move_p18_p17"};
  auto rep = validate_plan(t, blue);
  CHECK(rep.executable);
  CHECK(rep.goalReached);
  CHECK(rep.totalCost == Rational(80));
}

TEST_CASE("validate_plan: empty plan is valid iff the goal already holds") {
  auto dom = pddl::parse_domain("(define (domain d) (:predicates (p)))");
  auto prob = pddl::parse_problem(
      "(define (problem q) (:domain d) (:init (p)) (:goal (and (p))))", dom);
  PlanningTask t = ground::ground(dom, prob);
  auto rep = validate_plan(t, std::vector<std::string>{});
  CHECK(rep.valid());
  CHECK(rep.totalCost == Rational(0));
}

TEST_CASE("validate_plan: the observer's expected route breaks in the robot model") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  std::vector<std::string> grey = {"move_p1_p7", "move_p7_p12", "move_p12_p15", "move_p15_p16",
                                   "move_p16_p17"};
  auto rep = validate_plan(t, grey);
  CHECK_FALSE(rep.executable);
  CHECK(rep.failStep == 4);  // move_p16_p17: corridor blocked in the robot map
  CHECK(rep.violatedCondition == "clear_p16_p17");
  CHECK(rep.totalCost == Rational(50));  // cost sums regardless of outcome
}

TEST_CASE("relaxed-reachability pruning drops unreachable actions") {
  const char* domText = R"PDDL(
(define (domain d)
  (:predicates (p) (q) (r))
  (:action a :parameters () :precondition (and (p)) :effect (and (q)))
  (:action b :parameters () :precondition (and (r)) :effect (and (q)))
))PDDL";
  auto dom = pddl::parse_domain(domText);
  auto prob =
      pddl::parse_problem("(define (problem x) (:domain d) (:init (p)) (:goal (and (q))))", dom);
  ground::GroundConfig cfg;
  cfg.pruneUnreachable = true;
  ground::GroundStats stats;
  PlanningTask t = ground::ground(dom, prob, cfg, &stats);
  CHECK(t.actions.size() == 1);
  CHECK(stats.prunedActions == 1);
}

TEST_CASE("ground-action cap raises a resource error") {
  auto dom = pddl::parse_domain(pddl::read_file(bench::data_dir() + "/blocksworld/domain.pddl"));
  auto prob =
      pddl::parse_problem(pddl::read_file(bench::data_dir() + "/blocksworld/p_flat.pddl"), dom);
  ground::GroundConfig cfg;
  cfg.actionCap = 5;
  CHECK_THROWS_AS(ground::ground(dom, prob, cfg), ground::ResourceError);
}

TEST_CASE("serialized ground tasks are byte-stable and re-parse") {
  PlanningTask t = loadBundled("usar/domain.pddl", "usar/problem_robot.pddl");
  auto ser = ground::serialize_task(t);
  CHECK(ground::serialize_task(t).domain == ser.domain);
  auto dom = pddl::parse_domain(ser.domain);
  auto prob = pddl::parse_problem(ser.problem, dom);
  PlanningTask t2 = ground::ground(dom, prob);
  CHECK(t2.numFluents() == t.numFluents());
  CHECK(t2.actions.size() == t.actions.size());
  auto ser2 = ground::serialize_task(t2);
  CHECK(ser2.domain == ser.domain);
  CHECK(ser2.problem == ser.problem);
}

TEST_CASE("cost overrides apply by schema or ground name") {
  auto dom = pddl::parse_domain(pddl::read_file(bench::data_dir() + "/blocksworld/domain.pddl"));
  auto prob =
      pddl::parse_problem(pddl::read_file(bench::data_dir() + "/blocksworld/p_flat.pddl"), dom);
  ground::GroundConfig cfg;
  cfg.costOverrides["pickup"] = Rational(5);
  cfg.costOverrides["stack a b"] = Rational(7, 2);
  PlanningTask t = ground::ground(dom, prob, cfg);
  CHECK(t.findAction("pickup a")->cost == Rational(5));
  CHECK(t.findAction("pickup c")->cost == Rational(5));
  CHECK(t.findAction("stack a b")->cost == Rational(7, 2));
  CHECK(t.findAction("stack b a")->cost == Rational(1));
}

TEST_CASE("plan text round-trips") {
  auto plan = parse_plan_text("(move_p1_p2)\n; comment\n(stack a b)\n\n# note\n(pickup c)\n");
  REQUIRE(plan.size() == 3);
  CHECK(plan[0] == "move_p1_p2");
  CHECK(plan[1] == "stack a b");
  CHECK(plan_to_text(plan) == "(move_p1_p2)\n(stack a b)\n(pickup c)\n");
}
