// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the exit code is the number of failed criteria.
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "eaplan/bench.hpp"
#include "eaplan/ground.hpp"
#include "eaplan/mss.hpp"
#include "eaplan/oracle.hpp"
#include "eaplan/solve.hpp"

using namespace eaplan;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail << "\n";
  if (!pass) ++failures;
}

std::string dataPath(const std::string& rel) { return bench::data_dir() + "/" + rel; }

PlanningTask loadBundled(const std::string& d, const std::string& p) {
  return bench::load_model(dataPath(d), dataPath(p));
}

struct ToyInstance {
  std::string name;
  ea::EaProblem prob;
};

// Perturbed toy instances: state spaces under 10^4 and at most 6 updates.
std::vector<ToyInstance> toySuite() {
  struct Base {
    const char* name;
    const char* dom;
    const char* prob;
  };
  const std::vector<Base> bases = {
      {"blocksworld", "blocksworld/domain.pddl", "blocksworld/p_flat.pddl"},
      {"blocksworld-tower", "blocksworld/domain.pddl", "blocksworld/p_tower.pddl"},
      {"gripper", "gripper/domain.pddl", "gripper/p_toy.pddl"},
      {"elevator", "elevator/domain.pddl", "elevator/p_toy.pddl"},
      {"driverlog", "driverlog/domain.pddl", "driverlog/p_toy.pddl"},
      {"satellite", "satellite/domain.pddl", "satellite/p_toy.pddl"},
  };
  std::vector<ToyInstance> out;
  const int diffs[] = {3, 4, 5, 6, 4, 5};
  std::uint64_t seed = 7001;
  for (const auto& b : bases) {
    PlanningTask robot = loadBundled(b.dom, b.prob);
    for (int k = 0; k < 6; ++k) {
      int n = diffs[(k + out.size()) % 6];
      PlanningTask human = bench::perturb_model(robot, n, seed++);
      std::ostringstream nm;
      nm << b.name << "#" << k << "(n=" << n << ")";
      out.push_back({nm.str(), ea::make_ea_problem(robot, human)});
    }
  }
  return out;  // 36 instances
}

// Random valid augmented plans: a random applicable walk, completed by an
// optimal search when the walk alone does not reach the goal.
std::vector<std::vector<int>> fuzzPlans(const ea::AugmentedTask& aug, int count,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const PlanningTask& T = aug.task;
  std::vector<std::vector<int>> plans;
  int stuck = 0;
  while (static_cast<int>(plans.size()) < count && stuck < count * 50) {
    State s = T.init;
    std::vector<int> plan;
    for (int step = 0; step < 40; ++step) {
      std::vector<int> applicableIds;
      int finisher = -1;
      for (std::size_t ai = 0; ai < T.actions.size(); ++ai) {
        if (!applicable(s, T.actions[ai], T)) continue;
        applicableIds.push_back(static_cast<int>(ai));
        if (T.actions[ai].role == ActionRole::GoalSentinel) finisher = static_cast<int>(ai);
      }
      if (applicableIds.empty()) break;
      int chosen = (finisher >= 0 && rng() % 2 == 0)
                       ? finisher
                       : applicableIds[rng() % applicableIds.size()];
      plan.push_back(chosen);
      s = apply(s, T.actions[static_cast<std::size_t>(chosen)], T);
      if (T.goal.subsetOf(s)) break;
    }
    if (!T.goal.subsetOf(s)) {
      // complete the random prefix optimally
      PlanningTask rest = T;
      rest.init = s;
      auto res = search::astar(rest, search::HeuristicKind::HMax);
      if (res.status != search::Status::Solved) {
        ++stuck;  // dead-ended walk
        continue;
      }
      for (int id : res.plan) plan.push_back(id);
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace

int main(int argc, char** argv) {
  std::string csvOut = "acceptance_bench.csv";
  if (argc > 1) csvOut = argv[1];
  auto t0 = std::chrono::steady_clock::now();

  // --- criterion 1: the demo reproduces the three walkthrough plans -------
  try {
    bench::UsarDemoResult demo = bench::run_usar_demo();
    const std::vector<std::string> wantCheap = {
        "a_0",
        "explain_mu_minus_init__clear_p16_p17",
        "explain_mu_plus_init__clear_p2_p3",
        "move_p1_p2", "move_p2_p3", "move_p3_p4", "move_p4_p11", "move_p11_p13",
        "move_p13_p14", "move_p14_p18", "move_p18_p17",
        "a_inf"};
    const std::vector<std::string> doorMoves = {
        "move_p1_p7",  "move_p7_p8",   "opendoor_p8_d1", "movethroughdoor_p8_p9_d1",
        "move_p9_p10", "move_p10_p13", "move_p13_p14",   "move_p14_p18",
        "move_p18_p17"};
    std::vector<std::string> wantExpensive = {"a_0", "explain_mu_minus_init__clear_p16_p17"};
    wantExpensive.insert(wantExpensive.end(), doorMoves.begin(), doorMoves.end());
    wantExpensive.push_back("a_inf");
    std::vector<std::string> wantPenalty = {"a_0"};
    wantPenalty.insert(wantPenalty.end(), doorMoves.begin(), doorMoves.end());
    wantPenalty.push_back("a_inf");

    bool ok = demo.cheap.augmentedPlan == wantCheap &&
              demo.expensive.augmentedPlan == wantExpensive &&
              demo.penalty.augmentedPlan == wantPenalty &&
              demo.penalty.solution.explanationCost == Rational(0) && demo.penalty.penalized &&
              demo.cheap.search.wallTime < 10 && demo.expensive.search.wallTime < 10 &&
              demo.penalty.search.wallTime < 10;
    std::ostringstream d;
    d << "demo reproduces the three walkthrough plans action-for-action (cheap "
      << std::setprecision(2) << demo.cheap.search.wallTime << "s, expensive "
      << demo.expensive.search.wallTime << "s, penalty " << demo.penalty.search.wallTime
      << "s)";
    report(1, ok, d.str());
  } catch (const std::exception& e) {
    report(1, false, std::string("exception: ") + e.what());
  }

  // --- criterion 2: soundness under fuzzing -------------------------------
  try {
    struct FuzzSetup {
      std::string name;
      ea::EaProblem prob;
      ea::Stage stage;
    };
    std::vector<FuzzSetup> setups;
    setups.push_back({"usar-execute", bench::load_usar(), ea::Stage::Execute});
    setups.push_back({"usar-propose", bench::load_usar(), ea::Stage::Propose});
    {
      PlanningTask bw = loadBundled("blocksworld/domain.pddl", "blocksworld/p_flat.pddl");
      setups.push_back({"blocksworld", ea::make_ea_problem(bw, bench::perturb_model(bw, 5, 41)),
                        ea::Stage::Execute});
      PlanningTask gr = loadBundled("gripper/domain.pddl", "gripper/p_toy.pddl");
      setups.push_back({"gripper", ea::make_ea_problem(gr, bench::perturb_model(gr, 5, 42)),
                        ea::Stage::Propose});
      PlanningTask el = loadBundled("elevator/domain.pddl", "elevator/p_toy.pddl");
      setups.push_back({"elevator", ea::make_ea_problem(el, bench::perturb_model(el, 6, 43)),
                        ea::Stage::Execute});
      PlanningTask dr = loadBundled("driverlog/domain.pddl", "driverlog/p_toy.pddl");
      setups.push_back({"driverlog", ea::make_ea_problem(dr, bench::perturb_model(dr, 4, 44)),
                        ea::Stage::Execute});
      PlanningTask sa = loadBundled("satellite/domain.pddl", "satellite/p_toy.pddl");
      setups.push_back({"satellite", ea::make_ea_problem(sa, bench::perturb_model(sa, 4, 45)),
                        ea::Stage::Propose});
    }
    int checked = 0, bad = 0;
    std::string firstBad;
    const int perInstance = 500 / static_cast<int>(setups.size()) + 1;
    for (const auto& s : setups) {
      ea::CompileConfig ccfg;
      ccfg.explanationCost = Rational(2);
      ea::AugmentedTask aug = ea::compile(s.prob, ccfg);
      ea::annotate_side_effects(aug, s.stage, true);
      for (const auto& plan : fuzzPlans(aug, perInstance, 991 + checked)) {
        ea::EASolution sol = ea::extract_solution(aug, plan);
        ea::SolutionReport rep = ea::verify_solution(s.prob, sol, false);
        ++checked;
        if (!rep.valid()) {
          ++bad;
          if (firstBad.empty()) firstBad = s.name;
        }
      }
    }
    std::ostringstream d;
    d << checked << " fuzzed valid augmented plans across " << setups.size()
      << " compiled instances, " << bad << " extraction failures";
    if (!firstBad.empty()) d << " (first in " << firstBad << ")";
    report(2, checked >= 500 && bad == 0, d.str());
  } catch (const std::exception& e) {
    report(2, false, std::string("exception: ") + e.what());
  }

  // --- criteria 3 + 4: oracle-scale completeness and the agent-optimal
  // cost regime ------------------------------------------------------------
  try {
    auto toys = toySuite();
    int c3Checked = 0, c3Bad = 0;
    int c4aBad = 0, c4bBad = 0, c4cBad = 0, c4Checked = 0;
    std::string detail3, detail4;
    for (const auto& toy : toys) {
      oracle::OracleCaps caps;
      caps.costCap = Rational(60);
      caps.planLenCap = 16;
      caps.stateCap = 400000;  // product spaces may exceed the single-model cap

      // criterion 3: minimum VALID cost agrees with the oracle exactly
      Rational explCost(2);
      ea::SolveConfig cfg;
      cfg.explanationCost = explCost;
      cfg.stage = ea::Stage::Propose;
      auto out = ea::solve_ea(toy.prob, ea::SolveMode::valid(), cfg);
      auto oracleMin = oracle::min_valid_total_cost(toy.prob, explCost, caps);
      ++c3Checked;
      bool ok3 = out.search.status == search::Status::Solved && oracleMin.has_value() &&
                 out.objective == *oracleMin;
      if (!ok3) {
        ++c3Bad;
        if (detail3.empty()) detail3 = " (first mismatch: " + toy.name + ")";
      }

      // criterion 4: Theorem-3 regime
      ea::ModelDiff diff = ea::diff_models(toy.prob);
      ea::DeltaBound bound = ea::delta_lower_bound(toy.prob.robot);
      Rational per = ea::agent_optimal_cost(diff, bound);
      ea::SolveConfig cfg4;
      cfg4.explanationCost = per;
      cfg4.stage = ea::Stage::Propose;
      auto out4 = ea::solve_ea(toy.prob, ea::SolveMode::optimalGuard(), cfg4);
      auto robotOpt = oracle::dijkstra_cost(toy.prob.robot, caps.stateCap);
      ++c4Checked;
      bool a = out4.search.status == search::Status::Solved && robotOpt.has_value() &&
               out4.solution.taskCost == *robotOpt;
      if (!a) {
        ++c4aBad;
        if (detail4.empty()) detail4 = " (first failure: " + toy.name + " part a)";
        continue;
      }
      Rational mceCost;
      auto m = oracle::mce(toy.prob, out4.solution.taskPlan, per, caps, &mceCost);
      bool b = m.has_value() && mceCost == out4.solution.explanationCost;
      if (!b) {
        ++c4bBad;
        if (detail4.empty()) detail4 = " (first failure: " + toy.name + " part b)";
        continue;
      }
      auto optPlans = oracle::enumerate_optimal_plans(toy.prob.robot, caps);
      for (const auto& plan : optPlans) {
        Rational otherCost;
        auto other = oracle::mce(toy.prob, plan, per, caps, &otherCost);
        if (other.has_value() && otherCost < out4.solution.explanationCost) {
          ++c4cBad;
          if (detail4.empty()) detail4 = " (first failure: " + toy.name + " part c)";
          break;
        }
      }
    }
    {
      std::ostringstream d;
      d << c3Checked << " perturbed toy instances, " << c3Bad
        << " minimum-cost mismatches vs the enumeration oracle" << detail3;
      report(3, c3Checked >= 30 && c3Bad == 0, d.str());
    }
    {
      std::ostringstream d;
      d << c4Checked << " instances under the agent-optimal cost regime: " << c4aBad
        << " task-cost, " << c4bBad << " MCE-cost, " << c4cBad << " cheaper-MCE violations"
        << detail4;
      report(4, c4Checked >= 30 && c4aBad + c4bBad + c4cBad == 0, d.str());
    }
  } catch (const std::exception& e) {
    report(3, false, std::string("exception: ") + e.what());
    report(4, false, std::string("exception (shared block): ") + e.what());
  }

  // --- criterion 5: admissibility end-to-end ------------------------------
  try {
    std::vector<std::pair<std::string, PlanningTask>> tasks;
    tasks.push_back({"usar-robot", loadBundled("usar/domain.pddl", "usar/problem_robot.pddl")});
    tasks.push_back({"usar-human", loadBundled("usar/domain.pddl", "usar/problem_human.pddl")});
    for (const auto& toy : toySuite()) {
      tasks.push_back({toy.name + "/human", toy.prob.human});
      if (tasks.size() >= 12) break;
    }
    {  // include compiled tasks so implication handling is covered
      PlanningTask bw = loadBundled("blocksworld/domain.pddl", "blocksworld/p_flat.pddl");
      auto prob = ea::make_ea_problem(bw, bench::perturb_model(bw, 4, 71));
      tasks.push_back({"compiled-blocksworld", ea::compile(prob, {}).task});
      tasks.push_back({"compiled-usar", ea::compile(bench::load_usar(), {}).task});
    }
    int costBad = 0, hBad = 0;
    std::size_t sampled = 0;
    std::string detail;
    for (const auto& [name, task] : tasks) {
      auto blind = search::astar(task, search::HeuristicKind::Blind);
      auto hmax = search::astar(task, search::HeuristicKind::HMax);
      bool solvedBoth = blind.status == search::Status::Solved &&
                        hmax.status == search::Status::Solved;
      bool unsolvBoth = blind.status == search::Status::ProvenUnsolvable &&
                        hmax.status == search::Status::ProvenUnsolvable;
      if (!((solvedBoth && blind.cost == hmax.cost) || unsolvBoth)) {
        ++costBad;
        if (detail.empty()) detail = " (cost mismatch on " + name + ")";
      }
      oracle::StateSpace space = oracle::StateSpace::build(task, 200000);
      auto togo = space.costToGo(task);
      for (std::size_t i = 0; i < space.states.size() && sampled < 4000; ++i) {
        if (!togo[i].has_value()) continue;  // dead ends constrain nothing
        auto h = search::hmax_value(task, space.states[i]);
        ++sampled;
        if (!h.has_value() || *h > *togo[i]) {
          ++hBad;
          if (detail.empty()) detail = " (inadmissible estimate on " + name + ")";
        }
      }
    }
    std::ostringstream d;
    d << tasks.size() << " tasks: blind/hmax optimal costs agree (" << costBad
      << " mismatches); hmax <= h* on " << sampled << " sampled states (" << hBad
      << " violations)" << detail;
    report(5, costBad == 0 && hBad == 0 && sampled >= 1000, d.str());
  } catch (const std::exception& e) {
    report(5, false, std::string("exception: ") + e.what());
  }

  // --- criteria 6 + 7: baseline dominance and the coverage/runtime trend --
  try {
    bench::BenchConfig cfg;
    cfg.variantsPerDomain = 3;
    cfg.timeLimitSeconds = 60;
    cfg.seed = 2024;
    cfg.workers = 2;
    bench::BenchReport benchReport = bench::run_bench(cfg);
    std::ofstream csv(csvOut);
    csv << benchReport.csv();

    int dominanceBad = 0, coSolved = 0;
    std::map<std::pair<std::string, int>,
             std::pair<const bench::BenchRow*, const bench::BenchRow*>>
        byInstance;
    for (const auto& r : benchReport.rows) {
      auto& slot = byInstance[{r.domain, r.variant}];
      (r.method == "compilation" ? slot.first : slot.second) = &r;
    }
    for (const auto& [key, pair] : byInstance) {
      if (pair.first == nullptr || pair.second == nullptr) continue;
      if (pair.first->status == "solved" && pair.second->status == "solved") {
        ++coSolved;
        if (pair.first->cost > pair.second->cost) ++dominanceBad;
      }
    }

    // the constructed incompleteness witness (single-plan-per-node trap)
    bool witnessOk = false;
    {
      const char* robotDom = R"PDDL(
(define (domain trap)
  (:predicates (x) (g) (blocked))
  (:action a_shortcut :parameters () :precondition (and (blocked)) :effect (and (g)))
  (:action direct :parameters () :precondition (and) :effect (and (g)))
  (:action set_x :parameters () :precondition (and) :effect (and (x)))
  (:action finish_via_x :parameters () :precondition (and (x)) :effect (and (g)))
))PDDL";
      const char* humanDom = R"PDDL(
(define (domain trap)
  (:predicates (x) (g) (blocked))
  (:action a_shortcut :parameters () :precondition (and) :effect (and (g)))
  (:action direct :parameters () :precondition (and) :effect (and (g)))
  (:action set_x :parameters () :precondition (and) :effect (and (x)))
  (:action finish_via_x :parameters () :precondition (and (x)) :effect (and (g)))
))PDDL";
      const char* probText = "(define (problem p) (:domain trap) (:init) (:goal (and (g))))";
      auto rd = pddl::parse_domain(robotDom);
      auto hd = pddl::parse_domain(humanDom);
      auto patch = [](PlanningTask t) {
        for (auto& a : t.actions)
          if (a.name == "a_shortcut" || a.name == "direct") a.cost = Rational(2);
        t.hasCosts = true;
        return t;
      };
      auto prob =
          ea::make_ea_problem(patch(ground::ground(rd, pddl::parse_problem(probText, rd))),
                              patch(ground::ground(hd, pddl::parse_problem(probText, hd))));
      auto base = mss::model_space_search(prob, Rational(1));
      ea::SolveConfig scfg;
      scfg.explanationCost = Rational(1);
      auto comp = ea::solve_ea(prob, ea::SolveMode::optimalGuard(), scfg);
      witnessOk = base.status == mss::MssStatus::ApproximationFailure &&
                  comp.search.status == search::Status::Solved &&
                  ea::verify_solution(prob, comp.solution, true).valid();
    }
    std::ostringstream d;
    d << coSolved << " co-solved bench instances, " << dominanceBad
      << " dominance violations; incompleteness witness "
      << (witnessOk ? "behaves as constructed" : "FAILED");
    report(6, dominanceBad == 0 && witnessOk && coSolved > 0, d.str());

    // criterion 7: elevator trend
    int compSolved = 0, baseSolved = 0, compTotal = 0, baseTotal = 0;
    double compTime = 0, baseTime = 0;
    for (const auto& r : benchReport.rows) {
      if (r.domain != "elevator") continue;
      double t = r.status == "solved" ? r.runtime : 60.0;
      if (r.method == "compilation") {
        ++compTotal;
        compTime += t;
        if (r.status == "solved") ++compSolved;
      } else if (r.method == "baseline") {
        ++baseTotal;
        baseTime += t;
        if (r.status == "solved") ++baseSolved;
      }
    }
    double compMean = compTime / (compTotal > 0 ? compTotal : 1);
    double baseMean = baseTime / (baseTotal > 0 ? baseTotal : 1);
    std::ostringstream d7;
    d7 << "elevator suite: compilation coverage " << compSolved << "/" << compTotal
       << " vs baseline " << baseSolved << "/" << baseTotal << "; mean runtime " << std::fixed
       << std::setprecision(2) << compMean << "s vs " << baseMean
       << "s (failures stand in at the 60s limit); CSV archived to " << csvOut;
    report(7, compSolved >= baseSolved && compMean < baseMean && compTotal == 3, d7.str());
  } catch (const std::exception& e) {
    report(6, false, std::string("exception: ") + e.what());
    report(7, false, std::string("exception (shared block): ") + e.what());
  }

  // --- criterion 8: linear compilation size -------------------------------
  try {
    int checked = 0, bad = 0;
    auto checkSize = [&](const ea::EaProblem& prob) {
      ea::CompileConfig cfg;
      cfg.ordering = ea::Ordering::Free;  // canonical augmented model
      ea::AugmentedTask aug = ea::compile(prob, cfg);
      ++checked;
      bool ok = aug.task.numFluents() <= 2 * prob.robot.numFluents() + aug.diff.size() + 2 &&
                aug.task.actions.size() <= prob.robot.actions.size() + aug.diff.size() + 2;
      if (!ok) ++bad;
    };
    checkSize(bench::load_usar());
    for (const auto& toy : toySuite()) checkSize(toy.prob);
    std::ostringstream d;
    d << checked << " compilations within |F|<=2|F|+|diff|+2 and |A|<=|A|+|diff|+2, " << bad
      << " violations";
    report(8, bad == 0 && checked >= 30, d.str());
  } catch (const std::exception& e) {
    report(8, false, std::string("exception: ") + e.what());
  }

  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << std::fixed
            << std::setprecision(1) << total << "s)\n";
  return failures;
}
