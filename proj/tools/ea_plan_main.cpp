// ea-plan: expectation-aware planning toolkit CLI.
//
// Exit codes: 0 solved/ok, 1 unsolvable, 2 timeout, 3 input error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "eaplan/bench.hpp"
#include "eaplan/ground.hpp"
#include "eaplan/json_io.hpp"
#include "eaplan/mss.hpp"
#include "eaplan/oracle.hpp"
#include "eaplan/solve.hpp"

namespace {

using namespace eaplan;

constexpr int kExitOk = 0;
constexpr int kExitUnsolvable = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitInputError = 3;

struct ModelArgs {
  std::vector<std::string> robot;  // domain problem
  std::vector<std::string> human;
};

void addModelFlags(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--robot", args.robot, "robot model: domain.pddl problem.pddl")
      ->expected(2)
      ->required();
  cmd->add_option("--human", args.human, "observer model: domain.pddl problem.pddl")
      ->expected(2)
      ->required();
}

ea::EaProblem loadPair(const ModelArgs& args) {
  return bench::load_pair(args.robot[0], args.robot[1], args.human[0], args.human[1]);
}

struct SolveFlags {
  std::string mode = "optimal";
  std::string ordering = "prefix";
  std::string stage = "propose";
  std::string heuristic = "hmax";
  std::string explCost = "1";
  std::string penalty = "0";
  bool noInference = false;
  double timeLimit = 0;
  std::uint64_t nodeLimit = 0;
  std::string jsonOut;
};

void addSolveFlags(CLI::App* cmd, SolveFlags& f, bool withMode) {
  if (withMode)
    cmd->add_option("--mode", f.mode, "valid | optimal | penalty")->default_val("optimal");
  cmd->add_option("--expl-cost", f.explCost, "uniform explanatory action cost (rational)")
      ->default_val("1");
  cmd->add_option("--penalty", f.penalty,
                  "penalty weight (penalty mode; 0 = 2 x max action cost)")
      ->default_val("0");
  cmd->add_option("--ordering", f.ordering, "free | before-first-use | prefix")
      ->default_val("prefix");
  cmd->add_option("--stage", f.stage, "propose | execute")->default_val("propose");
  cmd->add_flag("--no-inference", f.noInference,
                "disable the conditional-effect inference heuristic (execute stage)");
  cmd->add_option("--heuristic", f.heuristic, "blind | hmax | hadd")->default_val("hmax");
  cmd->add_option("--time-limit", f.timeLimit, "seconds, 0 = unlimited");
  cmd->add_option("--node-limit", f.nodeLimit, "max expansions, 0 = unlimited");
  cmd->add_option("--json", f.jsonOut, "write the result as JSON to this file");
}

ea::SolveConfig toConfig(const SolveFlags& f) {
  ea::SolveConfig cfg;
  cfg.explanationCost = Rational::parse(f.explCost);
  auto ord = ea::ordering_from_name(f.ordering);
  if (!ord.has_value()) throw CLI::ValidationError("--ordering", "unknown ordering " + f.ordering);
  cfg.ordering = *ord;
  auto st = ea::stage_from_name(f.stage);
  if (!st.has_value()) throw CLI::ValidationError("--stage", "unknown stage " + f.stage);
  cfg.stage = *st;
  cfg.inference = !f.noInference;
  if (f.heuristic == "blind") cfg.heuristic = search::HeuristicKind::Blind;
  else if (f.heuristic == "hmax") cfg.heuristic = search::HeuristicKind::HMax;
  else if (f.heuristic == "hadd") cfg.heuristic = search::HeuristicKind::HAdd;
  else throw CLI::ValidationError("--heuristic", "unknown heuristic " + f.heuristic);
  return cfg;
}

search::Limits toLimits(const SolveFlags& f) {
  search::Limits lim;
  lim.maxSeconds = f.timeLimit;
  lim.maxExpansions = f.nodeLimit;
  return lim;
}

void writeJson(const std::string& path, const io::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int statusExit(search::Status s) {
  switch (s) {
    case search::Status::Solved: return kExitOk;
    case search::Status::ProvenUnsolvable: return kExitUnsolvable;
    default: return kExitTimeout;
  }
}

std::uint64_t seedOrEnv(std::uint64_t seed) {
  const char* env = std::getenv("EA_PLAN_SEED");
  if (env != nullptr && *env != '\0') return std::strtoull(env, nullptr, 10);
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ea-plan: expectation-aware planning toolkit"};
  app.require_subcommand(1);
  std::string dataDir;
  app.add_option("--data", dataDir, "directory with the bundled models");

  // ---- compile ----
  ModelArgs compileModels;
  SolveFlags compileFlags;
  std::string outPrefix = "augmented";
  auto* cmdCompile =
      app.add_subcommand("compile", "compile a model pair into one augmented task");
  addModelFlags(cmdCompile, compileModels);
  addSolveFlags(cmdCompile, compileFlags, false);
  cmdCompile->add_option("--out", outPrefix, "output prefix for <out>_domain.pddl / _problem.pddl")
      ->default_val("augmented");

  // ---- solve ----
  ModelArgs solveModels;
  SolveFlags solveFlags;
  auto* cmdSolve = app.add_subcommand("solve", "solve an expectation-aware problem");
  addModelFlags(cmdSolve, solveModels);
  addSolveFlags(cmdSolve, solveFlags, true);

  // ---- baseline ----
  ModelArgs mssModels;
  SolveFlags mssFlags;
  auto* cmdBaseline =
      app.add_subcommand("baseline", "model-space-search baseline (optimistic, approximate)");
  addModelFlags(cmdBaseline, mssModels);
  addSolveFlags(cmdBaseline, mssFlags, false);

  // ---- verify ----
  ModelArgs verifyModels;
  std::string solutionPath, verifyPlanPath, verifyJsonOut;
  bool verifyOptimality = false;
  auto* cmdVerify = app.add_subcommand("verify", "check a solution file against a model pair");
  addModelFlags(cmdVerify, verifyModels);
  cmdVerify->add_option("--solution", solutionPath, "solution JSON (as written by solve --json)");
  cmdVerify->add_option("--plan", verifyPlanPath,
                        "plan text file, one (action) per line; no explanations assumed");
  cmdVerify->add_flag("--optimality", verifyOptimality,
                      "also require optimality in the updated model");
  cmdVerify->add_option("--json", verifyJsonOut, "write the report as JSON");

  // ---- perturb ----
  std::vector<std::string> perturbModel;
  int perturbN = 5;
  std::uint64_t perturbSeed = 2024;
  std::string perturbOut = "perturbed";
  auto* cmdPerturb =
      app.add_subcommand("perturb", "derive an observer model by random inverse updates");
  cmdPerturb->add_option("--robot", perturbModel, "robot model: domain.pddl problem.pddl")
      ->expected(2)
      ->required();
  cmdPerturb->add_option("-n,--updates", perturbN, "number of updates")->default_val(5);
  cmdPerturb->add_option("--seed", perturbSeed, "RNG seed (EA_PLAN_SEED overrides)");
  cmdPerturb->add_option("--out", perturbOut, "output prefix");

  // ---- bench ----
  bench::BenchConfig benchCfg;
  std::string benchCsv = "bench.csv";
  std::string benchDomain;
  auto* cmdBench = app.add_subcommand("bench", "run the benchmark harness on the bundled suite");
  cmdBench->add_option("--time-limit", benchCfg.timeLimitSeconds, "per-instance seconds")
      ->default_val(60.0);
  cmdBench->add_option("--variants", benchCfg.variantsPerDomain, "perturbed variants per domain")
      ->default_val(3);
  cmdBench->add_option("--seed", benchCfg.seed, "RNG seed (EA_PLAN_SEED overrides)");
  cmdBench->add_option("--workers", benchCfg.workers, "parallel workers")->default_val(2);
  cmdBench->add_option("--csv", benchCsv, "CSV output path")->default_val("bench.csv");
  cmdBench->add_option("--domain", benchDomain, "restrict to one bundled domain by name");
  std::string benchConfigFile;
  cmdBench->add_option("--config", benchConfigFile, "key=value config file");

  // ---- demo-usar ----
  std::string demoOut;
  auto* cmdDemo = app.add_subcommand("demo-usar", "cost-tradeoff walkthrough on the rescue map");
  cmdDemo->add_option("--out", demoOut, "also write the transcript to this file");

  // ---- oracle (debugging) ----
  auto* cmdOracle = app.add_subcommand("oracle", "brute-force ground truth (small instances)");
  ModelArgs oracleModels;
  std::string oracleOp = "min-cost";
  std::string oracleExplCost = "1";
  std::string oracleCostCap = "1000";
  std::size_t oracleLenCap = 20;
  addModelFlags(cmdOracle, oracleModels);
  cmdOracle->add_option("--op", oracleOp, "min-cost | enumerate | delta")->default_val("min-cost");
  cmdOracle->add_option("--expl-cost", oracleExplCost)->default_val("1");
  cmdOracle->add_option("--cost-cap", oracleCostCap)->default_val("1000");
  cmdOracle->add_option("--len-cap", oracleLenCap)->default_val(20);

  CLI11_PARSE(app, argc, argv);
  if (!dataDir.empty()) bench::set_data_dir(dataDir);

  try {
    if (cmdCompile->parsed()) {
      ea::EaProblem prob = loadPair(compileModels);
      ea::SolveConfig cfg = toConfig(compileFlags);
      ea::AugmentedTask aug = ea::compile(prob, cfg);
      ea::annotate_side_effects(aug, cfg.stage, cfg.inference);
      auto ser = ground::serialize_task(aug.task);
      writeFile(outPrefix + "_domain.pddl", ser.domain);
      writeFile(outPrefix + "_problem.pddl", ser.problem);
      std::cout << "augmented task: " << aug.task.numFluents() << " fluents, "
                << aug.task.actions.size() << " actions, " << aug.diff.size()
                << " model updates\n"
                << "wrote " << outPrefix << "_domain.pddl and " << outPrefix
                << "_problem.pddl\n";
      if (!compileFlags.jsonOut.empty())
        writeJson(compileFlags.jsonOut, io::to_json(ea::diff_models(prob)));
      return kExitOk;
    }

    if (cmdSolve->parsed()) {
      ea::EaProblem prob = loadPair(solveModels);
      ea::SolveConfig cfg = toConfig(solveFlags);
      ea::SolveMode mode = ea::SolveMode::optimalGuard();
      if (solveFlags.mode == "valid") mode = ea::SolveMode::valid();
      else if (solveFlags.mode == "optimal") mode = ea::SolveMode::optimalGuard();
      else if (solveFlags.mode == "penalty")
        mode = ea::SolveMode::penalty(Rational::parse(solveFlags.penalty));
      else throw CLI::ValidationError("--mode", "unknown mode " + solveFlags.mode);

      ea::SolveOutcome out = ea::solve_ea(prob, mode, cfg, toLimits(solveFlags));
      if (out.search.status == search::Status::Solved) {
        std::cout << "status: solved  objective: " << out.objective.str()
                  << "  (task " << out.solution.taskCost.str() << " + explanations "
                  << out.solution.explanationCost.str()
                  << (out.penalized ? " + penalty" : "") << ")\n";
        std::cout << "self-explaining plan:";
        for (const auto& a : out.augmentedPlan) std::cout << " " << a;
        std::cout << "\nexplanation:\n";
        for (const auto& u : out.solution.explanation) std::cout << "  " << u.canonical() << "\n";
        std::cout << "task plan:\n";
        for (const auto& a : out.solution.taskPlan) std::cout << "  (" << a << ")\n";
      } else {
        std::cout << "status: " << search::to_string(out.search.status) << "\n";
      }
      if (!solveFlags.jsonOut.empty()) writeJson(solveFlags.jsonOut, io::to_json(out));
      return statusExit(out.search.status);
    }

    if (cmdBaseline->parsed()) {
      ea::EaProblem prob = loadPair(mssModels);
      search::Limits lim = toLimits(mssFlags);
      mss::MssResult out =
          mss::model_space_search(prob, Rational::parse(mssFlags.explCost), {}, lim);
      std::cout << "status: " << mss::to_string(out.status) << "  nodes: " << out.nodesVisited
                << "  inner searches: " << out.innerSearches << "\n";
      if (out.status == mss::MssStatus::Solved) {
        std::cout << "total cost: " << out.totalCost.str() << "\nexplanation:\n";
        for (const auto& u : out.solution.explanation) std::cout << "  " << u.canonical() << "\n";
        std::cout << "task plan:\n";
        for (const auto& a : out.solution.taskPlan) std::cout << "  (" << a << ")\n";
      }
      if (!mssFlags.jsonOut.empty()) writeJson(mssFlags.jsonOut, io::to_json(out));
      switch (out.status) {
        case mss::MssStatus::Solved: return kExitOk;
        case mss::MssStatus::Timeout:
        case mss::MssStatus::ResourceLimit: return kExitTimeout;
        default: return kExitUnsolvable;
      }
    }

    if (cmdVerify->parsed()) {
      ea::EaProblem prob = loadPair(verifyModels);
      if (solutionPath.empty() == verifyPlanPath.empty())
        throw std::runtime_error("verify needs exactly one of --solution or --plan");
      ea::EASolution sol;
      if (!solutionPath.empty()) {
        io::json j = io::json::parse(pddl::read_file(solutionPath));
        if (j.contains("solution")) j = j["solution"];
        sol = io::solution_from_json(j);
      } else {
        sol.taskPlan = parse_plan_text(pddl::read_file(verifyPlanPath));
      }
      ea::SolutionReport rep = ea::verify_solution(prob, sol, verifyOptimality);
      std::cout << (rep.valid() ? "VALID" : "INVALID") << "\n"
                << io::to_json(rep).dump(2) << "\n";
      if (!verifyJsonOut.empty()) writeJson(verifyJsonOut, io::to_json(rep));
      return rep.valid() ? kExitOk : kExitUnsolvable;
    }

    if (cmdPerturb->parsed()) {
      PlanningTask robot = bench::load_model(perturbModel[0], perturbModel[1]);
      PlanningTask human = bench::perturb_model(robot, perturbN, seedOrEnv(perturbSeed));
      // Emit both sides as ground tasks so the pair shares one vocabulary.
      auto humanSer = ground::serialize_task(human);
      writeFile(perturbOut + "_human_domain.pddl", humanSer.domain);
      writeFile(perturbOut + "_human_problem.pddl", humanSer.problem);
      auto robotSer = ground::serialize_task(robot);
      writeFile(perturbOut + "_robot_domain.pddl", robotSer.domain);
      writeFile(perturbOut + "_robot_problem.pddl", robotSer.problem);
      ea::EaProblem prob = ea::make_ea_problem(std::move(robot), std::move(human));
      std::cout << "wrote " << perturbOut << "_{robot,human}_{domain,problem}.pddl with "
                << ea::diff_models(prob).size() << " model updates\n";
      return kExitOk;
    }

    if (cmdBench->parsed()) {
      benchCfg.seed = seedOrEnv(benchCfg.seed);
      if (!benchConfigFile.empty()) {
        // key=value lines: time_limit, variants, seed, workers, csv
        std::istringstream in(pddl::read_file(benchConfigFile));
        std::string line;
        while (std::getline(in, line)) {
          auto eq = line.find('=');
          if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
          std::string key = line.substr(0, eq), val = line.substr(eq + 1);
          if (key == "time_limit") benchCfg.timeLimitSeconds = std::stod(val);
          else if (key == "variants") benchCfg.variantsPerDomain = std::stoi(val);
          else if (key == "seed") benchCfg.seed = std::stoull(val);
          else if (key == "workers") benchCfg.workers = std::stoi(val);
          else if (key == "csv") benchCsv = val;
          else if (key == "domain") benchDomain = val;
          else throw std::runtime_error("unknown bench config key: " + key);
        }
      }
      if (!benchDomain.empty()) {
        for (const auto& d : bench::default_bench_domains())
          if (d.name == benchDomain) benchCfg.domains.push_back(d);
        if (benchCfg.domains.empty())
          throw std::runtime_error("unknown bench domain: " + benchDomain);
      }
      bench::BenchReport report = bench::run_bench(benchCfg, &std::cerr);
      writeFile(benchCsv, report.csv());
      std::cout << report.summary() << "\nwrote " << benchCsv << "\n";
      return kExitOk;
    }

    if (cmdDemo->parsed()) {
      bench::UsarDemoResult res = bench::run_usar_demo();
      std::cout << res.transcript;
      if (!demoOut.empty()) writeFile(demoOut, res.transcript);
      return kExitOk;
    }

    if (cmdOracle->parsed()) {
      ea::EaProblem prob = loadPair(oracleModels);
      oracle::OracleCaps caps;
      caps.costCap = Rational::parse(oracleCostCap);
      caps.planLenCap = oracleLenCap;
      if (oracleOp == "min-cost") {
        auto best = oracle::min_valid_total_cost(prob, Rational::parse(oracleExplCost), caps);
        if (best.has_value()) {
          std::cout << "min total cost: " << best->str() << "\n";
          return kExitOk;
        }
        std::cout << "no valid solution within caps\n";
        return kExitUnsolvable;
      }
      if (oracleOp == "enumerate") {
        auto all = oracle::enumerate_ea_solutions(prob, Rational::parse(oracleExplCost), caps);
        std::cout << all.size() << " solutions within caps\n";
        return kExitOk;
      }
      if (oracleOp == "delta") {
        auto d = oracle::exact_delta(prob.robot, caps);
        std::cout << "exact delta: " << d.value.str() << (d.capCensored ? " (cap-censored)" : "")
                  << "\n";
        return kExitOk;
      }
      throw CLI::ValidationError("--op", "unknown oracle op " + oracleOp);
    }
  } catch (const pddl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const pddl::UnsupportedFeatureError& e) {
    std::cerr << "unsupported construct '" << e.construct << "': " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
