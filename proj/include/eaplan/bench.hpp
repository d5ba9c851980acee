#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "eaplan/ea.hpp"
#include "eaplan/perturb.hpp"
#include "eaplan/solve.hpp"

namespace eaplan::bench {

// Bundled models live under the data directory (EA_PLAN_DATA env var >
// --data flag > compiled-in default).
std::string data_dir();
void set_data_dir(const std::string& dir);

PlanningTask load_model(const std::string& domainPath, const std::string& problemPath);
ea::EaProblem load_pair(const std::string& robotDomain, const std::string& robotProblem,
                        const std::string& humanDomain, const std::string& humanProblem);
// Robot/observer pair for the bundled search-and-rescue scenario.
ea::EaProblem load_usar();

struct BenchDomain {
  std::string name;
  std::string domainFile;   // relative to data_dir()
  std::string problemFile;
  int updatesPerVariant = 10;
};

struct BenchConfig {
  std::vector<BenchDomain> domains;  // empty = the bundled mini suite
  int variantsPerDomain = 3;
  double timeLimitSeconds = 60;
  Rational explCostFactor{2};  // explanation cost = factor x max action cost
  ea::Ordering ordering = ea::Ordering::PlanPrefix;
  search::HeuristicKind heuristic = search::HeuristicKind::HMax;
  std::uint64_t seed = 2024;
  int workers = 2;
};

// The bundled mini suite: blocksworld, elevator, gripper, driverlog,
// satellite (gripper/driverlog get 5 updates, the rest 10).
std::vector<BenchDomain> default_bench_domains();

struct BenchRow {
  std::string domain;
  int variant = 0;
  std::string problem;
  std::string method;  // "compilation" | "baseline"
  std::string status;
  Rational cost{0};      // explanation + task cost when solved
  Rational explCost{0};
  Rational taskCost{0};
  double runtime = 0;    // timeouts are reported at the limit
  std::uint64_t expanded = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double timeLimitSeconds = 0;
  std::string csv() const;  // fixed column order, plot-ready
  // Coverage and mean runtime per (domain, method). Unsolved instances stand
  // in at the time limit, mirroring the usual coverage-table accounting.
  std::string summary() const;
};

BenchReport run_bench(const BenchConfig& cfg, std::ostream* progress = nullptr);

// Walks the bundled rescue scenario through the three regimes (cheap
// explanations, expensive explanations, penalty mode) and returns the
// transcript. The regime outcomes are also returned for tests.
struct UsarDemoResult {
  std::string transcript;
  ea::SolveOutcome cheap;      // explanation cost 1, optimality guard
  ea::SolveOutcome expensive;  // explanation cost 100, optimality guard
  ea::SolveOutcome penalty;    // explanation cost 100, penalty weight 50
};
UsarDemoResult run_usar_demo();

}  // namespace eaplan::bench
