#pragma once

#include "eaplan/ea.hpp"
#include "eaplan/search.hpp"

namespace eaplan::mss {

enum class MssStatus { Solved, ApproximationFailure, Unsolvable, Timeout, ResourceLimit };
std::string to_string(MssStatus s);

struct MssResult {
  MssStatus status = MssStatus::Unsolvable;
  ea::EASolution solution;   // set when Solved
  Rational totalCost{0};     // explanation cost + task cost
  std::uint64_t nodesVisited = 0;
  std::uint64_t innerSearches = 0;
  double wallTime = 0;
};

// Optimistic, approximate model-space search: best-first over update subsets
// ordered by explanation cost, one optimal plan per node. The search ends at
// the first node whose plan cost matches the robot optimum; if that single
// plan happens not to be executable in the robot model, the method fails,
// which is exactly its known incompleteness.
MssResult model_space_search(const ea::EaProblem& prob, const Rational& explanationCost,
                             const std::map<std::string, Rational>& explanationCostTable = {},
                             const search::Limits& limits = {});

}  // namespace eaplan::mss
