#pragma once

#include <cstdint>

#include "eaplan/task.hpp"

namespace eaplan::bench {

struct PerturbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Derives an observer model from the robot model by n random inverse
// updates: dropped/extra preconditions and effects, flipped initial facts,
// altered goals. The result stays well-formed, diffs back to the robot model
// in exactly n units, and is a pure function of (robot, n, seed).
PlanningTask perturb_model(const PlanningTask& robot, int n, std::uint64_t seed);

}  // namespace eaplan::bench
