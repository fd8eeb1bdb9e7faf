#pragma once

#include "hms/evaluate.hpp"
#include "hms/instance.hpp"
#include "hms/problems.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hms {

struct SolverLimits {
  // Cap on materialized DP states / brute-force leaves. Exceeding it throws
  // BudgetExceeded; callers treat that as "skipped", never as an answer.
  std::uint64_t maxStates = 10'000'000;
};

// All x with 0 <= x <= bound whose unscaled load sum p[t]*x[t] on `machine`
// is at most cap * speed(machine) (uniform) resp. cap (otherwise), in
// lexicographic order. Types with an infinite size on the machine only admit
// x[t] = 0.
std::vector<std::vector<Int>> enumerate_configurations(const ScheduleInstance& inst,
                                                       int machine, const Rat& cap,
                                                       const std::vector<Int>& bound);

// Configuration DP over machines: is there a complete assignment with every
// scaled load at most T? Returns one such assignment, rebuilt from back
// pointers and re-verified with eval_makespan before returning.
std::optional<Assignment> dp_feasible_cmax(const ScheduleInstance& inst, const Rat& T,
                                           const SolverLimits& limits = {});

struct SolveResult {
  Assignment assignment;
  Rat value;
};

// Exact minimum of the instance objective. cmax runs a binary search over
// the achievable per-machine loads, each step a dp_feasible_cmax call; l2sq
// and sumwc run an additive DP over job-count vectors. Ties are broken
// toward the lexicographically smallest configuration per machine.
SolveResult dp_minimize(const ScheduleInstance& inst, const SolverLimits& limits = {});

// Independent oracle: enumerates complete assignments type by type and
// evaluates each with the core evaluators. Shares no code with dp_minimize
// beyond those evaluators.
SolveResult brute_force_solve(const ScheduleInstance& inst, const SolverLimits& limits = {});

struct BinUse {
  int binType = 0;
  std::vector<Int> itemCounts;
};

struct CuttingStockSolution {
  std::vector<Int> purchases;  // per bin type
  std::vector<BinUse> bins;    // one entry per bought bin
  Int cost = 0;
};

// Minimum-cost purchase plus a packing, by a DP over remaining-item vectors
// whose transitions are maximal feasible bin fillings. Throws ReductionError
// when some item fits in no bin, BudgetExceeded past the state budget.
CuttingStockSolution cuttingstock_solve(const CuttingStockInstance& cs,
                                        const SolverLimits& limits = {});

}  // namespace hms
