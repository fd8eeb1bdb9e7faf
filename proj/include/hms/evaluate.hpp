#pragma once

#include "hms/instance.hpp"

namespace hms {

// Machine loads of a (possibly partial) assignment. `unscaled` is the sum of
// processing times placed on the machine; `scaled` divides by the machine
// speed on the uniform model and equals `unscaled` elsewhere.
struct LoadVector {
  std::vector<Int> unscaled;
  std::vector<Rat> scaled;
};

// Throws EvalError on shape mismatch or a positive count on an infinite size.
LoadVector compute_loads(const ScheduleInstance& inst, const Assignment& a);

// Max scaled load. Requires a complete assignment.
Rat eval_makespan(const ScheduleInstance& inst, const Assignment& a);

// Sum of squared scaled loads. Requires a complete assignment.
Rat eval_l2sq(const ScheduleInstance& inst, const Assignment& a);

// Sum of weighted completion times, computed by expanding the assigned
// multiset per machine, sorting by Smith ratio w/p nonincreasing (ties by
// job-type index ascending) and accumulating completion times.
// Requires a complete assignment with weights present.
Rat eval_sumwc_sim(const ScheduleInstance& inst, const Assignment& a);

// Closed-form counterpart of eval_sumwc_sim, decomposed into nonnegative
// parts. For each machine the types are ordered by Smith ratio; writing z_t
// for the cumulative processing time through type t the contribution is
//   1/2 * sum_t [ (z_t)^2 (rho_t - rho_{t+1}) + p_t w_t x_t ]
// with rho after the last type taken as 0. The parts split that sum:
//   loadTerm      final cumulative term, 1/2 * L_i^2 * (last ratio); equals
//                 1/2 * sum L_i^2 when every machine bottoms out at ratio 1
//   gammaQuadr    the remaining ratio-step quadratic terms
//   uniformLinear 1/2 p w x over types whose size is machine-independent
//   gammaLinear   1/2 p w x over the machine-dependent types
struct SumWcBreakdown {
  Rat loadTerm;
  Rat gammaLinear;
  Rat gammaQuadr;
  Rat uniformLinear;
  Rat total;
};

SumWcBreakdown eval_sumwc_closed(const ScheduleInstance& inst, const Assignment& a);

// Closed-form sumwc contribution of a single machine holding `counts` jobs.
// Used by both eval_sumwc_closed and the minimization DP.
Rat machine_sumwc(const ScheduleInstance& inst, int machine, const std::vector<Int>& counts);

}  // namespace hms
