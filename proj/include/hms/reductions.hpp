#pragma once

#include "hms/instance.hpp"
#include "hms/problems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hms {

// Everything needed to interpret a reduced scheduling instance: the family
// tag, the job-type layout, the source items and derived constants, the
// exact target value, and (for the unrelated families) the rank-2 factors
// C (types x 2) and D (2 x machines) of the size matrix.
struct ReductionCertificate {
  std::string family;
  std::vector<std::string> jobTypeLabels;
  int bins = 0;  // k of the source balanced instance
  Int A = 0;     // k * B
  Int B = 0;
  Int aMax = 0;
  std::vector<Int> items;  // source items, machine order
  Rat targetMakespan = 0;  // capacity bound used by the cmax families
  Rat targetValue = 0;     // objective value equivalent to source feasibility
  std::optional<std::vector<std::vector<Int>>> rank2C;
  std::optional<std::vector<std::vector<Int>>> rank2D;
};

struct ReducedInstance {
  ScheduleInstance instance;
  ReductionCertificate certificate;
};

// Grow every item and the capacity so that the instance becomes balanced:
// sizes + 1, capacity + items-per-bin, padded with unit items to k equal
// bins. Preserves feasibility in both directions and keeps tightness.
BalancedBinPackingInstance bp_to_bbp(const BinPackingInstance& bp);

// Tight balanced bin packing -> uniform-machines makespan decision.
// Job types alpha1_j, alpha0_j per bin j plus beta_j; machine i runs at
// speed (T + a_i)/T, target T = 3 k A^3.
ReducedInstance bbp_to_q_cmax(const BalancedBinPackingInstance& bbp);

// Tight balanced bin packing -> unrelated machines, rank-2 size matrix:
// the uniform construction made machine-independent plus a gamma type with
// p_gamma^i = 4 k A^3 - a_i, target 7 k A^3.
ReducedInstance bbp_to_r_cmax(const BalancedBinPackingInstance& bbp);

// Two-bin variant with only four job types (alpha1_1, alpha0_1, alpha1_2,
// beta_2), sizes offset per machine by a_i, target A^4. Requires k = 2.
ReducedInstance bbp_to_r_cmax_4types(const BalancedBinPackingInstance& bbp);

// As bbp_to_q_cmax but deciding the sum of squared scaled loads: integer
// speeds s_i = ceil_sqrt((T + aMax)^2 (T + a_i)), target sum((T+a_i)/s_i)^2.
ReducedInstance bbp_to_q_l2(const BalancedBinPackingInstance& bbp);

// The bbp_to_r_cmax instance with objective l2sq and target m * T^2.
ReducedInstance bbp_to_r_l2(const BalancedBinPackingInstance& bbp);

// The bbp_to_r_cmax instance with weights w_t = p_t (alpha/beta) and
// w_gamma = 4 k A^3, objective sumwc, target
//   m T^2 / 2 + sum_t n_t p_t w_t / 2 + sum_i p_gamma^i (w_gamma + a_i) / 2.
ReducedInstance bbp_to_r_sumwc(const BalancedBinPackingInstance& bbp);

// Uniform makespan decision with integral capacities T * s_i -> cutting
// stock with one bin type per machine, radix-separated size coordinates and
// a budget met exactly when the scheduling instance is feasible.
CuttingStockInstance q_to_cutting_stock(const ScheduleInstance& q);

// The schedule induced by a perfect packing: machine i takes a_i copies of
// alpha1_{j(i)}, A - a_i of alpha0_{j(i)}, one beta_{j(i)} (families with
// betas per bin), and one gamma where present. Throws ReductionError when
// the packing is not a tight balanced packing of the certificate's items.
Assignment perfect_schedule(const ReductionCertificate& cert, const Packing& packing);

struct PackingRecovery {
  std::optional<Packing> packing;
  std::string violation;  // set when recovery fails
};

// Inverse of perfect_schedule: checks that the assignment has the exact
// perfect shape on every machine and returns the induced packing.
PackingRecovery packing_from_perfect_schedule(const ReductionCertificate& cert,
                                              const Assignment& a);

}  // namespace hms
