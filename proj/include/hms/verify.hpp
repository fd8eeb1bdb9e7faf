#pragma once

#include "hms/problems.hpp"
#include "hms/reductions.hpp"
#include "hms/solvers.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hms {

// Families understood by the sweeps. bp2bbp rebases plain bin packing;
// q2cs chains bbp_to_q_cmax with q_to_cutting_stock.
inline const std::vector<std::string>& reduction_families() {
  static const std::vector<std::string> f = {
      "bp2bbp",  "bbp2qcmax", "bbp2rcmax", "bbp2rcmax4",
      "q2cs",    "bbp2ql2",   "bbp2rl2",   "bbp2rswc"};
  return f;
}

struct SweepSpec {
  std::string family;
  bool exhaustive = false;  // enumerate all instances in the bounds
  int trials = 0;           // seeded random instances on top
  std::uint64_t seed = 0;
  int bins = 2;      // k
  int minItems = 1;  // smallest source item count generated
  int maxItems = 4;  // largest source item count generated
  int maxSize = 4;   // item size bound
  bool tightOnly = true;
  // oracle sweep bounds
  int maxMachines = 3;
  int maxTypes = 3;
  int maxJobs = 6;
  int samplesPerShape = 3;
  std::uint64_t maxStates = 10'000'000;
};

struct InstanceRecord {
  std::string digest;
  std::string family;
  std::string sourceFeasible;   // yes / no / -
  std::string reducedFeasible;  // yes / no / skipped / -
  std::string verdict;          // pass / fail / skipped
  long long wallMs = 0;
};

struct SweepReport {
  SweepSpec spec;
  std::vector<InstanceRecord> records;
  std::vector<std::string> counterexamples;
  long long instances = 0;
  long long passed = 0;
  long long failed = 0;
  long long skipped = 0;

  bool pass() const { return counterexamples.empty(); }
};

// Reduce every (enumerated + sampled) source instance, decide the source by
// brute force and the reduced instance by the matching solver, and compare.
// DP solutions additionally round-trip through
// packing_from_perfect_schedule and the recovered packing is validated.
SweepReport roundtrip_check(const SweepSpec& spec);

// Planted-packing instances only: build a feasible tight balanced instance
// with a known packing, reduce, and check the reduced instance hits the
// certificate target exactly (makespan bound, l2sq value, sumwc value with
// its breakdown identities, Eq-style per-machine load checks, rank-2
// factorization where present).
SweepReport target_value_check(const SweepSpec& spec);

// dp_minimize versus brute_force_solve over a structured grid of scheduling
// instances across all models and objectives.
SweepReport oracle_equivalence_sweep(const SweepSpec& spec);

// Sample k * itemsPerBin item sizes bin by bin (positive, summing to the
// capacity, each at most maxSize) and shuffle; returns the instance and the
// planted packing. Requires itemsPerBin <= capacity <= itemsPerBin*maxSize.
struct PlantedInstance {
  BalancedBinPackingInstance bbp;
  Packing packing;
};
PlantedInstance plant_packing(int bins, int itemsPerBin, const Int& capacity,
                              const Int& maxSize, Rng& rng);

std::string report_csv(const SweepReport& report);
std::string report_json_summary(const SweepReport& report);

}  // namespace hms
