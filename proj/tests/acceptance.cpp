// Acceptance gate: eight end-to-end checks, one pass/fail line each.
// Everything here goes through the public library surface and independent
// oracles; no check trusts the component it is checking.

#include "hms/errors.hpp"
#include "hms/evaluate.hpp"
#include "hms/instance.hpp"
#include "hms/nfold.hpp"
#include "hms/problems.hpp"
#include "hms/reductions.hpp"
#include "hms/solvers.hpp"
#include "hms/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hms;

constexpr std::uint64_t kSeed = 20260817;

// All tight two-bin sources with exactly `items` sizes in [1, maxSize].
std::vector<BalancedBinPackingInstance> tight_two_bin_sources(int items, int maxSize) {
  std::vector<BalancedBinPackingInstance> out;
  std::vector<Int> sizes(items, Int(1));
  std::function<void(int, int)> walk = [&](int pos, int low) {
    if (pos == items) {
      Int total = 0;
      for (const Int& s : sizes) total += s;
      if (total % 2 == 0) out.push_back({sizes, 2, Int(total / 2)});
      return;
    }
    for (int v = low; v <= maxSize; ++v) {
      sizes[pos] = v;
      walk(pos + 1, v);
    }
  };
  walk(0, 1);
  return out;
}

ReducedInstance reduce_as(const std::string& family, const BalancedBinPackingInstance& bbp) {
  if (family == "bbp2qcmax") return bbp_to_q_cmax(bbp);
  if (family == "bbp2rcmax") return bbp_to_r_cmax(bbp);
  if (family == "bbp2rcmax4") return bbp_to_r_cmax_4types(bbp);
  if (family == "bbp2ql2") return bbp_to_q_l2(bbp);
  if (family == "bbp2rl2") return bbp_to_r_l2(bbp);
  return bbp_to_r_sumwc(bbp);
}

bool rank2_product_matches(const ReducedInstance& red, std::string& detail) {
  const auto& C = red.certificate.rank2C;
  const auto& D = red.certificate.rank2D;
  if (!C || !D) {
    detail = red.certificate.family + ": rank-2 factors missing";
    return false;
  }
  const ScheduleInstance& inst = red.instance;
  for (int t = 0; t < inst.typeCount(); ++t)
    for (int i = 0; i < inst.machines; ++i) {
      Int got = (*C)[t][0] * (*D)[0][i] + (*C)[t][1] * (*D)[1][i];
      if (got != size_on(inst, i, t).value) {
        detail = red.certificate.family + ": C*D deviates at type " + std::to_string(t) +
                 ", machine " + std::to_string(i);
        return false;
      }
    }
  return true;
}

bool sweep_clean(const SweepReport& report, const std::string& what, std::string& detail,
                 bool allowSkips = false) {
  if (!report.pass()) {
    detail = what + ": " + report.counterexamples.front();
    return false;
  }
  if (!allowSkips && report.skipped > 0) {
    detail = what + ": " + std::to_string(report.skipped) + " instances skipped on budget";
    return false;
  }
  return true;
}

// ---- criterion 1 -----------------------------------------------------------

bool criterion_oracle(std::string& detail, std::string& stats) {
  SweepSpec spec;
  spec.seed = kSeed;
  spec.maxMachines = 3;
  spec.maxTypes = 3;
  spec.maxJobs = 6;
  spec.maxSize = 5;
  spec.samplesPerShape = 3;
  SweepReport report = oracle_equivalence_sweep(spec);
  stats = std::to_string(report.instances) + " instances";
  return sweep_clean(report, "oracle grid", detail);
}

// ---- criterion 2 -----------------------------------------------------------

bool criterion_rebase(std::string& detail, std::string& stats) {
  long long total = 0;
  for (int bins : {2, 3}) {
    SweepSpec spec;
    spec.family = "bp2bbp";
    spec.exhaustive = true;
    spec.bins = bins;
    spec.minItems = 1;
    spec.maxItems = 5;
    spec.maxSize = 4;
    spec.tightOnly = true;
    SweepReport report = roundtrip_check(spec);
    total += report.instances;
    if (!sweep_clean(report, "rebase with " + std::to_string(bins) + " bins", detail))
      return false;
  }
  stats = std::to_string(total) + " tight sources";
  return true;
}

// ---- criterion 3 -----------------------------------------------------------

bool criterion_roundtrip(std::string& detail, std::string& stats) {
  long long total = 0;
  for (const char* family : {"bbp2qcmax", "bbp2rcmax", "bbp2rcmax4"}) {
    SweepSpec spec;
    spec.family = family;
    spec.bins = 2;
    spec.minItems = 4;
    spec.maxItems = 4;

    spec.exhaustive = true;
    spec.maxSize = 4;
    SweepReport exhaustive = roundtrip_check(spec);
    total += exhaustive.instances;
    if (!sweep_clean(exhaustive, std::string(family) + " exhaustive", detail)) return false;

    spec.exhaustive = false;
    spec.trials = 50;
    spec.seed = kSeed;
    spec.maxSize = 8;
    SweepReport random = roundtrip_check(spec);
    total += random.instances;
    if (!sweep_clean(random, std::string(family) + " random", detail)) return false;
  }
  stats = std::to_string(total) + " roundtrips";
  return true;
}

// ---- criterion 4 -----------------------------------------------------------

bool criterion_targets(std::string& detail, std::string& stats) {
  long long total = 0;
  for (const char* family :
       {"bbp2qcmax", "bbp2rcmax", "bbp2rcmax4", "bbp2ql2", "bbp2rl2", "bbp2rswc"}) {
    SweepSpec spec;
    spec.family = family;
    spec.trials = 20;
    spec.seed = kSeed;
    spec.bins = 2;
    spec.maxItems = 4;
    spec.maxSize = 8;
    SweepReport report = target_value_check(spec);
    total += report.instances;
    if (!sweep_clean(report, std::string(family) + " targets", detail)) return false;
    if (report.instances != 20) {
      detail = std::string(family) + ": expected 20 planted instances, got " +
               std::to_string(report.instances);
      return false;
    }
  }
  stats = std::to_string(total) + " planted instances";
  return true;
}

// ---- criterion 5 -----------------------------------------------------------

bool criterion_sumwc(std::string& detail, std::string& stats) {
  Rng rng(kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    ScheduleInstance inst;
    int pick = static_cast<int>(rng.below(3));
    inst.model = pick == 0   ? MachineModel::identical
                 : pick == 1 ? MachineModel::uniform
                             : MachineModel::unrelated;
    inst.machines = static_cast<int>(rng.range(1, 4));
    inst.objective = Objective::sumwc;
    if (inst.model == MachineModel::uniform)
      for (int i = 0; i < inst.machines; ++i)
        inst.speeds.push_back(make_rat(rng.range(1, 6), rng.range(1, 4)));
    int types = static_cast<int>(rng.range(1, 4));
    int jobsLeft = 10;
    for (int t = 0; t < types; ++t) {
      JobType jt;
      jt.multiplicity = rng.range(0, jobsLeft / (types - t));
      jobsLeft -= static_cast<int>(jt.multiplicity);
      jt.weight = Int(rng.range(0, 9));
      if (inst.model == MachineModel::unrelated) {
        for (int i = 0; i < inst.machines; ++i)
          jt.sizes.push_back(MachineSize::of(Int(rng.range(1, 9))));
      } else {
        jt.size = Int(rng.range(1, 9));
      }
      inst.jobs.push_back(jt);
    }
    if (!validate_instance(inst).ok()) {
      detail = "trial " + std::to_string(trial) + " generated an invalid instance";
      return false;
    }
    Assignment a = Assignment::zero(inst.machines, types);
    for (int t = 0; t < types; ++t)
      for (Int j = 0; j < inst.jobs[t].multiplicity; ++j)
        a.counts[rng.below(inst.machines)][t] += 1;
    Rat sim = eval_sumwc_sim(inst, a);
    SumWcBreakdown closed = eval_sumwc_closed(inst, a);
    if (sim != closed.total) {
      detail = "trial " + std::to_string(trial) + ": simulation " + rat_str(sim) +
               " != closed form " + rat_str(closed.total);
      return false;
    }
    if (closed.total !=
        closed.loadTerm + closed.gammaLinear + closed.gammaQuadr + closed.uniformLinear) {
      detail = "trial " + std::to_string(trial) + ": breakdown parts do not sum";
      return false;
    }
  }
  stats = "200 assignments";
  return true;
}

// ---- criterion 6 -----------------------------------------------------------

bool criterion_cuttingstock(std::string& detail, std::string& stats) {
  // (a) carry-freeness of the radix coordinates on every reduced source.
  long long carried = 0;
  for (const BalancedBinPackingInstance& bbp : tight_two_bin_sources(4, 4)) {
    ReducedInstance red = bbp_to_q_cmax(bbp);
    CuttingStockInstance cs = q_to_cutting_stock(red.instance);
    int jobTypes = red.instance.typeCount();
    Int filler = cs.itemSizes[jobTypes];
    Int separator = cs.itemSizes[jobTypes + 1];
    Int jobMass = 0;
    for (int t = 0; t < jobTypes; ++t) jobMass += cs.itemCounts[t] * cs.itemSizes[t];
    int m = red.instance.machines;
    Int sepMass = ((Int(1) << m) - 1) * separator;
    if (!(jobMass < separator)) {
      detail = "job mass reaches the separator coordinate";
      return false;
    }
    if (!(sepMass + jobMass < filler)) {
      detail = "separator plus job mass reaches the filler coordinate";
      return false;
    }
    if (filler != (Int(1) << m) * separator) {
      detail = "filler is not the expected power-of-two multiple of the separator";
      return false;
    }
    ++carried;
  }

  // (b) on small uniform decisions the minimum cost meets the budget exactly
  // when the schedule is feasible, and then every bin type is bought once.
  Rng rng(kSeed);
  int feasibleSeen = 0, infeasibleSeen = 0;
  for (int trial = 0; trial < 300 && (feasibleSeen < 10 || infeasibleSeen < 10); ++trial) {
    ScheduleInstance q;
    q.model = MachineModel::uniform;
    q.machines = 2;
    q.objective = Objective::cmax;
    for (int i = 0; i < 2; ++i) q.speeds.push_back(Rat(rng.range(1, 2)));
    int types = static_cast<int>(rng.range(1, 3));
    for (int t = 0; t < types; ++t)
      q.jobs.push_back(JobType{Int(rng.range(1, 6)), {}, Int(rng.range(1, 5)), std::nullopt});
    q.target = Rat(rng.range(2, 7));
    if (!validate_instance(q).ok()) {
      detail = "toy generator produced an invalid instance";
      return false;
    }

    bool feasible = dp_feasible_cmax(q, *q.target).has_value();
    CuttingStockInstance cs = q_to_cutting_stock(q);
    bool metBudget;
    CuttingStockSolution sol;
    try {
      sol = cuttingstock_solve(cs);
      if (sol.cost < *cs.budget) {
        detail = "trial " + std::to_string(trial) + ": cost undercuts the budget";
        return false;
      }
      metBudget = sol.cost == *cs.budget;
    } catch (const ReductionError&) {
      metBudget = false;  // some item fits in no bin, so no packing exists
    }
    if (metBudget != feasible) {
      detail = "trial " + std::to_string(trial) + ": budget equality " +
               (metBudget ? "holds" : "fails") + " but the schedule is " +
               (feasible ? "feasible" : "infeasible");
      return false;
    }
    if (metBudget) {
      for (const Int& bought : sol.purchases)
        if (bought != 1) {
          detail = "trial " + std::to_string(trial) + ": exact budget without all-ones purchases";
          return false;
        }
      ++feasibleSeen;
    } else {
      ++infeasibleSeen;
    }
  }
  if (feasibleSeen < 10 || infeasibleSeen < 10) {
    detail = "toy decisions are one-sided: " + std::to_string(feasibleSeen) + " feasible, " +
             std::to_string(infeasibleSeen) + " infeasible";
    return false;
  }
  stats = std::to_string(carried) + " radix checks, " +
          std::to_string(feasibleSeen + infeasibleSeen) + " toy decisions";
  return true;
}

// ---- criterion 7 -----------------------------------------------------------

bool criterion_rank2(std::string& detail, std::string& stats) {
  long long checked = 0;
  for (const BalancedBinPackingInstance& bbp : tight_two_bin_sources(4, 4))
    for (const char* family : {"bbp2rcmax", "bbp2rcmax4", "bbp2rl2", "bbp2rswc"}) {
      if (!rank2_product_matches(reduce_as(family, bbp), detail)) return false;
      ++checked;
    }
  Rng rng(kSeed);
  for (int trial = 0; trial < 20; ++trial) {
    PlantedInstance planted = plant_packing(2, 2, Int(rng.range(2, 12)), Int(8), rng);
    for (const char* family : {"bbp2rcmax", "bbp2rcmax4", "bbp2rl2", "bbp2rswc"}) {
      if (!rank2_product_matches(reduce_as(family, planted.bbp), detail)) return false;
      ++checked;
    }
  }
  stats = std::to_string(checked) + " factorizations";
  return true;
}

// ---- criterion 8 -----------------------------------------------------------

bool criterion_nfold(std::string& detail, std::string& stats) {
  long long witnesses = 0, models = 0;
  for (const BalancedBinPackingInstance& bbp : tight_two_bin_sources(4, 4))
    for (const char* family : {"bbp2qcmax", "bbp2rcmax", "bbp2rcmax4"}) {
      ReducedInstance red = reduce_as(family, bbp);
      NFoldModel model = build_nfold_cmax(red.instance, red.certificate.targetMakespan);
      std::string text = export_nfold(model);
      NFoldModel back = import_nfold(text);
      if (!(back == model) || export_nfold(back) != text) {
        detail = std::string(family) + ": text round trip is not the identity";
        return false;
      }
      ++models;
      auto wit = dp_feasible_cmax(red.instance, red.certificate.targetMakespan);
      if (!wit) continue;
      std::vector<Int> x;
      for (const auto& row : wit->counts)
        for (const Int& v : row) x.push_back(v);
      NFoldCheck chk = check_solution(model, x);
      if (!chk.ok) {
        detail = std::string(family) + ": witness fails the model: " + chk.violations.front();
        return false;
      }
      ++witnesses;
    }
  if (witnesses == 0) {
    detail = "no feasible witness was exercised";
    return false;
  }
  stats = std::to_string(models) + " models, " + std::to_string(witnesses) + " witnesses";
  return true;
}

struct Criterion {
  int id;
  const char* what;
  std::function<bool(std::string&, std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "dp minimizer equals the brute-force oracle across the model/objective grid",
       criterion_oracle},
      {2, "rebasing bin packing to balanced form preserves decidability", criterion_rebase},
      {3, "makespan reductions round-trip: solver verdicts match source packings",
       criterion_roundtrip},
      {4, "planted feasible sources hit every certificate target exactly", criterion_targets},
      {5, "completion-time closed form equals the schedule simulation", criterion_sumwc},
      {6, "cutting stock radix coordinates never carry; budget met iff schedulable",
       criterion_cuttingstock},
      {7, "rank-2 factors reproduce every unrelated size matrix", criterion_rank2},
      {8, "solver witnesses satisfy the exported block ILP models", criterion_nfold},
  };

  bool allPass = true;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail, stats;
    bool ok = false;
    try {
      ok = c.run(detail, stats);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.what;
    if (ok && !stats.empty()) line << " (" << stats << ", " << ms << " ms)";
    if (!ok) line << " -- " << detail;
    std::cout << line.str() << "\n";
    allPass = allPass && ok;
  }
  std::cout << (allPass ? "acceptance: all criteria passed"
                        : "acceptance: at least one criterion failed")
            << "\n";
  return allPass ? 0 : 1;
}
