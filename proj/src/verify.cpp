#include "hms/verify.hpp"

#include "hms/errors.hpp"
#include "hms/evaluate.hpp"
#include "hms/io.hpp"
#include "hms/nfold.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hms {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::uint64_t derive_seed(const SweepSpec& spec, const std::string& tag) {
  std::ostringstream s;
  s << spec.family << '|' << spec.seed << '|' << tag;
  return fnv1a64(s.str());
}

// Closes out one instance: any problem makes it a failure (each message
// becomes a self-contained counterexample), otherwise a budget hit makes it
// skipped. Aggregation can never mask a problem.
void finish(SweepReport& rep, InstanceRecord rec, const std::vector<std::string>& problems,
            bool budgetHit, const Json& payload) {
  rep.instances++;
  if (!problems.empty()) {
    rec.verdict = "fail";
    rep.failed++;
    for (const std::string& p : problems)
      rep.counterexamples.push_back(rec.digest + " [" + rec.family + "] " + p +
                                    " :: " + dump_canonical(payload));
  } else if (budgetHit) {
    rec.verdict = "skipped";
    rep.skipped++;
  } else {
    rec.verdict = "pass";
    rep.passed++;
  }
  rep.records.push_back(std::move(rec));
}

// --- source generators ------------------------------------------------------

// All nondecreasing size vectors of length `count` over [1, maxSize].
void each_multiset(int count, int maxSize,
                   const std::function<void(const std::vector<Int>&)>& f) {
  std::vector<Int> sizes(count);
  std::function<void(int, int)> walk = [&](int pos, int least) {
    if (pos == count) {
      f(sizes);
      return;
    }
    for (int v = least; v <= maxSize; ++v) {
      sizes[pos] = v;
      walk(pos + 1, v);
    }
  };
  if (count >= 0) walk(0, 1);
}

Int sum_of(const std::vector<Int>& v) {
  return std::accumulate(v.begin(), v.end(), Int(0));
}

// Every tight balanced instance within the bounds: item counts that are
// multiples of the bin count in [minItems, maxItems], sizes in [1, maxSize],
// capacity fixed by tightness. (The scheduling reductions only accept tight
// instances, so tightOnly does not apply here.)
void each_tight_bbp(const SweepSpec& spec,
                    const std::function<void(const BalancedBinPackingInstance&)>& f) {
  for (int n = spec.bins; n <= spec.maxItems; n += spec.bins) {
    if (n < spec.minItems) continue;
    each_multiset(n, spec.maxSize, [&](const std::vector<Int>& sizes) {
      Int total = sum_of(sizes);
      if (total % spec.bins != 0) return;
      BalancedBinPackingInstance bbp;
      bbp.items = sizes;
      bbp.bins = spec.bins;
      bbp.capacity = total / spec.bins;
      f(bbp);
    });
  }
}

// Plain bin packing sources: every item multiset in the bounds, capacities
// either fixed by tightness (tightOnly) or swept over [1, total].
void each_bp(const SweepSpec& spec,
             const std::function<void(const BinPackingInstance&)>& f) {
  for (int n = std::max(1, spec.minItems); n <= spec.maxItems; ++n) {
    each_multiset(n, spec.maxSize, [&](const std::vector<Int>& sizes) {
      Int total = sum_of(sizes);
      BinPackingInstance bp;
      bp.items = sizes;
      bp.bins = spec.bins;
      if (spec.tightOnly) {
        if (total % spec.bins != 0) return;
        bp.capacity = total / spec.bins;
        f(bp);
      } else {
        for (Int cap = 1; cap <= total; ++cap) {
          bp.capacity = cap;
          f(bp);
        }
      }
    });
  }
}

int random_item_count(const SweepSpec& spec, Rng& rng, bool multipleOfBins) {
  int lo = std::max(1, spec.minItems), hi = std::max(spec.maxItems, lo);
  if (!multipleOfBins) return static_cast<int>(rng.range(lo, hi));
  int gLo = (std::max(lo, spec.bins) + spec.bins - 1) / spec.bins;
  int gHi = std::max(hi / spec.bins, gLo);
  return static_cast<int>(rng.range(gLo, gHi)) * spec.bins;
}

BalancedBinPackingInstance random_tight_bbp(const SweepSpec& spec, Rng& rng) {
  BalancedBinPackingInstance bbp;
  bbp.bins = spec.bins;
  int n = random_item_count(spec, rng, true);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    bbp.items.clear();
    for (int j = 0; j < n; ++j) bbp.items.push_back(Int(rng.range(1, spec.maxSize)));
    Int total = sum_of(bbp.items);
    if (total % spec.bins == 0) {
      bbp.capacity = total / spec.bins;
      return bbp;
    }
  }
  throw std::logic_error("tight instance sampling failed to converge");
}

BinPackingInstance random_bp(const SweepSpec& spec, Rng& rng) {
  BinPackingInstance bp;
  bp.bins = spec.bins;
  int n = random_item_count(spec, rng, spec.tightOnly);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    bp.items.clear();
    for (int j = 0; j < n; ++j) bp.items.push_back(Int(rng.range(1, spec.maxSize)));
    Int total = sum_of(bp.items);
    if (spec.tightOnly) {
      if (total % spec.bins != 0) continue;
      bp.capacity = total / spec.bins;
    } else {
      bp.capacity = 1 + Int(rng.below(total.convert_to<std::uint64_t>()));
    }
    return bp;
  }
  throw std::logic_error("tight instance sampling failed to converge");
}

// --- shared checks -----------------------------------------------------------

ReducedInstance reduce_family(const std::string& family, const BalancedBinPackingInstance& bbp) {
  if (family == "bbp2qcmax") return bbp_to_q_cmax(bbp);
  if (family == "bbp2rcmax") return bbp_to_r_cmax(bbp);
  if (family == "bbp2rcmax4") return bbp_to_r_cmax_4types(bbp);
  if (family == "bbp2ql2") return bbp_to_q_l2(bbp);
  if (family == "bbp2rl2") return bbp_to_r_l2(bbp);
  if (family == "bbp2rswc") return bbp_to_r_sumwc(bbp);
  throw ReductionError("unknown reduction family: " + family);
}

void check_rank2(const ScheduleInstance& inst, const ReductionCertificate& cert,
                 std::vector<std::string>& problems) {
  if (!cert.rank2C || !cert.rank2D) {
    problems.push_back("rank-2 factors missing");
    return;
  }
  const auto& C = *cert.rank2C;
  const auto& D = *cert.rank2D;
  int k = inst.typeCount(), m = inst.machines;
  if (static_cast<int>(C.size()) != k || D.size() != 2 ||
      static_cast<int>(D[0].size()) != m || static_cast<int>(D[1].size()) != m) {
    problems.push_back("rank-2 factor dimensions wrong");
    return;
  }
  for (int t = 0; t < k; ++t)
    for (int i = 0; i < m; ++i) {
      MachineSize s = size_on(inst, i, t);
      if (s.infinite || C[t].size() != 2 ||
          C[t][0] * D[0][i] + C[t][1] * D[1][i] != s.value) {
        problems.push_back("rank-2 product misses the size of type " + std::to_string(t) +
                           " on machine " + std::to_string(i));
        return;
      }
    }
}

std::vector<Int> flatten_assignment(const Assignment& a) {
  std::vector<Int> x;
  for (const auto& row : a.counts) x.insert(x.end(), row.begin(), row.end());
  return x;
}

// The DP witness must also satisfy the block-structured ILP form of the same
// decision, and that model must survive an export/import round trip.
void check_nfold(const ScheduleInstance& inst, const Rat& T, const Assignment& a,
                 std::vector<std::string>& problems) {
  NFoldModel model = build_nfold_cmax(inst, T);
  NFoldCheck chk = check_solution(model, flatten_assignment(a));
  if (!chk.ok) {
    std::string detail = chk.violations.empty() ? "no detail" : chk.violations.front();
    problems.push_back("block-ILP check rejects the DP assignment: " + detail);
  }
  std::string text = export_nfold(model);
  NFoldModel back = import_nfold(text);
  if (!(back == model) || export_nfold(back) != text)
    problems.push_back("block-ILP export/import round trip failed");
}

std::optional<std::string> cs_solution_violation(const CuttingStockInstance& cs,
                                                 const CuttingStockSolution& sol) {
  int k = static_cast<int>(cs.itemSizes.size());
  int b = static_cast<int>(cs.binSizes.size());
  if (static_cast<int>(sol.purchases.size()) != b) return "purchase vector length mismatch";
  std::vector<Int> bought(b, Int(0)), covered(k, Int(0));
  for (const BinUse& use : sol.bins) {
    if (use.binType < 0 || use.binType >= b) return "bin type out of range";
    if (static_cast<int>(use.itemCounts.size()) != k) return "fill length mismatch";
    bought[use.binType] += 1;
    Int load = 0;
    for (int t = 0; t < k; ++t) {
      if (use.itemCounts[t] < 0) return "negative fill count";
      covered[t] += use.itemCounts[t];
      load += cs.itemSizes[t] * use.itemCounts[t];
    }
    if (load > cs.binSizes[use.binType]) return "bin overfilled";
  }
  Int cost = 0;
  for (int i = 0; i < b; ++i) {
    if (bought[i] != sol.purchases[i]) return "purchases disagree with the bin list";
    cost += sol.purchases[i] * cs.binCosts[i];
  }
  if (cost != sol.cost) return "cost disagrees with the purchases";
  for (int t = 0; t < k; ++t)
    if (covered[t] != cs.itemCounts[t]) return "item coverage mismatch";
  return std::nullopt;
}

// --- roundtrip ----------------------------------------------------------------

void roundtrip_one_bp(const SweepSpec& spec, const BinPackingInstance& bp, SweepReport& rep) {
  auto t0 = Clock::now();
  InstanceRecord rec;
  rec.family = spec.family;
  Json payload = to_json(bp);
  rec.digest = digest(payload);
  std::vector<std::string> problems;

  auto src = brute_force_packing(bp.items, bp.bins, bp.capacity, false);
  rec.sourceFeasible = yesno(src.has_value());

  BalancedBinPackingInstance bbp = bp_to_bbp(bp);
  if (auto err = check_balanced(bbp)) problems.push_back("rebased instance invalid: " + *err);
  if (bbp.tight() != bp.tight()) problems.push_back("rebasing changed tightness");
  auto dst = brute_force_packing(bbp.items, bbp.bins, bbp.capacity, true);
  rec.reducedFeasible = yesno(dst.has_value());
  if (src.has_value() != dst.has_value()) problems.push_back("feasibility mismatch after rebasing");

  if (src) {
    // Forward witness: original items keep their bins; the unit fillers top
    // every bin up to the common item count.
    int n = static_cast<int>(bp.items.size());
    Packing full(bbp.items.size(), 0);
    std::vector<int> count(bp.bins, 0);
    for (int j = 0; j < n; ++j) {
      full[j] = (*src)[j];
      count[(*src)[j]]++;
    }
    int next = n;
    for (int bin = 0; bin < bp.bins; ++bin)
      while (count[bin] < n) {
        full[next++] = bin;
        count[bin]++;
      }
    if (!packing_valid(bbp.items, bbp.bins, bbp.capacity, true, full))
      problems.push_back("forward witness packing is invalid");
  }

  rec.wallMs = ms_since(t0);
  finish(rep, std::move(rec), problems, false, payload);
}

void roundtrip_one_bbp(const SweepSpec& spec, const BalancedBinPackingInstance& bbp,
                       SweepReport& rep) {
  auto t0 = Clock::now();
  InstanceRecord rec;
  rec.family = spec.family;
  Json payload = to_json(bbp);
  rec.digest = digest(payload);
  std::vector<std::string> problems;
  bool budgetHit = false;

  auto packing = brute_force_packing(bbp.items, bbp.bins, bbp.capacity, true);
  rec.sourceFeasible = yesno(packing.has_value());
  SolverLimits limits{spec.maxStates};

  try {
    if (spec.family == "q2cs") {
      CuttingStockInstance cs = q_to_cutting_stock(bbp_to_q_cmax(bbp).instance);
      CuttingStockSolution sol = cuttingstock_solve(cs, limits);
      if (auto err = cs_solution_violation(cs, sol))
        problems.push_back("cutting stock solution invalid: " + *err);
      bool met = sol.cost == *cs.budget;
      rec.reducedFeasible = yesno(met);
      if (sol.cost < *cs.budget) problems.push_back("cutting stock cost undercuts the budget");
      if (met != packing.has_value()) problems.push_back("budget equivalence mismatch");
      if (met && std::any_of(sol.purchases.begin(), sol.purchases.end(),
                             [](const Int& y) { return y != 1; }))
        problems.push_back("budget met without buying every bin type exactly once");
    } else {
      ReducedInstance red = reduce_family(spec.family, bbp);
      const Rat& T = red.certificate.targetMakespan;
      auto a = dp_feasible_cmax(red.instance, T, limits);
      rec.reducedFeasible = yesno(a.has_value());
      if (a.has_value() != packing.has_value()) problems.push_back("feasibility mismatch");
      if (a) {
        if (eval_makespan(red.instance, *a) > T)
          problems.push_back("DP assignment exceeds the target");
        PackingRecovery got = packing_from_perfect_schedule(red.certificate, *a);
        if (!got.packing)
          problems.push_back("DP assignment is not a perfect schedule: " + got.violation);
        check_nfold(red.instance, T, *a, problems);
      }
      if (packing) {
        Assignment pa = perfect_schedule(red.certificate, *packing);
        if (!is_complete(red.instance, pa))
          problems.push_back("perfect schedule is not complete");
        else if (eval_makespan(red.instance, pa) != T)
          problems.push_back("perfect schedule misses the target makespan");
      }
      if (red.certificate.rank2C) check_rank2(red.instance, red.certificate, problems);
    }
  } catch (const BudgetExceeded&) {
    budgetHit = true;
    rec.reducedFeasible = "skipped";
  }

  rec.wallMs = ms_since(t0);
  finish(rep, std::move(rec), problems, budgetHit, payload);
}

}  // namespace

SweepReport roundtrip_check(const SweepSpec& spec) {
  const auto& fams = reduction_families();
  if (std::find(fams.begin(), fams.end(), spec.family) == fams.end() ||
      spec.family == "bbp2ql2" || spec.family == "bbp2rl2" || spec.family == "bbp2rswc")
    throw ReductionError("roundtrip_check does not handle family '" + spec.family + "'");
  if (spec.family == "bbp2rcmax4" && spec.bins != 2)
    throw ReductionError("the four-type family needs exactly two bins");

  SweepReport rep;
  rep.spec = spec;
  if (spec.family == "bp2bbp") {
    if (spec.exhaustive)
      each_bp(spec, [&](const BinPackingInstance& bp) { roundtrip_one_bp(spec, bp, rep); });
    for (int i = 0; i < spec.trials; ++i) {
      Rng rng(derive_seed(spec, "trial|" + std::to_string(i)));
      roundtrip_one_bp(spec, random_bp(spec, rng), rep);
    }
  } else {
    if (spec.exhaustive)
      each_tight_bbp(
          spec, [&](const BalancedBinPackingInstance& bbp) { roundtrip_one_bbp(spec, bbp, rep); });
    for (int i = 0; i < spec.trials; ++i) {
      Rng rng(derive_seed(spec, "trial|" + std::to_string(i)));
      roundtrip_one_bbp(spec, random_tight_bbp(spec, rng), rep);
    }
  }
  return rep;
}

namespace {

// --- target values -------------------------------------------------------------

void target_one(const SweepSpec& spec, const BalancedBinPackingInstance& bbp,
                const Packing& packing, SweepReport& rep) {
  auto t0 = Clock::now();
  InstanceRecord rec;
  rec.family = spec.family;
  Json payload = to_json(bbp);
  rec.digest = digest(payload);
  rec.sourceFeasible = "yes";
  rec.reducedFeasible = "-";
  std::vector<std::string> problems;

  ReducedInstance red = reduce_family(spec.family, bbp);
  const ScheduleInstance& inst = red.instance;
  const ReductionCertificate& cert = red.certificate;
  int m = inst.machines;

  ValidationReport vr = validate_instance(inst);
  if (!vr.ok()) problems.push_back("reduced instance invalid: " + vr.joined());

  Assignment a = perfect_schedule(cert, packing);
  if (!is_complete(inst, a)) problems.push_back("perfect schedule is not complete");

  PackingRecovery got = packing_from_perfect_schedule(cert, a);
  if (!got.packing)
    problems.push_back("perfect schedule fails recovery: " + got.violation);
  else if (*got.packing != packing)
    problems.push_back("recovered packing differs from the planted one");

  // Precomputed constants, re-derived from the certificate's raw data so the
  // checks do not trust the reduction's own arithmetic.
  Int A = cert.A;
  Int T = Int(3) * cert.bins * A * A * A;
  Int TR = Int(7) * cert.bins * A * A * A;
  LoadVector loads = compute_loads(inst, a);

  auto expect_loads = [&](const Int& value, bool plusItem) {
    for (int i = 0; i < m; ++i) {
      Int want = plusItem ? Int(value + cert.items[i]) : value;
      if (loads.unscaled[i] != want) {
        problems.push_back("machine " + std::to_string(i) + " carries load " +
                           int_str(loads.unscaled[i]) + ", expected " + int_str(want));
        return;
      }
    }
  };

  if (spec.family == "bbp2qcmax") {
    expect_loads(T, true);
    for (int i = 0; i < m; ++i)
      if (loads.scaled[i] != Rat(T)) {
        problems.push_back("scaled load deviates from the target on machine " + std::to_string(i));
        break;
      }
    if (cert.targetMakespan != Rat(T) || cert.targetValue != Rat(T))
      problems.push_back("certificate target is not the derived threshold");
    if (eval_makespan(inst, a) != cert.targetMakespan)
      problems.push_back("perfect makespan misses the certificate target");
  } else if (spec.family == "bbp2rcmax" || spec.family == "bbp2rl2" ||
             spec.family == "bbp2rswc") {
    expect_loads(TR, false);
    if (cert.targetMakespan != Rat(TR))
      problems.push_back("certificate threshold is not the derived value");
    if (eval_makespan(inst, a) != Rat(TR))
      problems.push_back("perfect makespan misses the derived threshold");
  } else if (spec.family == "bbp2rcmax4") {
    Int A4 = A * A * A * A;
    expect_loads(A4, false);
    if (cert.targetMakespan != Rat(A4) || eval_makespan(inst, a) != Rat(A4))
      problems.push_back("perfect makespan misses the derived threshold");
  } else if (spec.family == "bbp2ql2") {
    expect_loads(T, true);
    // Speeds are the least integers whose square reaches (T+aMax)^2 (T+a_i);
    // the strict upper bound keeps distinct items on distinct speeds.
    Int lead = (T + cert.aMax) * (T + cert.aMax);
    Rat target = 0;
    for (int i = 0; i < m; ++i) {
      if (!rat_is_integer(inst.speeds[i])) {
        problems.push_back("speed is not an integer on machine " + std::to_string(i));
        break;
      }
      Int s = numerator(inst.speeds[i]);
      Int low = lead * (T + cert.items[i]);
      if (s * s < low || s * s >= low + lead)
        problems.push_back("speed root bound violated on machine " + std::to_string(i));
      target += make_rat(T + cert.items[i], s) * make_rat(T + cert.items[i], s);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        bool itemLess = cert.items[i] < cert.items[j];
        bool speedLess = inst.speeds[i] < inst.speeds[j];
        if (itemLess != speedLess) {
          problems.push_back("speeds do not increase strictly with the items");
          i = j = m;
        }
      }
    if (cert.targetValue != target)
      problems.push_back("certificate target differs from the recomputed sum");
    if (eval_l2sq(inst, a) != cert.targetValue)
      problems.push_back("perfect squared-load sum misses the target");
    if (eval_makespan(inst, a) != cert.targetMakespan)
      problems.push_back("perfect makespan misses the certificate threshold");
  }

  if (spec.family == "bbp2rl2") {
    if (cert.targetValue != Rat(m) * Rat(TR) * Rat(TR))
      problems.push_back("certificate target is not m times the squared threshold");
    if (eval_l2sq(inst, a) != cert.targetValue)
      problems.push_back("perfect squared-load sum misses the target");
  }

  if (spec.family == "bbp2rswc") {
    int types = inst.typeCount();
    Rat half(1, 2);
    // Independent recomputation of every breakdown part from raw data.
    Rat wantUniform = 0;
    for (int t = 0; t + 1 < types; ++t) {
      const JobType& jt = inst.jobs[t];
      if (!jt.weight || *jt.weight != jt.sizes.front().value)
        problems.push_back("alpha/beta weight does not equal its size");
      wantUniform += half * Rat(jt.multiplicity) * Rat(jt.sizes.front().value) *
                     Rat(jt.sizes.front().value);
    }
    const JobType& gamma = inst.jobs[types - 1];
    Int gammaBase = Int(4) * cert.bins * A * A * A;
    Rat wantGammaLin = 0, wantGammaQuad = 0;
    for (int i = 0; i < m; ++i) {
      Int pg = gamma.sizes[i].value;
      if (!gamma.weight || *gamma.weight != gammaBase)
        problems.push_back("blocker weight is not the common base size");
      if (pg != gammaBase - cert.items[i])
        problems.push_back("blocker size does not encode the item");
      wantGammaLin += half * Rat(pg) * Rat(gammaBase);
      wantGammaQuad += half * Rat(pg) * Rat(cert.items[i]);
      // The blocker must sort strictly first under the Smith rule everywhere.
      for (int t = 0; t + 1 < types; ++t) {
        const JobType& jt = inst.jobs[t];
        if (Rat(gammaBase) * Rat(jt.sizes.front().value) <= Rat(*jt.weight) * Rat(pg)) {
          problems.push_back("blocker does not sort first on machine " + std::to_string(i));
          break;
        }
      }
    }
    // When every source item is equal the blocker row is constant across
    // machines, so the breakdown classifies it as machine-independent and
    // its linear mass moves from gammaLinear into uniformLinear.
    bool itemsAllEqual = true;
    for (int i = 1; i < m; ++i)
      if (cert.items[i] != cert.items[0]) itemsAllEqual = false;
    if (itemsAllEqual) {
      wantUniform += wantGammaLin;
      wantGammaLin = 0;
    }
    Rat sim = eval_sumwc_sim(inst, a);
    SumWcBreakdown closed = eval_sumwc_closed(inst, a);
    if (sim != closed.total)
      problems.push_back("simulated and closed-form totals disagree");
    if (closed.total != cert.targetValue)
      problems.push_back("perfect completion-time total misses the target");
    if (closed.loadTerm != half * Rat(m) * Rat(TR) * Rat(TR))
      problems.push_back("squared-load part deviates from half m T^2");
    if (closed.uniformLinear != wantUniform)
      problems.push_back("machine-independent linear part deviates");
    if (closed.gammaLinear != wantGammaLin)
      problems.push_back("blocker linear part deviates");
    if (closed.gammaQuadr != wantGammaQuad)
      problems.push_back("blocker quadratic part deviates");
    if (closed.total !=
        closed.loadTerm + closed.gammaLinear + closed.gammaQuadr + closed.uniformLinear)
      problems.push_back("breakdown parts do not sum to the total");
  }

  if (cert.rank2C) check_rank2(inst, cert, problems);

  rec.wallMs = ms_since(t0);
  finish(rep, std::move(rec), problems, false, payload);
}

}  // namespace

SweepReport target_value_check(const SweepSpec& spec) {
  static const std::vector<std::string> ok = {"bbp2qcmax", "bbp2rcmax", "bbp2rcmax4",
                                              "bbp2ql2",   "bbp2rl2",   "bbp2rswc"};
  if (std::find(ok.begin(), ok.end(), spec.family) == ok.end())
    throw ReductionError("target_value_check does not handle family '" + spec.family + "'");
  if (spec.family == "bbp2rcmax4" && spec.bins != 2)
    throw ReductionError("the four-type family needs exactly two bins");

  SweepReport rep;
  rep.spec = spec;
  if (spec.exhaustive) {
    // Only feasible sources carry a packing; infeasible ones belong to the
    // roundtrip sweep and are not records here.
    each_tight_bbp(spec, [&](const BalancedBinPackingInstance& bbp) {
      auto packing = brute_force_packing(bbp.items, bbp.bins, bbp.capacity, true);
      if (packing) target_one(spec, bbp, *packing, rep);
    });
  }
  for (int i = 0; i < spec.trials; ++i) {
    Rng rng(derive_seed(spec, "plant|" + std::to_string(i)));
    int maxPerBin = std::max(1, spec.maxItems / spec.bins);
    int perBin = static_cast<int>(rng.range(1, maxPerBin));
    Int capacity(rng.range(perBin, perBin * spec.maxSize));
    PlantedInstance planted =
        plant_packing(spec.bins, perBin, capacity, Int(spec.maxSize), rng);
    target_one(spec, planted.bbp, planted.packing, rep);
  }
  return rep;
}

namespace {

// --- solver oracle ---------------------------------------------------------------

const std::vector<Rat>& speed_choices() {
  static const std::vector<Rat> s = {Rat(1), Rat(3) / Rat(2), Rat(2)};
  return s;
}

// Every multiplicity vector with k positive entries summing to at most
// maxJobs, lexicographically.
void each_mult_vector(int k, int maxJobs,
                      const std::function<void(const std::vector<Int>&)>& f) {
  std::vector<Int> n(k);
  std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == k) {
      f(n);
      return;
    }
    for (int v = 1; v + (k - pos - 1) <= left; ++v) {
      n[pos] = v;
      walk(pos + 1, left - v);
    }
  };
  if (k <= maxJobs) walk(0, maxJobs);
}

ScheduleInstance sample_instance(MachineModel model, Objective obj, int m,
                                 const std::vector<Int>& mults, int maxSize, Rng& rng) {
  ScheduleInstance inst;
  inst.model = model;
  inst.machines = m;
  inst.objective = obj;
  if (model == MachineModel::uniform)
    for (int i = 0; i < m; ++i)
      inst.speeds.push_back(speed_choices()[rng.below(speed_choices().size())]);
  for (const Int& n : mults) {
    JobType jt;
    jt.multiplicity = n;
    if (model == MachineModel::unrelated) {
      for (;;) {
        jt.sizes.clear();
        for (int i = 0; i < m; ++i) {
          if (rng.below(6) == 0)
            jt.sizes.push_back(MachineSize::inf());
          else
            jt.sizes.push_back(MachineSize::of(Int(rng.range(1, maxSize))));
        }
        if (std::any_of(jt.sizes.begin(), jt.sizes.end(),
                        [](const MachineSize& s) { return !s.infinite; }))
          break;
      }
    } else {
      jt.size = Int(rng.range(1, maxSize));
    }
    if (obj == Objective::sumwc) jt.weight = Int(rng.range(0, 5));
    inst.jobs.push_back(std::move(jt));
  }
  return inst;
}

void oracle_one(const SweepSpec& spec, const ScheduleInstance& inst, SweepReport& rep) {
  auto t0 = Clock::now();
  InstanceRecord rec;
  rec.family = std::string(to_string(inst.model)) + "-" + to_string(inst.objective);
  Json payload = to_json(inst);
  rec.digest = digest(payload);
  rec.sourceFeasible = "-";
  rec.reducedFeasible = "-";
  std::vector<std::string> problems;
  bool budgetHit = false;
  SolverLimits limits{spec.maxStates};

  try {
    SolveResult dp = dp_minimize(inst, limits);
    SolveResult bf = brute_force_solve(inst, limits);
    if (dp.value != bf.value)
      problems.push_back("DP optimum " + rat_str(dp.value) + " differs from brute force " +
                         rat_str(bf.value));
    if (!is_complete(inst, dp.assignment)) problems.push_back("DP assignment incomplete");
    if (!is_complete(inst, bf.assignment)) problems.push_back("brute-force assignment incomplete");
    if (inst.objective == Objective::cmax) {
      if (!dp_feasible_cmax(inst, dp.value + 1, limits))
        problems.push_back("decision DP rejects a threshold above the optimum");
      // 1/7 lies strictly inside the smallest gap between distinct scaled
      // loads here: all speeds are 1, 3/2 or 2, so loads are multiples of 1/6.
      if (dp.value > 0 && dp_feasible_cmax(inst, dp.value - Rat(1, 7), limits))
        problems.push_back("decision DP accepts a threshold below the optimum");
    }
  } catch (const BudgetExceeded&) {
    budgetHit = true;
  }

  rec.wallMs = ms_since(t0);
  finish(rep, std::move(rec), problems, budgetHit, payload);
}

}  // namespace

SweepReport oracle_equivalence_sweep(const SweepSpec& spec) {
  SweepReport rep;
  rep.spec = spec;
  const MachineModel models[] = {MachineModel::identical, MachineModel::uniform,
                                 MachineModel::unrelated};
  const Objective objectives[] = {Objective::cmax, Objective::l2sq, Objective::sumwc};
  for (MachineModel model : models)
    for (Objective obj : objectives)
      for (int m = 1; m <= spec.maxMachines; ++m)
        for (int k = 1; k <= spec.maxTypes; ++k)
          each_mult_vector(k, spec.maxJobs, [&](const std::vector<Int>& mults) {
            std::ostringstream tag;
            tag << to_string(model) << '|' << to_string(obj) << '|' << m << '|' << k;
            for (const Int& n : mults) tag << ',' << n;
            bool cheapEval = obj == Objective::cmax || obj == Objective::l2sq;
            if (model == MachineModel::identical && cheapEval) {
              // Sizes are exhausted where evaluation is cheapest; elsewhere
              // the fillings are seeded samples over the same ranges.
              each_multiset(k, spec.maxSize, [&](const std::vector<Int>& sizes) {
                ScheduleInstance inst;
                inst.model = model;
                inst.machines = m;
                inst.objective = obj;
                for (int t = 0; t < k; ++t) {
                  JobType jt;
                  jt.size = sizes[t];
                  jt.multiplicity = mults[t];
                  inst.jobs.push_back(std::move(jt));
                }
                oracle_one(spec, inst, rep);
              });
            } else {
              for (int s = 0; s < spec.samplesPerShape; ++s) {
                Rng rng(derive_seed(spec, tag.str() + "|" + std::to_string(s)));
                oracle_one(spec, sample_instance(model, obj, m, mults, spec.maxSize, rng), rep);
              }
            }
          });
  return rep;
}

PlantedInstance plant_packing(int bins, int itemsPerBin, const Int& capacity,
                              const Int& maxSize, Rng& rng) {
  if (bins < 1 || itemsPerBin < 1 || capacity < itemsPerBin ||
      capacity > maxSize * itemsPerBin)
    throw std::invalid_argument("plant_packing bounds are unsatisfiable");
  long long cap = capacity.convert_to<long long>();
  long long top = maxSize.convert_to<long long>();

  PlantedInstance out;
  out.bbp.bins = bins;
  out.bbp.capacity = capacity;
  for (int b = 0; b < bins; ++b) {
    std::vector<long long> parts;
    bool done = false;
    for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
      parts.assign(itemsPerBin, 1);
      long long partial = 0;
      for (int j = 0; j + 1 < itemsPerBin; ++j) {
        parts[j] = rng.range(1, top);
        partial += parts[j];
      }
      long long last = cap - partial;
      if (last >= 1 && last <= top) {
        parts[itemsPerBin - 1] = last;
        done = true;
      }
    }
    if (!done) {
      // Deterministic fallback: start from all ones and spread the surplus.
      parts.assign(itemsPerBin, 1);
      long long rest = cap - itemsPerBin;
      for (int j = 0; rest > 0; j = (j + 1) % itemsPerBin) {
        long long add = std::min(rest, top - parts[j]);
        parts[j] += add;
        rest -= add;
      }
    }
    for (long long p : parts) {
      out.bbp.items.push_back(Int(p));
      out.packing.push_back(b);
    }
  }
  for (std::size_t i = out.bbp.items.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(out.bbp.items[i - 1], out.bbp.items[j]);
    std::swap(out.packing[i - 1], out.packing[j]);
  }
  return out;
}

std::string report_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "digest,family,source_feasible,reduced_feasible,verdict,wall_ms\n";
  for (const InstanceRecord& rec : report.records)
    out << rec.digest << ',' << rec.family << ',' << rec.sourceFeasible << ','
        << rec.reducedFeasible << ',' << rec.verdict << ',' << rec.wallMs << '\n';
  return out.str();
}

std::string report_json_summary(const SweepReport& report) {
  Json j;
  j["family"] = report.spec.family;
  j["exhaustive"] = report.spec.exhaustive;
  j["trials"] = report.spec.trials;
  j["seed"] = report.spec.seed;
  j["instances"] = report.instances;
  j["passed"] = report.passed;
  j["failed"] = report.failed;
  j["skipped"] = report.skipped;
  j["pass"] = report.pass();
  Json digs = Json::array();
  for (const InstanceRecord& rec : report.records) digs.push_back(rec.digest);
  j["digests"] = digs;
  j["counterexamples"] = report.counterexamples;
  return dump_pretty(j);
}

}  // namespace hms
