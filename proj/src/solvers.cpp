#include "hms/solvers.hpp"

#include "hms/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace hms {

namespace {

std::vector<Int> multiplicities(const ScheduleInstance& inst) {
  std::vector<Int> n;
  n.reserve(inst.jobs.size());
  for (const JobType& jt : inst.jobs) n.push_back(jt.multiplicity);
  return n;
}

// Unscaled integer load cap of machine i for a scaled threshold `cap`:
// loads are integral, so load <= cap * s_i iff load <= floor(cap * s_i).
Int unscaled_cap(const ScheduleInstance& inst, int machine, const Rat& cap) {
  return rat_floor(cap * speed_of(inst, machine));
}

// Sizes of machine i with a runnability flag (infinite entries excluded).
struct MachineSizes {
  std::vector<Int> size;
  std::vector<char> finite;
};

MachineSizes sizes_on(const ScheduleInstance& inst, int machine) {
  MachineSizes ms;
  int k = inst.typeCount();
  ms.size.assign(k, Int(0));
  ms.finite.assign(k, 0);
  for (int t = 0; t < k; ++t) {
    MachineSize s = size_on(inst, machine, t);
    if (!s.infinite) {
      ms.size[t] = s.value;
      ms.finite[t] = 1;
    }
  }
  return ms;
}

// Per type, over the machines strictly after index i: can the type run
// there, and the minimum size if so. minSize[m-1] describes "no machines".
struct FutureData {
  std::vector<std::vector<char>> runnable;  // [machine][type]
  std::vector<std::vector<Int>> minSize;
};

FutureData future_data(const ScheduleInstance& inst) {
  int k = inst.typeCount(), m = inst.machines;
  FutureData fd;
  fd.runnable.assign(m, std::vector<char>(k, 0));
  fd.minSize.assign(m, std::vector<Int>(k, Int(0)));
  std::vector<char> run(k, 0);
  std::vector<Int> mn(k, Int(0));
  for (int i = m - 1; i >= 0; --i) {
    fd.runnable[i] = run;
    fd.minSize[i] = mn;
    MachineSizes ms = sizes_on(inst, i);
    for (int t = 0; t < k; ++t) {
      if (!ms.finite[t]) continue;
      if (!run[t] || ms.size[t] < mn[t]) mn[t] = ms.size[t];
      run[t] = 1;
    }
  }
  return fd;
}

// Enumerates the configurations machine `machine` may take from the
// remaining job vector r0. capInt bounds the unscaled load when present.
// Types the machine cannot run contribute 0; types no later machine can run
// are forced to be consumed entirely here. When futureCap is given,
// branches whose leftover jobs cannot fit into that many units of later
// capacity (each job costed at its minimum later size) are pruned.
void machine_configs(const ScheduleInstance& inst, int machine, const std::vector<Int>& r0,
                     const std::optional<Int>& capInt, const std::vector<char>& futureRunnable,
                     const std::vector<Int>& futureMinSize, const std::optional<Int>& futureCap,
                     const std::function<void(const std::vector<Int>&)>& emit) {
  int k = inst.typeCount();
  MachineSizes ms = sizes_on(inst, machine);
  std::vector<Int> config(k, Int(0));
  Int loadBase = 0;
  std::vector<int> free;
  for (int t = 0; t < k; ++t) {
    if (r0[t] == 0) continue;
    if (!ms.finite[t]) {
      if (!futureRunnable[t]) return;  // stranded jobs, no configuration
      continue;                        // runs later, c_t = 0
    }
    if (!futureRunnable[t]) {
      config[t] = r0[t];  // last chance for this type
      loadBase += ms.size[t] * r0[t];
    } else {
      free.push_back(t);
    }
  }
  if (capInt && loadBase > *capInt) return;

  std::sort(free.begin(), free.end(), [&](int a, int b) {
    if (ms.size[a] != ms.size[b]) return ms.size[a] > ms.size[b];
    return a < b;
  });

  // need: minimum later mass of jobs not taken here (runnable-later types);
  // maxRed[d]: the most the types from position d on can still reduce it.
  Int needBase = 0;
  if (futureCap) {
    for (int t = 0; t < k; ++t)
      if (r0[t] != 0 && futureRunnable[t]) needBase += futureMinSize[t] * r0[t];
  }
  std::vector<Int> maxRed(free.size() + 1, Int(0));
  if (futureCap) {
    for (int d = static_cast<int>(free.size()) - 1; d >= 0; --d) {
      int t = free[d];
      Int take = r0[t];
      if (capInt) {
        Int capFree = *capInt - loadBase;
        Int byCap = capFree / ms.size[t];
        if (byCap < take) take = byCap;
      }
      maxRed[d] = maxRed[d + 1] + futureMinSize[t] * take;
    }
  }

  std::function<void(std::size_t, Int, Int)> walk = [&](std::size_t d, Int load, Int need) {
    if (futureCap && need - maxRed[d] > *futureCap) return;
    if (d == free.size()) {
      emit(config);
      return;
    }
    int t = free[d];
    Int maxc = r0[t];
    if (capInt) {
      Int byCap = (*capInt - load) / ms.size[t];
      if (byCap < maxc) maxc = byCap;
    }
    for (Int c = 0; c <= maxc; ++c) {
      config[t] = c;
      walk(d + 1, load + ms.size[t] * c, futureCap ? need - futureMinSize[t] * c : need);
    }
    config[t] = 0;
  };
  walk(0, loadBase, needBase);
}

using Key = std::vector<Int>;

Rat scaled_load(const ScheduleInstance& inst, int machine, const std::vector<Int>& counts) {
  MachineSizes ms = sizes_on(inst, machine);
  Int load = 0;
  for (int t = 0; t < inst.typeCount(); ++t) {
    if (counts[t] == 0) continue;
    if (!ms.finite[t]) throw EvalError("configuration uses an unusable machine");
    load += ms.size[t] * counts[t];
  }
  return Rat(load) / speed_of(inst, machine);
}

Rat eval_objective_sim(const ScheduleInstance& inst, const Assignment& a) {
  switch (inst.objective) {
    case Objective::cmax: return eval_makespan(inst, a);
    case Objective::l2sq: return eval_l2sq(inst, a);
    case Objective::sumwc: return eval_sumwc_sim(inst, a);
  }
  throw EvalError("unknown objective");
}

}  // namespace

std::vector<std::vector<Int>> enumerate_configurations(const ScheduleInstance& inst,
                                                       int machine, const Rat& cap,
                                                       const std::vector<Int>& bound) {
  if (machine < 0 || machine >= inst.machines) throw EvalError("machine index out of range");
  if (bound.size() != inst.jobs.size()) throw EvalError("bound length mismatch");
  for (const Int& b : bound)
    if (b < 0) throw EvalError("negative bound");
  MachineSizes ms = sizes_on(inst, machine);
  Int capInt = unscaled_cap(inst, machine, cap);
  int k = inst.typeCount();
  std::vector<std::vector<Int>> out;
  std::vector<Int> config(k, Int(0));
  // load <= capInt is maintained along the walk, so capInt - load >= 0.
  std::function<void(int, Int)> walk = [&](int t, Int load) {
    if (t == k) {
      out.push_back(config);
      return;
    }
    Int maxc = ms.finite[t] ? std::min(bound[t], Int((capInt - load) / ms.size[t])) : Int(0);
    for (Int c = 0; c <= maxc; ++c) {
      config[t] = c;
      walk(t + 1, load + ms.size[t] * c);
    }
    config[t] = 0;
  };
  if (capInt >= 0) walk(0, Int(0));
  return out;
}

std::optional<Assignment> dp_feasible_cmax(const ScheduleInstance& inst, const Rat& T,
                                           const SolverLimits& limits) {
  int k = inst.typeCount(), m = inst.machines;
  if (T < 0) return std::nullopt;
  std::vector<Int> n = multiplicities(inst);

  std::vector<Int> capInt(m);
  for (int i = 0; i < m; ++i) capInt[i] = unscaled_cap(inst, i, T);
  std::vector<Int> futureCap(m, Int(0));  // capacity strictly after machine i
  for (int i = m - 2; i >= 0; --i) futureCap[i] = futureCap[i + 1] + capInt[i + 1];
  FutureData fd = future_data(inst);

  struct Entry {
    std::vector<Int> config;  // configuration of the previous machine
  };
  std::vector<std::map<Key, Entry>> layer(m + 1);
  layer[0].emplace(Key(k, Int(0)), Entry{});
  // Counts expanded transitions, which dominate materialized states.
  std::uint64_t work = 1;

  for (int i = 0; i < m; ++i) {
    for (const auto& [consumed, entry] : layer[i]) {
      (void)entry;
      std::vector<Int> r0(k);
      for (int t = 0; t < k; ++t) r0[t] = n[t] - consumed[t];
      machine_configs(inst, i, r0, capInt[i], fd.runnable[i], fd.minSize[i], futureCap[i],
                      [&](const std::vector<Int>& c) {
                        if (++work > limits.maxStates)
                          throw BudgetExceeded("cmax DP exceeded the state budget");
                        Key next(k);
                        for (int t = 0; t < k; ++t) next[t] = consumed[t] + c[t];
                        layer[i + 1].try_emplace(std::move(next), Entry{c});
                      });
    }
  }

  auto final = layer[m].find(n);
  if (final == layer[m].end()) return std::nullopt;

  Assignment a = Assignment::zero(m, k);
  Key cur = n;
  for (int i = m - 1; i >= 0; --i) {
    const Entry& e = layer[i + 1].at(cur);
    a.counts[i] = e.config;
    for (int t = 0; t < k; ++t) cur[t] -= e.config[t];
  }
  if (eval_makespan(inst, a) > T)
    throw std::logic_error("cmax DP produced an assignment above the threshold");
  return a;
}

namespace {

// Additive minimization DP shared by l2sq and sumwc: layer i maps consumed
// job vectors to the best objective mass on machines < i. Ties are broken
// toward the lexicographically smaller configuration of the current machine.
SolveResult dp_minimize_additive(const ScheduleInstance& inst, const SolverLimits& limits) {
  int k = inst.typeCount(), m = inst.machines;
  std::vector<Int> n = multiplicities(inst);
  FutureData fd = future_data(inst);

  auto cost = [&](int machine, const std::vector<Int>& counts) -> Rat {
    if (inst.objective == Objective::l2sq) {
      Rat l = scaled_load(inst, machine, counts);
      return l * l;
    }
    return machine_sumwc(inst, machine, counts);
  };

  struct Entry {
    Rat value;
    std::vector<Int> config;
  };
  std::vector<std::map<Key, Entry>> layer(m + 1);
  layer[0].emplace(Key(k, Int(0)), Entry{Rat(0), {}});
  // Counts expanded transitions, which dominate materialized states.
  std::uint64_t work = 1;

  for (int i = 0; i < m; ++i) {
    for (const auto& [consumed, entry] : layer[i]) {
      std::vector<Int> r0(k);
      for (int t = 0; t < k; ++t) r0[t] = n[t] - consumed[t];
      machine_configs(inst, i, r0, std::nullopt, fd.runnable[i], fd.minSize[i], std::nullopt,
                      [&](const std::vector<Int>& c) {
                        if (++work > limits.maxStates)
                          throw BudgetExceeded("minimization DP exceeded the state budget");
                        Rat value = entry.value + cost(i, c);
                        Key next(k);
                        for (int t = 0; t < k; ++t) next[t] = consumed[t] + c[t];
                        auto it = layer[i + 1].find(next);
                        if (it == layer[i + 1].end()) {
                          layer[i + 1].emplace(std::move(next), Entry{std::move(value), c});
                        } else if (value < it->second.value ||
                                   (value == it->second.value && c < it->second.config)) {
                          it->second.value = std::move(value);
                          it->second.config = c;
                        }
                      });
    }
  }

  auto final = layer[m].find(n);
  if (final == layer[m].end()) throw EvalError("no complete assignment exists");

  Assignment a = Assignment::zero(m, k);
  Key cur = n;
  for (int i = m - 1; i >= 0; --i) {
    const Entry& e = layer[i + 1].at(cur);
    a.counts[i] = e.config;
    for (int t = 0; t < k; ++t) cur[t] -= e.config[t];
  }
  Rat check = inst.objective == Objective::l2sq ? eval_l2sq(inst, a)
                                                : eval_sumwc_closed(inst, a).total;
  if (check != final->second.value)
    throw std::logic_error("minimization DP value does not match its assignment");
  return {std::move(a), final->second.value};
}

SolveResult dp_minimize_cmax(const ScheduleInstance& inst, const SolverLimits& limits) {
  int k = inst.typeCount(), m = inst.machines;
  std::vector<Int> n = multiplicities(inst);

  Int box = 1;
  for (const Int& nj : n) {
    box *= nj + 1;
    if (box > limits.maxStates)
      throw BudgetExceeded("cmax candidate enumeration exceeds the state budget");
  }

  // Any optimal makespan is the scaled load of some single-machine
  // configuration, so the candidate list below is exhaustive.
  std::set<Rat> cands;
  cands.insert(Rat(0));
  FutureData fd = future_data(inst);
  std::vector<char> allRun(k, 1);
  std::vector<Int> ones(k, Int(1));
  for (int i = 0; i < m; ++i) {
    machine_configs(inst, i, n, std::nullopt, allRun, ones, std::nullopt,
                    [&](const std::vector<Int>& c) { cands.insert(scaled_load(inst, i, c)); });
  }
  std::vector<Rat> sorted(cands.begin(), cands.end());

  // Probe cost grows sharply with the bound (more configurations fit), so
  // gallop up from the cheap end before bisecting; plain bisection would
  // start with a probe near the top of the candidate list.
  std::size_t lo = 0, hi = sorted.size() - 1;
  std::size_t step = 1, probe = 0;
  while (probe < hi && !dp_feasible_cmax(inst, sorted[probe], limits)) {
    lo = probe + 1;
    probe = std::min(hi, probe + step);
    step *= 2;
  }
  hi = probe;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (dp_feasible_cmax(inst, sorted[mid], limits))
      hi = mid;
    else
      lo = mid + 1;
  }
  auto witness = dp_feasible_cmax(inst, sorted[lo], limits);
  if (!witness) throw EvalError("no complete assignment exists");
  Assignment a = std::move(*witness);
  Rat value = eval_makespan(inst, a);
  if (value != sorted[lo])
    throw std::logic_error("cmax DP assignment does not attain the candidate value");
  return {std::move(a), std::move(value)};
}

}  // namespace

SolveResult dp_minimize(const ScheduleInstance& inst, const SolverLimits& limits) {
  if (inst.objective == Objective::cmax) return dp_minimize_cmax(inst, limits);
  return dp_minimize_additive(inst, limits);
}

SolveResult brute_force_solve(const ScheduleInstance& inst, const SolverLimits& limits) {
  int k = inst.typeCount(), m = inst.machines;
  std::vector<Int> n = multiplicities(inst);

  Int work = 1;
  for (const Int& nj : n) {
    Int per = 1;
    for (int i = 0; i < m; ++i) per *= nj + 1;
    work *= per;
    if (work > limits.maxStates)
      throw BudgetExceeded("brute force would exceed the state budget");
  }

  std::vector<std::vector<char>> allowed(k, std::vector<char>(m, 0));
  for (int t = 0; t < k; ++t)
    for (int i = 0; i < m; ++i) allowed[t][i] = !size_on(inst, i, t).infinite;

  Assignment work_a = Assignment::zero(m, k);
  std::optional<SolveResult> best;

  // distribute type t onward, then evaluate the complete assignment
  std::function<void(int)> nextType = [&](int t) {
    if (t == k) {
      Rat value = eval_objective_sim(inst, work_a);
      if (!best || value < best->value) best = SolveResult{work_a, value};
      return;
    }
    std::function<void(int, Int)> spread = [&](int i, Int remaining) {
      if (i == m - 1) {
        if (!allowed[t][i] && remaining != 0) return;
        work_a.counts[i][t] = remaining;
        nextType(t + 1);
        work_a.counts[i][t] = 0;
        return;
      }
      Int maxc = allowed[t][i] ? remaining : Int(0);
      for (Int c = 0; c <= maxc; ++c) {
        work_a.counts[i][t] = c;
        spread(i + 1, remaining - c);
      }
      work_a.counts[i][t] = 0;
    };
    spread(0, n[t]);
  };
  nextType(0);

  if (!best) throw EvalError("no complete assignment exists");
  return *best;
}

namespace {

// Fillings of a bin of size S from remaining items r that cannot take one
// more item: dropping non-maximal fillings is safe because packing fewer
// items never costs more. Types are walked in decreasing size order and a
// branch is abandoned once some undersubscribed type is certain to still fit
// at the end (slack minus all remaining mass covers its size), which keeps
// the walk close to the set of maximal fillings. Every visited node counts
// against the work budget.
void maximal_fillings(const std::vector<Int>& sizes, const std::vector<Int>& r, const Int& S,
                      std::uint64_t& work, std::uint64_t maxStates,
                      const std::function<void(const std::vector<Int>&)>& emit) {
  int k = static_cast<int>(sizes.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sizes[a] > sizes[b]; });
  std::vector<Int> suffix(k + 1, Int(0));  // mass still undecided at depth t
  for (int t = k - 1; t >= 0; --t) suffix[t] = suffix[t + 1] + r[order[t]] * sizes[order[t]];
  std::vector<Int> fill(k, Int(0));
  // minUnsat: smallest size among decided types left undersubscribed; -1 none.
  std::function<void(int, const Int&, const Int&)> walk = [&](int t, const Int& slack,
                                                              const Int& minUnsat) {
    if (++work > maxStates)
      throw BudgetExceeded("cutting stock DP exceeded the state budget");
    if (minUnsat >= 0 && slack - suffix[t] >= minUnsat) return;  // never maximal
    if (t == k) {
      emit(fill);
      return;
    }
    int u = order[t];
    Int maxc = std::min(r[u], Int(slack / sizes[u]));
    for (Int c = maxc; c >= 0; --c) {
      fill[u] = c;
      Int next = c < r[u] ? (minUnsat < 0 ? sizes[u] : std::min(minUnsat, sizes[u])) : minUnsat;
      walk(t + 1, slack - sizes[u] * c, next);
    }
    fill[u] = 0;
  };
  walk(0, S, Int(-1));
}

}  // namespace

CuttingStockSolution cuttingstock_solve(const CuttingStockInstance& cs,
                                        const SolverLimits& limits) {
  if (auto err = check_cutting_stock(cs)) throw ReductionError(*err);
  int k = static_cast<int>(cs.itemSizes.size());
  int b = static_cast<int>(cs.binSizes.size());

  Int maxBin = 0;
  for (const Int& s : cs.binSizes) maxBin = std::max(maxBin, s);
  for (int t = 0; t < k; ++t)
    if (cs.itemCounts[t] > 0 && cs.itemSizes[t] > maxBin)
      throw ReductionError("an item fits in no bin type");

  struct Entry {
    Int cost;
    int binType = -1;
    std::vector<Int> fill;
  };
  std::map<Key, Entry> memo;
  // Counts visited states plus enumerated fillings; the reachable portion of
  // the remaining-vector space is far smaller than its bounding box.
  std::uint64_t work = 0;
  std::function<const Entry&(const Key&)> solve = [&](const Key& r) -> const Entry& {
    auto found = memo.find(r);
    if (found != memo.end()) return found->second;
    bool empty = std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
    Entry best;
    if (empty) {
      best.cost = 0;
    } else {
      bool have = false;
      for (int bt = 0; bt < b; ++bt) {
        maximal_fillings(cs.itemSizes, r, cs.binSizes[bt], work, limits.maxStates,
                         [&](const std::vector<Int>& fill) {
          bool zero = std::all_of(fill.begin(), fill.end(), [](const Int& v) { return v == 0; });
          if (zero) return;
          Key rest(r);
          for (int t = 0; t < k; ++t) rest[t] -= fill[t];
          Int cand = cs.binCosts[bt] + solve(rest).cost;
          if (!have || cand < best.cost) {
            have = true;
            best = Entry{std::move(cand), bt, fill};
          }
        });
      }
      if (!have) throw std::logic_error("cutting stock recursion found no filling");
    }
    return memo.emplace(r, std::move(best)).first->second;
  };

  Key start(cs.itemCounts.begin(), cs.itemCounts.end());
  Int total = solve(start).cost;

  CuttingStockSolution sol;
  sol.purchases.assign(b, Int(0));
  sol.cost = total;
  Key cur = start;
  for (;;) {
    const Entry& e = memo.at(cur);
    if (e.binType < 0) break;
    sol.purchases[e.binType] += 1;
    sol.bins.push_back(BinUse{e.binType, e.fill});
    for (int t = 0; t < k; ++t) cur[t] -= e.fill[t];
  }
  return sol;
}

}  // namespace hms
