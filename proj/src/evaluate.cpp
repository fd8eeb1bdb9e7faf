#include "hms/evaluate.hpp"

#include "hms/errors.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace hms {

LoadVector compute_loads(const ScheduleInstance& inst, const Assignment& a) {
  if (!assignment_shape_ok(inst, a)) throw EvalError("assignment shape mismatch");
  LoadVector lv;
  lv.unscaled.reserve(inst.machines);
  lv.scaled.reserve(inst.machines);
  for (int i = 0; i < inst.machines; ++i) {
    Int load = 0;
    for (int t = 0; t < inst.typeCount(); ++t) {
      const Int& x = a.counts[i][t];
      if (x == 0) continue;
      MachineSize ms = size_on(inst, i, t);
      if (ms.infinite)
        throw EvalError("job type " + std::to_string(t) + " cannot run on machine " +
                        std::to_string(i));
      load += ms.value * x;
    }
    lv.scaled.push_back(Rat(load) / speed_of(inst, i));
    lv.unscaled.push_back(std::move(load));
  }
  return lv;
}

namespace {

void require_complete(const ScheduleInstance& inst, const Assignment& a) {
  if (!is_complete(inst, a)) throw EvalError("assignment is not complete");
}

}  // namespace

Rat eval_makespan(const ScheduleInstance& inst, const Assignment& a) {
  require_complete(inst, a);
  LoadVector lv = compute_loads(inst, a);
  Rat best = 0;
  for (const Rat& l : lv.scaled) best = std::max(best, l);
  return best;
}

Rat eval_l2sq(const ScheduleInstance& inst, const Assignment& a) {
  require_complete(inst, a);
  LoadVector lv = compute_loads(inst, a);
  Rat sum = 0;
  for (const Rat& l : lv.scaled) sum += l * l;
  return sum;
}

namespace {

struct TypeOnMachine {
  int type;
  Rat time;   // effective processing time on this machine
  Int weight;
  Rat ratio;  // weight / time
  Int count;
};

// Types with positive count on the machine, Smith-sorted: ratio
// nonincreasing, ties by type index ascending.
std::vector<TypeOnMachine> smith_order(const ScheduleInstance& inst, int machine,
                                       const std::vector<Int>& counts) {
  std::vector<TypeOnMachine> out;
  Rat speed = speed_of(inst, machine);
  for (int t = 0; t < inst.typeCount(); ++t) {
    if (counts[t] == 0) continue;
    MachineSize ms = size_on(inst, machine, t);
    if (ms.infinite)
      throw EvalError("job type " + std::to_string(t) + " cannot run on machine " +
                      std::to_string(machine));
    const JobType& jt = inst.jobs[t];
    if (!jt.weight) throw EvalError("job type " + std::to_string(t) + " has no weight");
    Rat time = Rat(ms.value) / speed;
    out.push_back({t, time, *jt.weight, Rat(*jt.weight) / time, counts[t]});
  }
  std::sort(out.begin(), out.end(), [](const TypeOnMachine& a, const TypeOnMachine& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.type < b.type;
  });
  return out;
}

// True when the effective processing time of a type does not depend on the
// machine; splits the linear part of the closed form.
bool machine_independent(const ScheduleInstance& inst, int type) {
  switch (inst.model) {
    case MachineModel::identical:
      return true;
    case MachineModel::uniform:
      for (const Rat& s : inst.speeds)
        if (s != inst.speeds.front()) return false;
      return true;
    case MachineModel::unrelated: {
      const auto& sizes = inst.jobs[type].sizes;
      for (const MachineSize& ms : sizes)
        if (ms.infinite || !(ms == sizes.front())) return false;
      return true;
    }
  }
  return false;
}

struct MachineParts {
  Rat loadTerm, gammaLinear, gammaQuadr, uniformLinear;

  Rat total() const { return loadTerm + gammaLinear + gammaQuadr + uniformLinear; }
};

MachineParts machine_parts(const ScheduleInstance& inst, int machine,
                           const std::vector<Int>& counts) {
  MachineParts parts{0, 0, 0, 0};
  std::vector<TypeOnMachine> order = smith_order(inst, machine, counts);
  Rat half(1, 2);
  Rat z = 0;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const TypeOnMachine& tm = order[idx];
    z += tm.time * Rat(tm.count);
    Rat nextRatio = idx + 1 < order.size() ? order[idx + 1].ratio : Rat(0);
    Rat quad = half * z * z * (tm.ratio - nextRatio);
    if (idx + 1 < order.size())
      parts.gammaQuadr += quad;
    else
      parts.loadTerm += quad;
    Rat lin = half * tm.time * Rat(tm.weight) * Rat(tm.count);
    if (machine_independent(inst, tm.type))
      parts.uniformLinear += lin;
    else
      parts.gammaLinear += lin;
  }
  return parts;
}

}  // namespace

Rat eval_sumwc_sim(const ScheduleInstance& inst, const Assignment& a) {
  require_complete(inst, a);
  Rat total = 0;
  for (int i = 0; i < inst.machines; ++i) {
    std::vector<TypeOnMachine> order = smith_order(inst, i, a.counts[i]);
    Rat clock = 0;
    for (const TypeOnMachine& tm : order) {
      for (Int done = 0; done < tm.count; ++done) {
        clock += tm.time;
        total += Rat(tm.weight) * clock;
      }
    }
  }
  return total;
}

SumWcBreakdown eval_sumwc_closed(const ScheduleInstance& inst, const Assignment& a) {
  require_complete(inst, a);
  SumWcBreakdown b{0, 0, 0, 0, 0};
  for (int i = 0; i < inst.machines; ++i) {
    MachineParts parts = machine_parts(inst, i, a.counts[i]);
    b.loadTerm += parts.loadTerm;
    b.gammaLinear += parts.gammaLinear;
    b.gammaQuadr += parts.gammaQuadr;
    b.uniformLinear += parts.uniformLinear;
  }
  b.total = b.loadTerm + b.gammaLinear + b.gammaQuadr + b.uniformLinear;
  return b;
}

Rat machine_sumwc(const ScheduleInstance& inst, int machine, const std::vector<Int>& counts) {
  return machine_parts(inst, machine, counts).total();
}

}  // namespace hms
