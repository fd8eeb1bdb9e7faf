#include "hms/instance.hpp"

#include "hms/errors.hpp"

#include <sstream>

namespace hms {

const char* to_string(MachineModel m) {
  switch (m) {
    case MachineModel::identical: return "identical";
    case MachineModel::uniform: return "uniform";
    case MachineModel::unrelated: return "unrelated";
  }
  return "?";
}

const char* to_string(Objective o) {
  switch (o) {
    case Objective::cmax: return "cmax";
    case Objective::l2sq: return "l2sq";
    case Objective::sumwc: return "sumwc";
  }
  return "?";
}

std::string ValidationReport::joined() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  return out.str();
}

ValidationReport validate_instance(const ScheduleInstance& inst) {
  ValidationReport rep;
  auto bad = [&](const std::string& s) { rep.violations.push_back(s); };

  if (inst.machines < 1) bad("machine count must be at least 1");
  if (inst.jobs.empty()) bad("at least one job type required");

  if (inst.model == MachineModel::uniform) {
    if (static_cast<int>(inst.speeds.size()) != inst.machines)
      bad("uniform model needs one speed per machine");
    for (std::size_t i = 0; i < inst.speeds.size(); ++i)
      if (inst.speeds[i] <= 0)
        bad("speed of machine " + std::to_string(i) + " must be positive");
  } else if (!inst.speeds.empty()) {
    bad("speeds are only meaningful on the uniform model");
  }

  for (std::size_t t = 0; t < inst.jobs.size(); ++t) {
    const JobType& jt = inst.jobs[t];
    std::string tag = "job type " + std::to_string(t);
    if (jt.multiplicity < 0) bad(tag + ": negative multiplicity");
    if (inst.model == MachineModel::unrelated) {
      if (jt.size) bad(tag + ": scalar size on the unrelated model");
      if (static_cast<int>(jt.sizes.size()) != inst.machines) {
        bad(tag + ": needs one size per machine");
      } else {
        bool anyFinite = false;
        for (const MachineSize& ms : jt.sizes) {
          if (ms.infinite) continue;
          anyFinite = true;
          if (ms.value < 1) bad(tag + ": sizes must be at least 1");
        }
        if (!anyFinite) bad(tag + ": no machine can run it");
      }
    } else {
      if (!jt.sizes.empty()) bad(tag + ": per-machine sizes on a non-unrelated model");
      if (!jt.size) bad(tag + ": missing size");
      else if (*jt.size < 1) bad(tag + ": size must be at least 1");
    }
    if (inst.objective == Objective::sumwc) {
      if (!jt.weight) bad(tag + ": sumwc needs a weight");
      else if (*jt.weight < 0) bad(tag + ": negative weight");
    }
  }
  return rep;
}

MachineSize size_on(const ScheduleInstance& inst, int machine, int type) {
  const JobType& jt = inst.jobs.at(type);
  if (inst.model == MachineModel::unrelated) return jt.sizes.at(machine);
  if (!jt.size) throw EvalError("job type without a size");
  return MachineSize::of(*jt.size);
}

Rat speed_of(const ScheduleInstance& inst, int machine) {
  if (inst.model == MachineModel::uniform) return inst.speeds.at(machine);
  return Rat(1);
}

Assignment Assignment::zero(int machines, int types) {
  Assignment a;
  a.counts.assign(machines, std::vector<Int>(types, Int(0)));
  return a;
}

bool assignment_shape_ok(const ScheduleInstance& inst, const Assignment& a) {
  if (static_cast<int>(a.counts.size()) != inst.machines) return false;
  for (const auto& row : a.counts) {
    if (row.size() != inst.jobs.size()) return false;
    for (const Int& c : row)
      if (c < 0) return false;
  }
  return true;
}

namespace {

enum class SumCheck { exact, atMost };

bool column_sums(const ScheduleInstance& inst, const Assignment& a, SumCheck mode) {
  if (!assignment_shape_ok(inst, a)) return false;
  for (std::size_t t = 0; t < inst.jobs.size(); ++t) {
    Int sum = 0;
    for (const auto& row : a.counts) sum += row[t];
    if (mode == SumCheck::exact ? sum != inst.jobs[t].multiplicity
                                : sum > inst.jobs[t].multiplicity)
      return false;
  }
  return true;
}

}  // namespace

bool is_complete(const ScheduleInstance& inst, const Assignment& a) {
  return column_sums(inst, a, SumCheck::exact);
}

bool is_partial(const ScheduleInstance& inst, const Assignment& a) {
  return column_sums(inst, a, SumCheck::atMost);
}

}  // namespace hms
