#pragma once

#include "hms/numbers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hms {

enum class MachineModel { identical, uniform, unrelated };
enum class Objective { cmax, l2sq, sumwc };

const char* to_string(MachineModel m);
const char* to_string(Objective o);

// Per-machine processing time of a job type on the unrelated model.
// An infinite entry means the machine cannot run the type at all.
struct MachineSize {
  bool infinite = false;
  Int value = 0;

  static MachineSize inf() { return MachineSize{true, 0}; }
  static MachineSize of(Int v) { return MachineSize{false, std::move(v)}; }

  bool operator==(const MachineSize& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

// A job type: identical jobs described once, with a multiplicity.
// `size` is set for the identical and uniform models, `sizes` (one entry per
// machine) for the unrelated model. `weight` is required by sumwc only.
struct JobType {
  std::optional<Int> size;
  std::vector<MachineSize> sizes;
  Int multiplicity = 0;
  std::optional<Int> weight;
};

struct ScheduleInstance {
  MachineModel model = MachineModel::identical;
  int machines = 1;
  std::vector<Rat> speeds;  // uniform model only, one per machine
  std::vector<JobType> jobs;
  Objective objective = Objective::cmax;
  std::optional<Rat> target;

  int typeCount() const { return static_cast<int>(jobs.size()); }
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

// Structural checks: machine/type counts >= 1, sizes >= 1, multiplicities
// >= 0, weights present and >= 0 for sumwc, speeds positive and matching the
// machine count for uniform, size lists matching the machine count for
// unrelated, at least one finite size per type.
ValidationReport validate_instance(const ScheduleInstance& inst);

// Processing time of job type t on machine i (0-based).
MachineSize size_on(const ScheduleInstance& inst, int machine, int type);

// Machine speed; 1 unless the model is uniform.
Rat speed_of(const ScheduleInstance& inst, int machine);

// counts[i][j]: jobs of type j placed on machine i.
struct Assignment {
  std::vector<std::vector<Int>> counts;

  static Assignment zero(int machines, int types);
};

// Shape matches the instance and all counts are nonnegative.
bool assignment_shape_ok(const ScheduleInstance& inst, const Assignment& a);

// Column sums equal the multiplicities exactly.
bool is_complete(const ScheduleInstance& inst, const Assignment& a);

// Column sums are at most the multiplicities.
bool is_partial(const ScheduleInstance& inst, const Assignment& a);

}  // namespace hms
