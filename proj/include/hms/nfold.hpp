#pragma once

#include "hms/instance.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hms {

enum class RowSense { eq, le };
enum class NFoldObjective { none, l2sq, sumwc };

// Block-structured ILP: N blocks of t variables, r linking rows (the
// horizontal concatenation of the E1 blocks) and one s-row local constraint
// per block. rhs and sense cover the r linking rows first, then the N*s
// local rows in block order. Bounds are per variable; an absent bound means
// unbounded on that side.
struct NFoldModel {
  long r = 0, s = 0, t = 0, N = 0;
  std::vector<std::vector<std::vector<Int>>> E1;  // N blocks, r x t
  std::vector<std::vector<std::vector<Int>>> E2;  // N blocks, s x t
  std::vector<Int> rhs;
  std::vector<RowSense> sense;
  std::vector<std::optional<Int>> lb, ub;  // N*t each

  // Declared separable objective: z_i = zdef[i] . x_i per block, objective
  // sum z_i^2 (l2sq) or the weighted-completion analogue (sumwc). Purely a
  // declaration; no solver for it lives here.
  NFoldObjective objective = NFoldObjective::none;
  std::vector<std::vector<Int>> zdef;

  bool operator==(const NFoldModel&) const = default;
};

// The makespan-decision model of a scheduling instance: one block per
// machine with E1 = I (job counts sum to the multiplicities) and E2 = the
// machine's size row (load at most floor(T * s_i)). Variables are bounded by
// 0 and the multiplicities; a type the machine cannot run gets coefficient 0
// and upper bound 0. Instances with objective l2sq or sumwc also get the
// objective declaration stanza.
NFoldModel build_nfold_cmax(const ScheduleInstance& inst, const Rat& T);

struct NFoldCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// Verifies dimensions, bounds and every row of E1/E2 against rhs and sense
// for a flattened solution vector (block order).
NFoldCheck check_solution(const NFoldModel& model, const std::vector<Int>& x);

// Line-oriented text form; export followed by import is the identity and
// re-export reproduces the bytes exactly.
std::string export_nfold(const NFoldModel& model);
NFoldModel import_nfold(const std::string& text);  // throws ParseError

}  // namespace hms
