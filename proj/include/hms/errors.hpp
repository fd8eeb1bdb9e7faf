#pragma once

#include <stdexcept>
#include <string>

namespace hms {

// A file could not be opened, read, or written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition on an evaluation or solver call (bad shape,
// incomplete assignment, job placed on a machine that cannot run it).
struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Input rejected by a reduction (not tight, item count not divisible by the
// bin count, wrong machine model, ...).
struct ReductionError : std::runtime_error {
  explicit ReductionError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or DP would exceed the configured state budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hms
