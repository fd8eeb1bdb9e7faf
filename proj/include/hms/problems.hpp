#pragma once

#include "hms/numbers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hms {

// Decision form: can `items` be split into `bins` parts each summing to at
// most `capacity`?
struct BinPackingInstance {
  std::vector<Int> items;
  int bins = 1;
  Int capacity = 0;

  Int totalSize() const;
  // sum of items == bins * capacity
  bool tight() const;
};

// As above, with every bin holding exactly items.size()/bins items.
// Instances whose item count is not divisible by the bin count are rejected
// by the reductions as trivially infeasible.
struct BalancedBinPackingInstance {
  std::vector<Int> items;
  int bins = 1;
  Int capacity = 0;

  Int totalSize() const;
  bool tight() const;
  bool countDivisible() const;
  int itemsPerBin() const;
};

// Weighted bin types bought any number of times; every item must be packed.
struct CuttingStockInstance {
  std::vector<Int> itemSizes;
  std::vector<Int> itemCounts;
  std::vector<Int> binSizes;
  std::vector<Int> binCosts;
  std::optional<Int> budget;
};

std::optional<std::string> check_bin_packing(const BinPackingInstance& bp);
std::optional<std::string> check_balanced(const BalancedBinPackingInstance& bbp);
std::optional<std::string> check_cutting_stock(const CuttingStockInstance& cs);

// item index -> bin index (0-based).
using Packing = std::vector<int>;

bool packing_valid(const std::vector<Int>& items, int bins, const Int& capacity,
                   bool balanced, const Packing& packing);

// Exhaustive search with symmetry pruning (items placed in size order, bins
// with equal load and count collapsed). Independent of the scheduling DP;
// serves as the ground-truth oracle at desk scale.
std::optional<Packing> brute_force_packing(const std::vector<Int>& items, int bins,
                                           const Int& capacity, bool balanced);

}  // namespace hms
