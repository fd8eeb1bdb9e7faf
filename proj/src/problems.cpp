#include "hms/problems.hpp"

#include <algorithm>
#include <numeric>

namespace hms {

Int BinPackingInstance::totalSize() const {
  return std::accumulate(items.begin(), items.end(), Int(0));
}

bool BinPackingInstance::tight() const { return totalSize() == Int(bins) * capacity; }

Int BalancedBinPackingInstance::totalSize() const {
  return std::accumulate(items.begin(), items.end(), Int(0));
}

bool BalancedBinPackingInstance::tight() const { return totalSize() == Int(bins) * capacity; }

bool BalancedBinPackingInstance::countDivisible() const {
  return bins >= 1 && items.size() % static_cast<std::size_t>(bins) == 0;
}

int BalancedBinPackingInstance::itemsPerBin() const {
  return static_cast<int>(items.size()) / bins;
}

std::optional<std::string> check_bin_packing(const BinPackingInstance& bp) {
  if (bp.bins < 1) return "bin count must be at least 1";
  if (bp.capacity < 0) return "negative capacity";
  for (const Int& a : bp.items)
    if (a < 1) return "item sizes must be at least 1";
  return std::nullopt;
}

std::optional<std::string> check_balanced(const BalancedBinPackingInstance& bbp) {
  if (bbp.bins < 1) return "bin count must be at least 1";
  if (bbp.capacity < 0) return "negative capacity";
  for (const Int& a : bbp.items)
    if (a < 1) return "item sizes must be at least 1";
  if (!bbp.countDivisible()) return "item count not divisible by the bin count";
  return std::nullopt;
}

std::optional<std::string> check_cutting_stock(const CuttingStockInstance& cs) {
  if (cs.itemSizes.size() != cs.itemCounts.size()) return "item size/count length mismatch";
  if (cs.binSizes.size() != cs.binCosts.size()) return "bin size/cost length mismatch";
  if (cs.binSizes.empty()) return "at least one bin type required";
  for (const Int& p : cs.itemSizes)
    if (p < 1) return "item sizes must be at least 1";
  for (const Int& n : cs.itemCounts)
    if (n < 0) return "negative item count";
  for (const Int& s : cs.binSizes)
    if (s < 1) return "bin sizes must be at least 1";
  for (const Int& c : cs.binCosts)
    if (c < 0) return "negative bin cost";
  return std::nullopt;
}

bool packing_valid(const std::vector<Int>& items, int bins, const Int& capacity,
                   bool balanced, const Packing& packing) {
  if (packing.size() != items.size()) return false;
  std::vector<Int> load(bins, Int(0));
  std::vector<int> count(bins, 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    int b = packing[i];
    if (b < 0 || b >= bins) return false;
    load[b] += items[i];
    ++count[b];
  }
  for (int b = 0; b < bins; ++b)
    if (load[b] > capacity) return false;
  if (balanced) {
    if (bins == 0 || items.size() % static_cast<std::size_t>(bins) != 0) return false;
    int per = static_cast<int>(items.size()) / bins;
    for (int b = 0; b < bins; ++b)
      if (count[b] != per) return false;
  }
  return true;
}

namespace {

struct PackSearch {
  const std::vector<Int>& items;  // sorted descending
  const std::vector<int>& origIndex;
  int bins;
  const Int& capacity;
  int perBin;  // -1 when unbalanced
  std::vector<Int> load;
  std::vector<int> count;
  Packing result;

  bool place(std::size_t item) {
    if (item == items.size()) return true;
    for (int b = 0; b < bins; ++b) {
      if (perBin >= 0 && count[b] == perBin) continue;
      if (load[b] + items[item] > capacity) continue;
      // bins with identical load and count are interchangeable
      bool mirror = false;
      for (int prev = 0; prev < b; ++prev)
        if (load[prev] == load[b] && count[prev] == count[b]) {
          mirror = true;
          break;
        }
      if (mirror) continue;
      load[b] += items[item];
      ++count[b];
      result[origIndex[item]] = b;
      if (place(item + 1)) return true;
      load[b] -= items[item];
      --count[b];
    }
    return false;
  }
};

}  // namespace

std::optional<Packing> brute_force_packing(const std::vector<Int>& items, int bins,
                                           const Int& capacity, bool balanced) {
  if (bins < 1) return std::nullopt;
  if (balanced && items.size() % static_cast<std::size_t>(bins) != 0) return std::nullopt;
  std::vector<std::size_t> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return items[a] > items[b]; });
  std::vector<Int> sorted;
  std::vector<int> orig;
  sorted.reserve(items.size());
  orig.reserve(items.size());
  for (std::size_t i : idx) {
    sorted.push_back(items[i]);
    orig.push_back(static_cast<int>(i));
  }
  PackSearch search{sorted,
                    orig,
                    bins,
                    capacity,
                    balanced ? static_cast<int>(items.size()) / bins : -1,
                    std::vector<Int>(bins, Int(0)),
                    std::vector<int>(bins, 0),
                    Packing(items.size(), 0)};
  if (!search.place(0)) return std::nullopt;
  return search.result;
}

}  // namespace hms
