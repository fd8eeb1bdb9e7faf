#pragma once

#include "hms/instance.hpp"
#include "hms/problems.hpp"
#include "hms/reductions.hpp"
#include "hms/solvers.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace hms {

// Insertion-ordered JSON keeps serialization canonical: equal values always
// produce equal bytes, so digests and golden files are stable.
using Json = nlohmann::ordered_json;

// Integers are serialized as decimal strings, rationals as "p" or "p/q" in
// lowest terms; the unrelated model marks an unusable machine with "inf".

Json to_json(const ScheduleInstance& inst);
Json to_json(const Assignment& a);
Json to_json(const BinPackingInstance& bp);
Json to_json(const BalancedBinPackingInstance& bbp);
Json to_json(const CuttingStockInstance& cs);
Json to_json(const ReductionCertificate& cert);
Json to_json(const CuttingStockSolution& sol);

ScheduleInstance schedule_from_json(const Json& j);
Assignment assignment_from_json(const Json& j);
BinPackingInstance bin_packing_from_json(const Json& j);
BalancedBinPackingInstance balanced_from_json(const Json& j);
CuttingStockInstance cutting_stock_from_json(const Json& j);
ReductionCertificate certificate_from_json(const Json& j);

// Every document carries a top-level "kind" discriminator.
using AnyInput = std::variant<ScheduleInstance, Assignment, BinPackingInstance,
                              BalancedBinPackingInstance, CuttingStockInstance,
                              ReductionCertificate>;
AnyInput from_json(const Json& j);

std::string dump_canonical(const Json& j);  // compact, single line
std::string dump_pretty(const Json& j);     // 2-space indent, trailing newline

// FNV-1a of the canonical dump, as 16 hex digits.
std::string digest(const Json& j);

Json read_json_file(const std::string& path);    // throws ParseError / IO failure
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace hms
