#include "hms/io.hpp"

#include "hms/errors.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace hms {

namespace {

Json int_json(const Int& v) { return int_str(v); }
Json rat_json(const Rat& r) { return rat_str(r); }

Json size_json(const MachineSize& ms) {
  if (ms.infinite) return "inf";
  return int_str(ms.value);
}

std::string want_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Int want_int(const Json& j, const char* what) { return parse_int(want_string(j, what)); }
Rat want_rat(const Json& j, const char* what) { return parse_rat(want_string(j, what)); }

MachineSize want_size(const Json& j, const char* what) {
  std::string s = want_string(j, what);
  if (s == "inf") return MachineSize::inf();
  return MachineSize::of(parse_int(s));
}

const Json& want_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<Int> want_int_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Int> out;
  for (const Json& e : j) out.push_back(want_int(e, what));
  return out;
}

void want_kind(const Json& j, const char* kind) {
  if (want_string(want_field(j, "kind"), "kind") != kind)
    throw ParseError(std::string("expected kind '") + kind + "'");
}

// Small nonnegative integer regardless of the storage class the JSON value
// happened to land in (text parses load as unsigned, in-memory ints as signed).
int want_count(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be a count");
  if (j.is_number_unsigned()) {
    std::uint64_t v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
      throw ParseError(std::string(what) + " is out of range");
    return static_cast<int>(v);
  }
  std::int64_t v = j.get<std::int64_t>();
  if (v < 0) throw ParseError(std::string(what) + " must be a count");
  if (v > std::numeric_limits<int>::max())
    throw ParseError(std::string(what) + " is out of range");
  return static_cast<int>(v);
}

}  // namespace

Json to_json(const ScheduleInstance& inst) {
  Json j;
  j["kind"] = "schedule";
  j["model"] = to_string(inst.model);
  j["objective"] = to_string(inst.objective);
  if (inst.model == MachineModel::uniform) {
    Json machines = Json::array();
    for (const Rat& s : inst.speeds) machines.push_back(Json{{"speed", rat_json(s)}});
    j["machines"] = machines;
  } else {
    j["machines"] = inst.machines;
  }
  Json jobs = Json::array();
  for (const JobType& jt : inst.jobs) {
    Json job;
    if (inst.model == MachineModel::unrelated) {
      Json sizes = Json::array();
      for (const MachineSize& ms : jt.sizes) sizes.push_back(size_json(ms));
      job["sizes"] = sizes;
    } else if (jt.size) {
      job["size"] = int_json(*jt.size);
    }
    job["multiplicity"] = int_json(jt.multiplicity);
    if (jt.weight) job["weight"] = int_json(*jt.weight);
    jobs.push_back(job);
  }
  j["jobs"] = jobs;
  if (inst.target) j["target"] = rat_json(*inst.target);
  return j;
}

ScheduleInstance schedule_from_json(const Json& j) {
  want_kind(j, "schedule");
  ScheduleInstance inst;
  std::string model = want_string(want_field(j, "model"), "model");
  if (model == "identical")
    inst.model = MachineModel::identical;
  else if (model == "uniform")
    inst.model = MachineModel::uniform;
  else if (model == "unrelated")
    inst.model = MachineModel::unrelated;
  else
    throw ParseError("unknown model '" + model + "'");

  std::string objective = want_string(want_field(j, "objective"), "objective");
  if (objective == "cmax")
    inst.objective = Objective::cmax;
  else if (objective == "l2sq")
    inst.objective = Objective::l2sq;
  else if (objective == "sumwc")
    inst.objective = Objective::sumwc;
  else
    throw ParseError("unknown objective '" + objective + "'");

  const Json& machines = want_field(j, "machines");
  if (inst.model == MachineModel::uniform) {
    if (!machines.is_array()) throw ParseError("uniform machines must be an array");
    for (const Json& mj : machines)
      inst.speeds.push_back(want_rat(want_field(mj, "speed"), "speed"));
    inst.machines = static_cast<int>(inst.speeds.size());
  } else {
    inst.machines = want_count(machines, "machines");
  }

  const Json& jobs = want_field(j, "jobs");
  if (!jobs.is_array()) throw ParseError("jobs must be an array");
  for (const Json& job : jobs) {
    JobType jt;
    if (inst.model == MachineModel::unrelated) {
      const Json& sizes = want_field(job, "sizes");
      if (!sizes.is_array()) throw ParseError("sizes must be an array");
      for (const Json& s : sizes) jt.sizes.push_back(want_size(s, "size"));
    } else {
      jt.size = want_int(want_field(job, "size"), "size");
    }
    jt.multiplicity = want_int(want_field(job, "multiplicity"), "multiplicity");
    if (job.contains("weight")) jt.weight = want_int(job["weight"], "weight");
    inst.jobs.push_back(std::move(jt));
  }
  if (j.contains("target")) inst.target = want_rat(j["target"], "target");
  return inst;
}

Json to_json(const Assignment& a) {
  Json j;
  j["kind"] = "assignment";
  Json counts = Json::array();
  for (const auto& row : a.counts) {
    Json r = Json::array();
    for (const Int& c : row) r.push_back(int_json(c));
    counts.push_back(r);
  }
  j["counts"] = counts;
  return j;
}

Assignment assignment_from_json(const Json& j) {
  want_kind(j, "assignment");
  const Json& counts = want_field(j, "counts");
  if (!counts.is_array()) throw ParseError("counts must be an array");
  Assignment a;
  for (const Json& row : counts) a.counts.push_back(want_int_array(row, "counts"));
  return a;
}

Json to_json(const BinPackingInstance& bp) {
  Json j;
  j["kind"] = "binpacking";
  Json items = Json::array();
  for (const Int& a : bp.items) items.push_back(int_json(a));
  j["items"] = items;
  j["bins"] = bp.bins;
  j["capacity"] = int_json(bp.capacity);
  return j;
}

BinPackingInstance bin_packing_from_json(const Json& j) {
  want_kind(j, "binpacking");
  BinPackingInstance bp;
  bp.items = want_int_array(want_field(j, "items"), "items");
  bp.bins = want_count(want_field(j, "bins"), "bins");
  bp.capacity = want_int(want_field(j, "capacity"), "capacity");
  return bp;
}

Json to_json(const BalancedBinPackingInstance& bbp) {
  Json j;
  j["kind"] = "balancedbinpacking";
  Json items = Json::array();
  for (const Int& a : bbp.items) items.push_back(int_json(a));
  j["items"] = items;
  j["bins"] = bbp.bins;
  j["capacity"] = int_json(bbp.capacity);
  return j;
}

BalancedBinPackingInstance balanced_from_json(const Json& j) {
  want_kind(j, "balancedbinpacking");
  BalancedBinPackingInstance bbp;
  bbp.items = want_int_array(want_field(j, "items"), "items");
  bbp.bins = want_count(want_field(j, "bins"), "bins");
  bbp.capacity = want_int(want_field(j, "capacity"), "capacity");
  return bbp;
}

Json to_json(const CuttingStockInstance& cs) {
  Json j;
  j["kind"] = "cuttingstock";
  auto arr = [](const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
  };
  j["itemSizes"] = arr(cs.itemSizes);
  j["itemCounts"] = arr(cs.itemCounts);
  j["binSizes"] = arr(cs.binSizes);
  j["binCosts"] = arr(cs.binCosts);
  if (cs.budget) j["budget"] = int_json(*cs.budget);
  return j;
}

CuttingStockInstance cutting_stock_from_json(const Json& j) {
  want_kind(j, "cuttingstock");
  CuttingStockInstance cs;
  cs.itemSizes = want_int_array(want_field(j, "itemSizes"), "itemSizes");
  cs.itemCounts = want_int_array(want_field(j, "itemCounts"), "itemCounts");
  cs.binSizes = want_int_array(want_field(j, "binSizes"), "binSizes");
  cs.binCosts = want_int_array(want_field(j, "binCosts"), "binCosts");
  if (j.contains("budget")) cs.budget = want_int(j["budget"], "budget");
  return cs;
}

Json to_json(const ReductionCertificate& cert) {
  Json j;
  j["kind"] = "certificate";
  j["family"] = cert.family;
  j["bins"] = cert.bins;
  j["A"] = int_json(cert.A);
  j["B"] = int_json(cert.B);
  j["aMax"] = int_json(cert.aMax);
  Json items = Json::array();
  for (const Int& a : cert.items) items.push_back(int_json(a));
  j["items"] = items;
  j["jobTypeLabels"] = cert.jobTypeLabels;
  j["targetMakespan"] = rat_json(cert.targetMakespan);
  j["targetValue"] = rat_json(cert.targetValue);
  auto mat = [](const std::vector<std::vector<Int>>& rows) {
    Json m = Json::array();
    for (const auto& row : rows) {
      Json r = Json::array();
      for (const Int& v : row) r.push_back(int_json(v));
      m.push_back(r);
    }
    return m;
  };
  if (cert.rank2C) j["rank2C"] = mat(*cert.rank2C);
  if (cert.rank2D) j["rank2D"] = mat(*cert.rank2D);
  return j;
}

ReductionCertificate certificate_from_json(const Json& j) {
  want_kind(j, "certificate");
  ReductionCertificate cert;
  cert.family = want_string(want_field(j, "family"), "family");
  cert.bins = want_count(want_field(j, "bins"), "bins");
  cert.A = want_int(want_field(j, "A"), "A");
  cert.B = want_int(want_field(j, "B"), "B");
  cert.aMax = want_int(want_field(j, "aMax"), "aMax");
  cert.items = want_int_array(want_field(j, "items"), "items");
  const Json& labels = want_field(j, "jobTypeLabels");
  if (!labels.is_array()) throw ParseError("jobTypeLabels must be an array");
  for (const Json& l : labels) cert.jobTypeLabels.push_back(want_string(l, "label"));
  cert.targetMakespan = want_rat(want_field(j, "targetMakespan"), "targetMakespan");
  cert.targetValue = want_rat(want_field(j, "targetValue"), "targetValue");
  auto mat = [](const Json& m, const char* what) {
    if (!m.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<std::vector<Int>> rows;
    for (const Json& row : m) rows.push_back(want_int_array(row, what));
    return rows;
  };
  if (j.contains("rank2C")) cert.rank2C = mat(j["rank2C"], "rank2C");
  if (j.contains("rank2D")) cert.rank2D = mat(j["rank2D"], "rank2D");
  return cert;
}

Json to_json(const CuttingStockSolution& sol) {
  Json j;
  j["kind"] = "cuttingstocksolution";
  j["cost"] = int_json(sol.cost);
  Json purchases = Json::array();
  for (const Int& p : sol.purchases) purchases.push_back(int_json(p));
  j["purchases"] = purchases;
  Json bins = Json::array();
  for (const BinUse& use : sol.bins) {
    Json b;
    b["binType"] = use.binType;
    Json counts = Json::array();
    for (const Int& c : use.itemCounts) counts.push_back(int_json(c));
    b["itemCounts"] = counts;
    bins.push_back(b);
  }
  j["bins"] = bins;
  return j;
}

AnyInput from_json(const Json& j) {
  std::string kind = want_string(want_field(j, "kind"), "kind");
  if (kind == "schedule") return schedule_from_json(j);
  if (kind == "assignment") return assignment_from_json(j);
  if (kind == "binpacking") return bin_packing_from_json(j);
  if (kind == "balancedbinpacking") return balanced_from_json(j);
  if (kind == "cuttingstock") return cutting_stock_from_json(j);
  if (kind == "certificate") return certificate_from_json(j);
  throw ParseError("unknown kind '" + kind + "'");
}

std::string dump_canonical(const Json& j) { return j.dump(); }

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const Json& j) {
  std::uint64_t h = fnv1a64(dump_canonical(j));
  std::ostringstream out;
  out << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xf);
  return out.str();
}

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace hms
