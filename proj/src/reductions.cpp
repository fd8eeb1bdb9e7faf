#include "hms/reductions.hpp"

#include "hms/errors.hpp"
#include "hms/evaluate.hpp"

#include <algorithm>

namespace hms {

namespace {

void require_reducible(const BalancedBinPackingInstance& bbp) {
  if (auto err = check_balanced(bbp)) throw ReductionError(*err);
  if (bbp.items.empty()) throw ReductionError("at least one item required");
  if (!bbp.tight()) throw ReductionError("instance is not tight");
}

struct Derived {
  int m, k;
  Int A, B, aMax, T;
};

Derived derive(const BalancedBinPackingInstance& bbp) {
  Derived d;
  d.m = static_cast<int>(bbp.items.size());
  d.k = bbp.bins;
  d.B = bbp.capacity;
  d.A = Int(d.k) * d.B;
  d.aMax = *std::max_element(bbp.items.begin(), bbp.items.end());
  d.T = Int(3) * d.k * d.A * d.A * d.A;
  return d;
}

// alpha1_1, alpha0_1, ..., alpha1_k, alpha0_k, beta_1, ..., beta_k
std::vector<std::string> alpha_beta_labels(int k) {
  std::vector<std::string> labels;
  for (int j = 1; j <= k; ++j) {
    labels.push_back("alpha1_" + std::to_string(j));
    labels.push_back("alpha0_" + std::to_string(j));
  }
  for (int j = 1; j <= k; ++j) labels.push_back("beta_" + std::to_string(j));
  return labels;
}

// Sizes and multiplicities shared by the uniform and unrelated families.
struct AlphaBeta {
  std::vector<Int> sizes;
  std::vector<Int> mults;
};

AlphaBeta alpha_beta_types(const Derived& d) {
  AlphaBeta ab;
  Int A2 = d.A * d.A, A3 = A2 * d.A;
  for (int j = 1; j <= d.k; ++j) {
    Int base = Int(d.k) * A2 + d.A * (d.k - j);
    ab.sizes.push_back(base + 1);  // alpha1_j
    ab.mults.push_back(d.B);
    ab.sizes.push_back(base);  // alpha0_j
    ab.mults.push_back(Int(d.m - 1) * d.B);
  }
  for (int j = 1; j <= d.k; ++j) {
    ab.sizes.push_back(Int(2) * d.k * A3 - A2 * (d.k - j));  // beta_j
    ab.mults.push_back(Int(d.m / d.k));
  }
  return ab;
}

ReductionCertificate base_certificate(const BalancedBinPackingInstance& bbp, const Derived& d,
                                      std::string family) {
  ReductionCertificate cert;
  cert.family = std::move(family);
  cert.bins = d.k;
  cert.A = d.A;
  cert.B = d.B;
  cert.aMax = d.aMax;
  cert.items = bbp.items;
  return cert;
}

// Machine-independent rows (p_t, 0) for the alpha/beta types plus one
// (gammaBase, -1) row; D = (1 ... 1 ; a_1 ... a_m).
void attach_rank2(ReductionCertificate& cert, const std::vector<Int>& flatSizes,
                  const Int& gammaBase) {
  std::vector<std::vector<Int>> C;
  for (const Int& p : flatSizes) C.push_back({p, Int(0)});
  C.push_back({gammaBase, Int(-1)});
  std::vector<std::vector<Int>> D(2);
  for (const Int& a : cert.items) {
    D[0].push_back(Int(1));
    D[1].push_back(a);
  }
  cert.rank2C = std::move(C);
  cert.rank2D = std::move(D);
}

// The unrelated-machines instance shared by bbp_to_r_cmax, bbp_to_r_l2 and
// bbp_to_r_sumwc: machine-independent alpha/beta types plus a per-machine
// gamma of size 4kA^3 - a_i, every machine load exactly 7kA^3 when perfect.
ReducedInstance r_cmax_core(const BalancedBinPackingInstance& bbp) {
  require_reducible(bbp);
  Derived d = derive(bbp);
  AlphaBeta ab = alpha_beta_types(d);
  Int gammaBase = Int(4) * d.k * d.A * d.A * d.A;
  Int targetR = Int(7) * d.k * d.A * d.A * d.A;

  ScheduleInstance inst;
  inst.model = MachineModel::unrelated;
  inst.machines = d.m;
  inst.objective = Objective::cmax;
  inst.target = Rat(targetR);
  for (std::size_t t = 0; t < ab.sizes.size(); ++t) {
    JobType jt;
    jt.sizes.assign(d.m, MachineSize::of(ab.sizes[t]));
    jt.multiplicity = ab.mults[t];
    inst.jobs.push_back(std::move(jt));
  }
  JobType gamma;
  for (const Int& a : bbp.items) gamma.sizes.push_back(MachineSize::of(gammaBase - a));
  gamma.multiplicity = d.m;
  inst.jobs.push_back(std::move(gamma));

  ReductionCertificate cert = base_certificate(bbp, d, "bbp2rcmax");
  cert.jobTypeLabels = alpha_beta_labels(d.k);
  cert.jobTypeLabels.push_back("gamma");
  cert.targetMakespan = Rat(targetR);
  cert.targetValue = Rat(targetR);
  attach_rank2(cert, ab.sizes, gammaBase);
  return {std::move(inst), std::move(cert)};
}

}  // namespace

BalancedBinPackingInstance bp_to_bbp(const BinPackingInstance& bp) {
  if (auto err = check_bin_packing(bp)) throw ReductionError(*err);
  BalancedBinPackingInstance out;
  out.bins = bp.bins;
  Int n(bp.items.size());
  out.capacity = bp.capacity + n;
  for (const Int& a : bp.items) out.items.push_back(a + 1);
  // n*(k-1) unit fillers bring every bin to exactly n items
  Int fillers = n * (bp.bins - 1);
  for (Int i = 0; i < fillers; ++i) out.items.push_back(Int(1));
  return out;
}

ReducedInstance bbp_to_q_cmax(const BalancedBinPackingInstance& bbp) {
  require_reducible(bbp);
  Derived d = derive(bbp);
  AlphaBeta ab = alpha_beta_types(d);

  ScheduleInstance inst;
  inst.model = MachineModel::uniform;
  inst.machines = d.m;
  inst.objective = Objective::cmax;
  inst.target = Rat(d.T);
  for (const Int& a : bbp.items) inst.speeds.push_back(make_rat(d.T + a, d.T));
  for (std::size_t t = 0; t < ab.sizes.size(); ++t) {
    JobType jt;
    jt.size = ab.sizes[t];
    jt.multiplicity = ab.mults[t];
    inst.jobs.push_back(std::move(jt));
  }

  ReductionCertificate cert = base_certificate(bbp, d, "bbp2qcmax");
  cert.jobTypeLabels = alpha_beta_labels(d.k);
  cert.targetMakespan = Rat(d.T);
  cert.targetValue = Rat(d.T);
  return {std::move(inst), std::move(cert)};
}

ReducedInstance bbp_to_r_cmax(const BalancedBinPackingInstance& bbp) { return r_cmax_core(bbp); }

ReducedInstance bbp_to_r_cmax_4types(const BalancedBinPackingInstance& bbp) {
  require_reducible(bbp);
  if (bbp.bins != 2) throw ReductionError("the four-type family needs exactly two bins");
  Derived d = derive(bbp);
  Int A2 = d.A * d.A, A3 = A2 * d.A, A4 = A3 * d.A;
  int m = d.m;

  // alpha1_1, alpha0_1, alpha1_2, beta_2; per-machine offsets by a_i
  std::vector<std::vector<Int>> sizes(4, std::vector<Int>());
  for (const Int& a : bbp.items) {
    sizes[0].push_back(A3 + d.A - a);
    sizes[1].push_back(A3 - a);
    sizes[2].push_back(A2);
    sizes[3].push_back(A4 - a * A2);
  }
  Int half = d.A / 2;
  std::vector<Int> mults = {half, Int(m / 2) * d.A - half, half, Int(m / 2)};

  ScheduleInstance inst;
  inst.model = MachineModel::unrelated;
  inst.machines = m;
  inst.objective = Objective::cmax;
  inst.target = Rat(A4);
  for (int t = 0; t < 4; ++t) {
    JobType jt;
    for (const Int& p : sizes[t]) jt.sizes.push_back(MachineSize::of(p));
    jt.multiplicity = mults[t];
    inst.jobs.push_back(std::move(jt));
  }

  ReductionCertificate cert = base_certificate(bbp, d, "bbp2rcmax4");
  cert.jobTypeLabels = {"alpha1_1", "alpha0_1", "alpha1_2", "beta_2"};
  cert.targetMakespan = Rat(A4);
  cert.targetValue = Rat(A4);
  std::vector<std::vector<Int>> C = {{A3 + d.A, Int(-1)},
                                     {A3, Int(-1)},
                                     {A2, Int(0)},
                                     {A4, -A2}};
  std::vector<std::vector<Int>> D(2);
  for (const Int& a : bbp.items) {
    D[0].push_back(Int(1));
    D[1].push_back(a);
  }
  cert.rank2C = std::move(C);
  cert.rank2D = std::move(D);
  return {std::move(inst), std::move(cert)};
}

ReducedInstance bbp_to_q_l2(const BalancedBinPackingInstance& bbp) {
  ReducedInstance red = bbp_to_q_cmax(bbp);
  Derived d = derive(bbp);

  // Integer speeds: least s_i with s_i^2 >= (T + aMax)^2 (T + a_i). The
  // strict upper side s_i^2 < (T + aMax)^2 (T + a_i + 1) makes distinct
  // items produce distinct speeds.
  red.instance.speeds.clear();
  Rat target = 0;
  Rat maxLoad = 0;
  for (const Int& a : bbp.items) {
    Int cap = d.T + a;
    Int s = isqrt_ceil((d.T + d.aMax) * (d.T + d.aMax) * cap);
    red.instance.speeds.push_back(Rat(s));
    Rat load = make_rat(cap, s);
    target += load * load;
    maxLoad = std::max(maxLoad, load);
  }
  red.instance.objective = Objective::l2sq;
  red.instance.target = target;
  red.certificate.family = "bbp2ql2";
  red.certificate.targetMakespan = maxLoad;
  red.certificate.targetValue = target;
  return red;
}

ReducedInstance bbp_to_r_l2(const BalancedBinPackingInstance& bbp) {
  ReducedInstance red = r_cmax_core(bbp);
  Rat T = red.certificate.targetMakespan;
  red.instance.objective = Objective::l2sq;
  Rat target = Rat(red.instance.machines) * T * T;
  red.instance.target = target;
  red.certificate.family = "bbp2rl2";
  red.certificate.targetValue = target;
  return red;
}

ReducedInstance bbp_to_r_sumwc(const BalancedBinPackingInstance& bbp) {
  ReducedInstance red = r_cmax_core(bbp);
  Derived d = derive(bbp);
  Int gammaBase = Int(4) * d.k * d.A * d.A * d.A;
  int types = red.instance.typeCount();

  // alpha/beta weights equal their sizes (Smith ratio exactly 1); gamma
  // weights exceed the gamma sizes by a_i, putting gamma first everywhere.
  Rat half(1, 2);
  Rat gammaLinear = 0, gammaQuadr = 0, uniformLinear = 0;
  for (int t = 0; t < types - 1; ++t) {
    JobType& jt = red.instance.jobs[t];
    Int p = jt.sizes.front().value;
    jt.weight = p;
    uniformLinear += half * Rat(jt.multiplicity) * Rat(p) * Rat(p);
  }
  JobType& gamma = red.instance.jobs[types - 1];
  gamma.weight = gammaBase;
  for (int i = 0; i < red.instance.machines; ++i) {
    Rat pg(gamma.sizes[i].value);
    gammaLinear += half * pg * Rat(gammaBase);
    gammaQuadr += half * pg * Rat(bbp.items[i]);
  }
  Rat T = red.certificate.targetMakespan;
  Rat target = half * Rat(red.instance.machines) * T * T + uniformLinear + gammaLinear + gammaQuadr;

  red.instance.objective = Objective::sumwc;
  red.instance.target = target;
  red.certificate.family = "bbp2rswc";
  red.certificate.targetValue = target;
  return red;
}

CuttingStockInstance q_to_cutting_stock(const ScheduleInstance& q) {
  if (q.model != MachineModel::uniform)
    throw ReductionError("cutting stock reduction needs a uniform instance");
  if (!q.target) throw ReductionError("cutting stock reduction needs a target");
  if (q.machines < 1) throw ReductionError("at least one machine required");
  int m = q.machines;

  std::vector<Int> caps;
  Int capSum = 0;
  for (int i = 0; i < m; ++i) {
    Rat c = *q.target * q.speeds.at(i);
    if (!rat_is_integer(c) || c < 0)
      throw ReductionError("machine capacities must be nonnegative integers");
    caps.push_back(numerator(c));
    capSum += numerator(c);
  }

  // Radix separation: eta tokens force one bin per machine, nu tokens force
  // distinct machines, the low coordinate carries the actual loads.
  Int K2 = capSum + 1;
  Int K1 = K2 << m;

  CuttingStockInstance cs;
  for (const JobType& jt : q.jobs) {
    if (!jt.size) throw ReductionError("uniform instances need scalar sizes");
    cs.itemSizes.push_back(*jt.size);
    cs.itemCounts.push_back(jt.multiplicity);
  }
  cs.itemSizes.push_back(K1);
  cs.itemCounts.push_back(Int(m));
  cs.itemSizes.push_back(K2);
  cs.itemCounts.push_back((Int(1) << m) - 1);

  Int pow2 = 1;
  for (int i = 0; i < m; ++i) {
    Int size = K1 + pow2 * K2 + caps[i];
    cs.binSizes.push_back(size);
    cs.binCosts.push_back(size);
    pow2 <<= 1;
  }
  cs.budget = Int(m) * K1 + ((Int(1) << m) - 1) * K2 + capSum;
  return cs;
}

namespace {

struct FamilyShape {
  bool hasBetaPerBin = false;  // one beta_j selecting the machine's bin
  bool hasGamma = false;
  bool fourType = false;
};

FamilyShape shape_of(const std::string& family) {
  if (family == "bbp2qcmax" || family == "bbp2ql2") return {true, false, false};
  if (family == "bbp2rcmax" || family == "bbp2rl2" || family == "bbp2rswc")
    return {true, true, false};
  if (family == "bbp2rcmax4") return {false, false, true};
  throw ReductionError("unknown reduction family: " + family);
}

}  // namespace

Assignment perfect_schedule(const ReductionCertificate& cert, const Packing& packing) {
  FamilyShape shape = shape_of(cert.family);
  int m = static_cast<int>(cert.items.size());
  int k = cert.bins;
  if (!packing_valid(cert.items, k, cert.B, true, packing))
    throw ReductionError("not a valid balanced packing of the source items");

  int types = static_cast<int>(cert.jobTypeLabels.size());
  Assignment a = Assignment::zero(m, types);
  for (int i = 0; i < m; ++i) {
    int j = packing[i];
    const Int& ai = cert.items[i];
    if (shape.fourType) {
      if (j == 0) {
        a.counts[i][0] = ai;            // alpha1_1
        a.counts[i][1] = cert.A - ai;   // alpha0_1
      } else {
        a.counts[i][2] = ai;  // alpha1_2
        a.counts[i][3] = 1;   // beta_2
      }
    } else {
      a.counts[i][2 * j] = ai;               // alpha1_{j+1}
      a.counts[i][2 * j + 1] = cert.A - ai;  // alpha0_{j+1}
      a.counts[i][2 * k + j] = 1;            // beta_{j+1}
      if (shape.hasGamma) a.counts[i][3 * k] = 1;
    }
  }
  return a;
}

PackingRecovery packing_from_perfect_schedule(const ReductionCertificate& cert,
                                              const Assignment& a) {
  FamilyShape shape = shape_of(cert.family);
  int m = static_cast<int>(cert.items.size());
  int k = cert.bins;
  int types = static_cast<int>(cert.jobTypeLabels.size());

  if (static_cast<int>(a.counts.size()) != m)
    return {std::nullopt, "machine count mismatch"};
  Packing packing(m, 0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(a.counts[i].size()) != types)
      return {std::nullopt, "job type count mismatch on machine " + std::to_string(i)};
    const auto& row = a.counts[i];
    const Int& ai = cert.items[i];
    std::vector<Int> expect(types, Int(0));
    int bin;
    if (shape.fourType) {
      if (row[3] == 1) {
        bin = 1;
        expect[2] = ai;
        expect[3] = 1;
      } else if (row[3] == 0) {
        bin = 0;
        expect[0] = ai;
        expect[1] = cert.A - ai;
      } else {
        return {std::nullopt, "machine " + std::to_string(i) + " holds multiple beta jobs"};
      }
    } else {
      bin = -1;
      for (int j = 0; j < k; ++j) {
        if (row[2 * k + j] == 0) continue;
        if (row[2 * k + j] != 1 || bin >= 0)
          return {std::nullopt, "machine " + std::to_string(i) + " does not hold exactly one beta"};
        bin = j;
      }
      if (bin < 0)
        return {std::nullopt, "machine " + std::to_string(i) + " holds no beta job"};
      expect[2 * bin] = ai;
      expect[2 * bin + 1] = cert.A - ai;
      expect[2 * k + bin] = 1;
      if (shape.hasGamma) expect[3 * k] = 1;
    }
    for (int t = 0; t < types; ++t)
      if (row[t] != expect[t])
        return {std::nullopt, "machine " + std::to_string(i) + " deviates from the perfect shape on type " +
                                  std::to_string(t)};
    packing[i] = bin;
  }
  if (!packing_valid(cert.items, k, cert.B, true, packing))
    return {std::nullopt, "recovered packing is not a valid balanced packing"};
  return {std::move(packing), ""};
}

}  // namespace hms
