#include "hms/errors.hpp"
#include "hms/evaluate.hpp"
#include "hms/instance.hpp"
#include "hms/numbers.hpp"
#include "hms/problems.hpp"

#include <doctest.h>

namespace {

using namespace hms;

ScheduleInstance tiny() {
  ScheduleInstance inst;
  inst.model = MachineModel::identical;
  inst.machines = 2;
  inst.jobs = {JobType{Int(3), {}, Int(2), std::nullopt},
               JobType{Int(5), {}, Int(1), std::nullopt}};
  return inst;
}

}  // namespace

TEST_CASE("make_rat normalizes sign and gcd") {
  CHECK((make_rat(1, -2) == make_rat(-1, 2)));
  CHECK(rat_str(make_rat(1, -2)) == "-1/2");
  CHECK((make_rat(4, 2) == Rat(2)));
  CHECK(rat_str(make_rat(4, 2)) == "2");
  CHECK((make_rat(0, -5) == Rat(0)));
  CHECK(rat_str(make_rat(0, -5)) == "0");
  CHECK((make_rat(-6, -4) == make_rat(3, 2)));
}

TEST_CASE("isqrt_ceil on small values and as a property") {
  CHECK((isqrt_ceil(0) == 0));
  CHECK((isqrt_ceil(1) == 1));
  CHECK((isqrt_ceil(2) == 2));
  CHECK((isqrt_ceil(3) == 2));
  CHECK((isqrt_ceil(4) == 2));
  CHECK((isqrt_ceil(5) == 3));
  CHECK((isqrt_ceil(15) == 4));
  CHECK((isqrt_ceil(16) == 4));
  CHECK((isqrt_ceil(17) == 5));
  for (Int n = 0; n <= 2000; ++n) {
    Int s = isqrt_ceil(n);
    CHECK((s * s >= n));
    if (s > 0) CHECK(((s - 1) * (s - 1) < n));
  }
  // the exact-arithmetic reason this exists: doubles would round this one
  Int big = Int("1000000000000000000000000000000000002");
  Int s = isqrt_ceil(big);
  CHECK((s * s >= big));
  CHECK(((s - 1) * (s - 1) < big));
}

TEST_CASE("rat_floor and integrality") {
  CHECK((rat_floor(make_rat(7, 2)) == 3));
  CHECK((rat_floor(make_rat(-7, 2)) == -4));
  CHECK((rat_floor(Rat(5)) == 5));
  CHECK((rat_floor(make_rat(-6, 3)) == -2));
  CHECK(rat_is_integer(make_rat(6, 3)));
  CHECK(!rat_is_integer(make_rat(1, 3)));
}

TEST_CASE("integer and rational parsing round trips and rejects junk") {
  CHECK((parse_int("0") == 0));
  CHECK((parse_int("-17") == -17));
  CHECK((parse_int(int_str(Int("123456789012345678901234567890"))) ==
         Int("123456789012345678901234567890")));
  CHECK_THROWS_AS(parse_int(""), ParseError);
  CHECK_THROWS_AS(parse_int("+5"), ParseError);
  CHECK_THROWS_AS(parse_int("1.5"), ParseError);
  CHECK_THROWS_AS(parse_int(" 1"), ParseError);
  CHECK_THROWS_AS(parse_int("abc"), ParseError);

  CHECK((parse_rat("3/6") == make_rat(1, 2)));
  CHECK((parse_rat("-3/6") == make_rat(-1, 2)));
  CHECK((parse_rat("7") == Rat(7)));
  CHECK(rat_str(parse_rat("4/6")) == "2/3");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/"), ParseError);
  CHECK_THROWS_AS(parse_rat("/2"), ParseError);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("rng streams are deterministic and in range") {
  Rng a(123), b(123);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
  Rng r(7);
  for (int i = 0; i < 200; ++i) {
    CHECK(r.below(10) < 10);
    long long v = r.range(-3, 4);
    CHECK(v >= -3);
    CHECK(v <= 4);
  }
  CHECK(Rng(1).next() != Rng(2).next());
}

TEST_CASE("validate_instance accepts the small identical instance") {
  CHECK(validate_instance(tiny()).ok());
}

TEST_CASE("validate_instance flags structural defects") {
  ScheduleInstance inst = tiny();
  inst.machines = 0;
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.jobs.clear();
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.jobs[0].size = Int(0);
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.jobs[0].multiplicity = Int(-1);
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.model = MachineModel::uniform;
  inst.speeds = {Rat(1)};  // one speed, two machines
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.model = MachineModel::uniform;
  inst.speeds = {Rat(1), Rat(0)};
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.objective = Objective::sumwc;  // weights missing
  CHECK(!validate_instance(inst).ok());

  inst = tiny();
  inst.model = MachineModel::unrelated;
  inst.jobs[0].size.reset();
  inst.jobs[0].sizes = {MachineSize::of(Int(3))};  // one entry, two machines
  inst.jobs[1].size.reset();
  inst.jobs[1].sizes = {MachineSize::of(Int(5)), MachineSize::of(Int(5))};
  CHECK(!validate_instance(inst).ok());

  inst.jobs[0].sizes = {MachineSize::inf(), MachineSize::inf()};  // unrunnable type
  CHECK(!validate_instance(inst).ok());
}

TEST_CASE("size_on and speed_of cover the three models") {
  ScheduleInstance inst = tiny();
  CHECK((size_on(inst, 0, 1).value == 5));
  CHECK((speed_of(inst, 1) == Rat(1)));

  inst.model = MachineModel::uniform;
  inst.speeds = {Rat(1), make_rat(3, 2)};
  CHECK((speed_of(inst, 1) == make_rat(3, 2)));

  ScheduleInstance un;
  un.model = MachineModel::unrelated;
  un.machines = 2;
  un.jobs = {JobType{std::nullopt, {MachineSize::of(Int(4)), MachineSize::inf()}, Int(1),
                     std::nullopt}};
  CHECK((size_on(un, 0, 0).value == 4));
  CHECK(size_on(un, 1, 0).infinite);
}

TEST_CASE("assignment shape, completeness and partial order") {
  ScheduleInstance inst = tiny();
  Assignment a = Assignment::zero(2, 2);
  CHECK(assignment_shape_ok(inst, a));
  CHECK(is_partial(inst, a));
  CHECK(!is_complete(inst, a));

  a.counts = {{2, 0}, {0, 1}};
  CHECK(is_complete(inst, a));
  CHECK(is_partial(inst, a));

  a.counts = {{2, 1}, {1, 0}};  // type 0 oversubscribed
  CHECK(!is_complete(inst, a));
  CHECK(!is_partial(inst, a));

  a.counts = {{2, 0}};
  CHECK(!assignment_shape_ok(inst, a));
  a.counts = {{2, 0}, {0, -1}};
  CHECK(!assignment_shape_ok(inst, a));
}

TEST_CASE("compute_loads scales by machine speed") {
  ScheduleInstance inst = tiny();
  inst.model = MachineModel::uniform;
  inst.speeds = {Rat(1), Rat(2)};
  Assignment a;
  a.counts = {{2, 0}, {0, 1}};
  LoadVector lv = compute_loads(inst, a);
  CHECK((lv.unscaled[0] == 6));
  CHECK((lv.unscaled[1] == 5));
  CHECK((lv.scaled[0] == Rat(6)));
  CHECK((lv.scaled[1] == make_rat(5, 2)));
  CHECK((eval_makespan(inst, a) == Rat(6)));
  CHECK((eval_l2sq(inst, a) == Rat(36) + make_rat(25, 4)));
}

TEST_CASE("evaluators reject bad assignments") {
  ScheduleInstance inst = tiny();
  Assignment a;
  a.counts = {{1, 0}, {0, 1}};  // one type-0 job missing
  CHECK_THROWS_AS(eval_makespan(inst, a), EvalError);

  ScheduleInstance un;
  un.model = MachineModel::unrelated;
  un.machines = 2;
  un.jobs = {JobType{std::nullopt, {MachineSize::of(Int(4)), MachineSize::inf()}, Int(1),
                     std::nullopt}};
  Assignment b;
  b.counts = {{0}, {1}};  // job on the machine that cannot run it
  CHECK_THROWS_AS(compute_loads(un, b), EvalError);
}

TEST_CASE("sumwc simulation and closed form agree on a fixed instance") {
  // Two machines, a machine-dependent heavy type plus two plain types.
  ScheduleInstance inst;
  inst.model = MachineModel::unrelated;
  inst.machines = 2;
  inst.objective = Objective::sumwc;
  inst.jobs = {
      JobType{std::nullopt, {MachineSize::of(Int(9)), MachineSize::of(Int(8))}, Int(2), Int(10)},
      JobType{std::nullopt, {MachineSize::of(Int(3)), MachineSize::of(Int(3))}, Int(3), Int(3)},
      JobType{std::nullopt, {MachineSize::of(Int(2)), MachineSize::inf()}, Int(2), Int(1)},
  };
  Assignment a;
  a.counts = {{1, 1, 2}, {1, 2, 0}};
  Rat sim = eval_sumwc_sim(inst, a);
  SumWcBreakdown closed = eval_sumwc_closed(inst, a);
  CHECK((sim == closed.total));
  CHECK((closed.total ==
         closed.loadTerm + closed.gammaLinear + closed.gammaQuadr + closed.uniformLinear));
  // Machine 0 runs 9,3,2,2 with weights 10,3,1,1; Smith order is the job
  // order 9 (10/9), 3 (1), 2,2 (1/2): completion times 9,12,14,16.
  // Machine 1 runs 8 then two 3s: completions 8,11,14.
  Rat byHand = Rat(10 * 9 + 3 * 12 + 14 + 16) + Rat(10 * 8 + 3 * 11 + 3 * 14);
  CHECK((sim == byHand));
}

TEST_CASE("sumwc equivalence holds on seeded random assignments") {
  Rng rng(2026);
  for (int trial = 0; trial < 60; ++trial) {
    ScheduleInstance inst;
    int pick = static_cast<int>(rng.below(3));
    inst.model = pick == 0   ? MachineModel::identical
                 : pick == 1 ? MachineModel::uniform
                             : MachineModel::unrelated;
    inst.machines = static_cast<int>(rng.range(1, 3));
    inst.objective = Objective::sumwc;
    if (inst.model == MachineModel::uniform)
      for (int i = 0; i < inst.machines; ++i)
        inst.speeds.push_back(make_rat(rng.range(1, 5), rng.range(1, 3)));
    int types = static_cast<int>(rng.range(1, 3));
    for (int t = 0; t < types; ++t) {
      JobType jt;
      jt.multiplicity = rng.range(0, 3);
      jt.weight = Int(rng.range(0, 6));
      if (inst.model == MachineModel::unrelated) {
        for (int i = 0; i < inst.machines; ++i)
          jt.sizes.push_back(MachineSize::of(Int(rng.range(1, 7))));
      } else {
        jt.size = Int(rng.range(1, 7));
      }
      inst.jobs.push_back(jt);
    }
    REQUIRE(validate_instance(inst).ok());
    Assignment a = Assignment::zero(inst.machines, types);
    for (int t = 0; t < types; ++t)
      for (Int j = 0; j < inst.jobs[t].multiplicity; ++j)
        a.counts[rng.below(inst.machines)][t] += 1;
    Rat sim = eval_sumwc_sim(inst, a);
    SumWcBreakdown closed = eval_sumwc_closed(inst, a);
    CHECK((sim == closed.total));
    CHECK((closed.total ==
           closed.loadTerm + closed.gammaLinear + closed.gammaQuadr + closed.uniformLinear));
  }
}

TEST_CASE("bin packing validity checks") {
  BinPackingInstance bp{{Int(2), Int(2), Int(3), Int(3)}, 2, Int(5)};
  CHECK(!check_bin_packing(bp));
  CHECK(bp.tight());
  bp.capacity = 6;
  CHECK(!bp.tight());
  bp.bins = 0;
  CHECK(check_bin_packing(bp).has_value());

  BalancedBinPackingInstance bbp{{Int(1), Int(1), Int(2), Int(2)}, 2, Int(3)};
  CHECK(!check_balanced(bbp));
  CHECK(bbp.tight());
  CHECK(bbp.countDivisible());
  CHECK(bbp.itemsPerBin() == 2);
  bbp.items.push_back(Int(2));
  CHECK(!bbp.countDivisible());
}

TEST_CASE("packing_valid checks loads, balance and indices") {
  std::vector<Int> items = {Int(1), Int(1), Int(2), Int(2)};
  CHECK(packing_valid(items, 2, Int(3), true, {0, 1, 1, 0}));
  CHECK(!packing_valid(items, 2, Int(3), true, {0, 0, 1, 1}));   // loads 2 and 4
  CHECK(!packing_valid(items, 2, Int(3), true, {0, 1, 1}));      // wrong length
  CHECK(!packing_valid(items, 2, Int(3), true, {0, 1, 1, 2}));   // bin out of range
  CHECK(!packing_valid(items, 2, Int(4), true, {0, 0, 0, 1}));   // unbalanced counts
  CHECK(packing_valid(items, 2, Int(4), false, {0, 0, 0, 1}));   // ... fine unbalanced
}

TEST_CASE("brute_force_packing agrees with hand-solved cases") {
  std::vector<Int> feasible = {Int(1), Int(1), Int(2), Int(2)};
  auto p = brute_force_packing(feasible, 2, Int(3), true);
  REQUIRE(p.has_value());
  CHECK(packing_valid(feasible, 2, Int(3), true, *p));

  // Balanced pairs always put the 3 next to a 1: load 4 > 3.
  std::vector<Int> blocked = {Int(3), Int(1), Int(1), Int(1)};
  CHECK(!brute_force_packing(blocked, 2, Int(3), true).has_value());
  // Unbalanced, the 3 can sit alone.
  CHECK(brute_force_packing(blocked, 2, Int(3), false).has_value());

  std::vector<Int> odd = {Int(2), Int(2), Int(2)};
  CHECK(!brute_force_packing(odd, 2, Int(3), true).has_value());  // 3 items, 2 bins
}
