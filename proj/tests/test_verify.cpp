#include "hms/errors.hpp"
#include "hms/problems.hpp"
#include "hms/verify.hpp"

#include <doctest.h>

#include <stdexcept>

namespace {

using namespace hms;

SweepSpec base(const std::string& family) {
  SweepSpec spec;
  spec.family = family;
  spec.seed = 20260817;
  return spec;
}

}  // namespace

TEST_CASE("roundtrip sweeps pass on exhaustive small scopes") {
  for (const char* family : {"bp2bbp", "bbp2qcmax", "bbp2rcmax", "bbp2rcmax4"}) {
    CAPTURE(family);
    SweepSpec spec = base(family);
    spec.exhaustive = true;
    spec.minItems = 2;
    spec.maxItems = 4;
    spec.maxSize = 3;
    SweepReport report = roundtrip_check(spec);
    CHECK(report.pass());
    CHECK(report.instances > 0);
    CHECK(report.failed == 0);
    CHECK(report.skipped == 0);
    CHECK(report.instances == static_cast<long long>(report.records.size()));
  }
}

TEST_CASE("the cutting stock chain round-trips without skips at toy size") {
  SweepSpec spec = base("q2cs");
  spec.exhaustive = true;
  spec.minItems = 2;
  spec.maxItems = 4;
  spec.maxSize = 2;
  spec.maxStates = 30'000'000;  // the four-item sources need more walk nodes
  SweepReport report = roundtrip_check(spec);
  CHECK(report.pass());
  CHECK(report.instances > 0);
  CHECK(report.skipped == 0);
}

TEST_CASE("random trials respect the requested count and bounds") {
  SweepSpec spec = base("bbp2qcmax");
  spec.trials = 6;
  spec.minItems = 4;
  spec.maxItems = 4;
  spec.maxSize = 6;
  SweepReport report = roundtrip_check(spec);
  CHECK(report.pass());
  CHECK(report.instances == 6);
}

TEST_CASE("the exhaustive item-count window is honored") {
  SweepSpec spec = base("bbp2qcmax");
  spec.exhaustive = true;
  spec.minItems = 4;
  spec.maxItems = 4;
  spec.maxSize = 2;
  SweepReport report = roundtrip_check(spec);
  // multisets of four sizes from {1,2} with even total: 1111, 1122, 2222
  CHECK(report.instances == 3);
  CHECK(report.pass());
}

TEST_CASE("roundtrip rejects families it cannot decide") {
  CHECK_THROWS_AS(roundtrip_check(base("bbp2ql2")), ReductionError);
  CHECK_THROWS_AS(roundtrip_check(base("bbp2rswc")), ReductionError);
  CHECK_THROWS_AS(roundtrip_check(base("nonsense")), ReductionError);
  SweepSpec four = base("bbp2rcmax4");
  four.bins = 3;
  four.exhaustive = true;
  CHECK_THROWS_AS(roundtrip_check(four), ReductionError);
}

TEST_CASE("target sweeps pass for every reduced family") {
  for (const char* family :
       {"bbp2qcmax", "bbp2rcmax", "bbp2rcmax4", "bbp2ql2", "bbp2rl2", "bbp2rswc"}) {
    CAPTURE(family);
    SweepSpec spec = base(family);
    spec.trials = 3;
    spec.maxSize = 6;
    SweepReport report = target_value_check(spec);
    CHECK(report.pass());
    CHECK(report.instances == 3);
    CHECK(report.skipped == 0);
  }
}

TEST_CASE("exhaustive target sweeps keep only solvable sources") {
  SweepSpec spec = base("bbp2rswc");
  spec.exhaustive = true;
  spec.minItems = 2;
  spec.maxItems = 4;
  spec.maxSize = 3;
  SweepReport report = target_value_check(spec);
  CHECK(report.pass());
  CHECK(report.instances > 0);
}

TEST_CASE("the oracle grid passes at desk scale") {
  SweepSpec spec = base("");
  spec.maxMachines = 2;
  spec.maxTypes = 2;
  spec.maxJobs = 4;
  spec.maxSize = 3;
  spec.samplesPerShape = 2;
  SweepReport report = oracle_equivalence_sweep(spec);
  CHECK(report.pass());
  CHECK(report.instances > 0);
  CHECK(report.skipped == 0);
}

TEST_CASE("sweep reports are deterministic, timing aside") {
  SweepSpec spec = base("bbp2rcmax");
  spec.trials = 4;
  spec.maxSize = 5;
  SweepReport a = roundtrip_check(spec);
  SweepReport b = roundtrip_check(spec);
  CHECK(report_json_summary(a) == report_json_summary(b));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].digest == b.records[i].digest);
    CHECK(a.records[i].verdict == b.records[i].verdict);
  }

  SweepSpec other = spec;
  other.seed = 1;
  SweepReport c = roundtrip_check(other);
  CHECK(report_json_summary(a) != report_json_summary(c));
}

TEST_CASE("csv reports carry one line per instance plus a header") {
  SweepSpec spec = base("bbp2qcmax");
  spec.trials = 3;
  SweepReport report = roundtrip_check(spec);
  std::string csv = report_csv(report);
  CHECK(csv.rfind("digest,family,source_feasible,reduced_feasible,verdict,wall_ms\n", 0) == 0);
  long long lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == report.instances + 1);
}

TEST_CASE("an empty sweep passes vacuously") {
  SweepSpec spec = base("bbp2qcmax");
  SweepReport report = roundtrip_check(spec);
  CHECK(report.pass());
  CHECK(report.instances == 0);
  CHECK(report.records.empty());
}

TEST_CASE("planted packings are valid, tight and within bounds") {
  Rng rng(5);
  for (int bins = 2; bins <= 3; ++bins)
    for (int perBin = 1; perBin <= 3; ++perBin)
      for (int cap = perBin; cap <= perBin * 4; ++cap) {
        PlantedInstance planted = plant_packing(bins, perBin, Int(cap), Int(4), rng);
        CHECK(planted.bbp.bins == bins);
        CHECK(planted.bbp.items.size() == static_cast<std::size_t>(bins * perBin));
        CHECK((planted.bbp.capacity == cap));
        CHECK(planted.bbp.tight());
        CHECK(packing_valid(planted.bbp.items, bins, Int(cap), true, planted.packing));
        for (const Int& item : planted.bbp.items) {
          CHECK((item >= 1));
          CHECK((item <= 4));
        }
      }
  CHECK_THROWS_AS(plant_packing(2, 2, Int(1), Int(4), rng), std::invalid_argument);
  CHECK_THROWS_AS(plant_packing(2, 2, Int(9), Int(4), rng), std::invalid_argument);
}
