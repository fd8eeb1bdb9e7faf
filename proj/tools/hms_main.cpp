#include "hms/errors.hpp"
#include "hms/evaluate.hpp"
#include "hms/instance.hpp"
#include "hms/io.hpp"
#include "hms/nfold.hpp"
#include "hms/problems.hpp"
#include "hms/reductions.hpp"
#include "hms/solvers.hpp"
#include "hms/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace hms;

std::string family_list() {
  std::string out;
  for (const std::string& f : reduction_families()) {
    if (!out.empty()) out += ", ";
    out += f;
  }
  return out;
}

std::string default_cert_path(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".cert.json";
  return out + ".cert.json";
}

int cmd_reduce(const std::string& family, const std::string& inPath,
               const std::string& outPath, std::string certPath) {
  Json j = read_json_file(inPath);
  if (family == "bp2bbp") {
    BinPackingInstance bp = bin_packing_from_json(j);
    if (auto msg = check_bin_packing(bp)) throw ReductionError(*msg);
    BalancedBinPackingInstance bbp = bp_to_bbp(bp);
    write_text_file(outPath, dump_pretty(to_json(bbp)));
    std::cout << "family bp2bbp\n"
              << "items " << bbp.items.size() << "\n"
              << "bins " << bbp.bins << "\n"
              << "capacity " << int_str(bbp.capacity) << "\n"
              << "wrote " << outPath << "\n";
    return 0;
  }
  if (family == "q2cs") {
    ScheduleInstance q = schedule_from_json(j);
    CuttingStockInstance cs = q_to_cutting_stock(q);
    write_text_file(outPath, dump_pretty(to_json(cs)));
    std::cout << "family q2cs\n"
              << "itemTypes " << cs.itemSizes.size() << "\n"
              << "binTypes " << cs.binSizes.size() << "\n"
              << "budget " << int_str(*cs.budget) << "\n"
              << "wrote " << outPath << "\n";
    return 0;
  }
  ReducedInstance red;
  BalancedBinPackingInstance bbp = balanced_from_json(j);
  if (family == "bbp2qcmax") red = bbp_to_q_cmax(bbp);
  else if (family == "bbp2rcmax") red = bbp_to_r_cmax(bbp);
  else if (family == "bbp2rcmax4") red = bbp_to_r_cmax_4types(bbp);
  else if (family == "bbp2ql2") red = bbp_to_q_l2(bbp);
  else if (family == "bbp2rl2") red = bbp_to_r_l2(bbp);
  else if (family == "bbp2rswc") red = bbp_to_r_sumwc(bbp);
  else throw ParseError("unknown family '" + family + "' (expected one of: " + family_list() + ")");
  if (certPath.empty()) certPath = default_cert_path(outPath);
  write_text_file(outPath, dump_pretty(to_json(red.instance)));
  write_text_file(certPath, dump_pretty(to_json(red.certificate)));
  const ReductionCertificate& cert = red.certificate;
  std::cout << "family " << cert.family << "\n"
            << "bins " << cert.bins << "\n"
            << "A " << int_str(cert.A) << "\n"
            << "B " << int_str(cert.B) << "\n"
            << "aMax " << int_str(cert.aMax) << "\n"
            << "machines " << red.instance.machines << "\n"
            << "jobTypes " << red.instance.typeCount() << "\n"
            << "targetMakespan " << rat_str(cert.targetMakespan) << "\n"
            << "targetValue " << rat_str(cert.targetValue) << "\n"
            << "wrote " << outPath << "\n"
            << "wrote " << certPath << "\n";
  return 0;
}

int cmd_solve(const std::string& inPath, std::string algo,
              const std::string& targetStr, const std::string& outPath,
              std::uint64_t maxStates) {
  AnyInput any = from_json(read_json_file(inPath));
  SolverLimits limits;
  limits.maxStates = maxStates;

  if (std::holds_alternative<CuttingStockInstance>(any)) {
    if (algo == "auto") algo = "cuttingstock";
    if (algo != "cuttingstock")
      throw EvalError("algo '" + algo + "' cannot solve a cutting stock document");
    const CuttingStockInstance& cs = std::get<CuttingStockInstance>(any);
    if (auto msg = check_cutting_stock(cs)) throw EvalError(*msg);
    CuttingStockSolution sol = cuttingstock_solve(cs, limits);
    std::optional<Int> budget = cs.budget;
    if (!targetStr.empty()) {
      Rat t = parse_rat(targetStr);
      if (!rat_is_integer(t)) throw EvalError("cutting stock budget must be an integer");
      budget = rat_floor(t);
    }
    Json out;
    out["cost"] = int_str(sol.cost);
    if (budget) {
      out["budget"] = int_str(*budget);
      out["withinBudget"] = sol.cost <= *budget;
    }
    std::cout << dump_pretty(out);
    if (!outPath.empty()) write_text_file(outPath, dump_pretty(to_json(sol)));
    return budget && sol.cost > *budget ? 3 : 0;
  }

  if (!std::holds_alternative<ScheduleInstance>(any))
    throw EvalError("solve expects a schedule or cuttingstock document");
  const ScheduleInstance& inst = std::get<ScheduleInstance>(any);
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw EvalError(rep.joined());
  if (algo == "auto") algo = "dp";
  if (algo == "cuttingstock")
    throw EvalError("algo 'cuttingstock' cannot solve a schedule document");

  if (!targetStr.empty()) {
    Rat target = parse_rat(targetStr);
    Json out;
    out["objective"] = to_string(inst.objective);
    out["target"] = rat_str(target);
    std::optional<Assignment> witness;
    if (algo == "dp" && inst.objective == Objective::cmax) {
      witness = dp_feasible_cmax(inst, target, limits);
    } else {
      SolveResult r = algo == "dp" ? dp_minimize(inst, limits)
                                   : brute_force_solve(inst, limits);
      out["value"] = rat_str(r.value);
      if (r.value <= target) witness = r.assignment;
    }
    bool feasible = witness.has_value();
    out["feasible"] = feasible;
    std::cout << dump_pretty(out);
    if (feasible && !outPath.empty())
      write_text_file(outPath, dump_pretty(to_json(*witness)));
    return feasible ? 0 : 3;
  }

  SolveResult r =
      algo == "dp" ? dp_minimize(inst, limits) : brute_force_solve(inst, limits);
  Json out;
  out["objective"] = to_string(inst.objective);
  out["value"] = rat_str(r.value);
  std::cout << dump_pretty(out);
  if (!outPath.empty()) write_text_file(outPath, dump_pretty(to_json(r.assignment)));
  return 0;
}

int cmd_eval(const std::string& inPath, const std::string& assignPath) {
  ScheduleInstance inst = schedule_from_json(read_json_file(inPath));
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw EvalError(rep.joined());
  Assignment a = assignment_from_json(read_json_file(assignPath));
  Json out;
  switch (inst.objective) {
    case Objective::cmax:
      out["cmax"] = rat_str(eval_makespan(inst, a));
      break;
    case Objective::l2sq:
      out["l2sq"] = rat_str(eval_l2sq(inst, a));
      break;
    case Objective::sumwc: {
      SumWcBreakdown b = eval_sumwc_closed(inst, a);
      Rat sim = eval_sumwc_sim(inst, a);
      if (sim != b.total)
        throw std::logic_error("internal: closed form and simulation disagree");
      out["sumwc"] = rat_str(b.total);
      out["loadTerm"] = rat_str(b.loadTerm);
      out["gammaLinear"] = rat_str(b.gammaLinear);
      out["gammaQuadr"] = rat_str(b.gammaQuadr);
      out["uniformLinear"] = rat_str(b.uniformLinear);
      break;
    }
  }
  std::cout << dump_pretty(out);
  return 0;
}

int cmd_verify(const std::string& mode, const SweepSpec& spec,
               const std::string& csvPath, const std::string& jsonPath) {
  SweepReport report;
  if (mode == "roundtrip") report = roundtrip_check(spec);
  else if (mode == "target") report = target_value_check(spec);
  else report = oracle_equivalence_sweep(spec);
  if (!csvPath.empty()) write_text_file(csvPath, report_csv(report));
  std::string summary = report_json_summary(report);
  if (!jsonPath.empty()) write_text_file(jsonPath, summary);
  std::cout << summary;
  return report.pass() ? 0 : 3;
}

int cmd_nfold_export(const std::string& inPath, const std::string& targetStr,
                     const std::string& outPath) {
  ScheduleInstance inst = schedule_from_json(read_json_file(inPath));
  ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw EvalError(rep.joined());
  Rat target;
  if (!targetStr.empty()) target = parse_rat(targetStr);
  else if (inst.target) target = *inst.target;
  else throw EvalError("no makespan bound: pass --target or use an instance with a target field");
  NFoldModel model = build_nfold_cmax(inst, target);
  write_text_file(outPath, export_nfold(model));
  std::cout << "blocks " << model.N << "\n"
            << "blockVars " << model.t << "\n"
            << "linkRows " << model.r << "\n"
            << "localRows " << model.s << "\n"
            << "wrote " << outPath << "\n";
  return 0;
}

int cmd_nfold_check(const std::string& modelPath, const std::string& assignPath) {
  NFoldModel model = import_nfold(read_text_file(modelPath));
  Assignment a = assignment_from_json(read_json_file(assignPath));
  std::vector<Int> x;
  for (const auto& row : a.counts)
    for (const Int& v : row) x.push_back(v);
  NFoldCheck chk = check_solution(model, x);
  if (chk.ok) {
    std::cout << "ok\n";
    return 0;
  }
  for (const std::string& v : chk.violations) std::cout << v << "\n";
  return 3;
}

int run_guarded(const std::function<int()>& action) {
  try {
    return action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for high-multiplicity scheduling"};
  app.require_subcommand(1);

  std::string family, inPath, outPath, certPath, assignPath, modelPath;
  std::string algo = "auto";
  std::string targetStr, csvPath, jsonPath;
  std::uint64_t maxStates = 10'000'000;
  SweepSpec spec;
  bool anyCapacity = false;

  CLI::App* reduce = app.add_subcommand("reduce", "apply a hardness reduction to an instance file");
  reduce->add_option("--family", family, "one of: " + family_list())->required();
  reduce->add_option("--in", inPath, "input instance (json)")->required();
  reduce->add_option("--out", outPath, "output instance (json)")->required();
  reduce->add_option("--cert", certPath, "certificate path (default: <out>.cert.json)");

  CLI::App* solve = app.add_subcommand("solve", "minimize an instance, or decide it against a target");
  solve->add_option("--in", inPath, "instance (json): schedule or cuttingstock")->required();
  solve->add_option("--algo", algo, "auto | dp | brute | cuttingstock")
      ->check(CLI::IsMember({"auto", "dp", "brute", "cuttingstock"}));
  solve->add_option("--target", targetStr, "decision mode: feasible iff value <= target (exit 3 when not)");
  solve->add_option("--out", outPath, "write the assignment / cutting stock solution here");
  solve->add_option("--max-states", maxStates, "solver state budget (exit 4 when exceeded)");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a complete assignment exactly");
  eval->add_option("--in", inPath, "schedule instance (json)")->required();
  eval->add_option("--assign", assignPath, "assignment (json)")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification sweep");
  verify->require_subcommand(1);
  CLI::App* vRound = verify->add_subcommand(
      "roundtrip", "reduce, solve both sides independently, compare verdicts");
  CLI::App* vTarget = verify->add_subcommand(
      "target", "planted feasible instances must hit the certificate targets exactly");
  CLI::App* vOracle = verify->add_subcommand(
      "oracle", "dp minimizer against the brute-force oracle on a structured grid");
  for (CLI::App* sub : {vRound, vTarget}) {
    sub->add_option("--family", family, "one of: " + family_list())->required();
    sub->add_flag("--exhaustive", spec.exhaustive, "enumerate every source instance in the bounds");
    sub->add_option("--trials", spec.trials, "seeded random source instances");
    sub->add_option("--bins", spec.bins, "bins of the source instances");
    sub->add_option("--min-items", spec.minItems, "smallest source item count");
    sub->add_option("--max-items", spec.maxItems, "largest source item count");
    sub->add_option("--max-size", spec.maxSize, "item size bound");
    sub->add_flag("--any-capacity", anyCapacity, "also generate non-tight sources (bp2bbp only)");
  }
  vOracle->add_option("--max-machines", spec.maxMachines, "machine count bound");
  vOracle->add_option("--max-types", spec.maxTypes, "job type count bound");
  vOracle->add_option("--max-jobs,--max-n", spec.maxJobs, "total job count bound");
  vOracle->add_option("--max-size", spec.maxSize, "size bound");
  vOracle->add_option("--samples", spec.samplesPerShape, "random instances per sampled shape");
  for (CLI::App* sub : {vRound, vTarget, vOracle}) {
    sub->add_option("--seed", spec.seed, "sweep seed");
    sub->add_option("--csv", csvPath, "write the per-instance CSV here");
    sub->add_option("--json", jsonPath, "write the JSON summary here");
    sub->add_option("--max-states", spec.maxStates, "solver state budget per instance");
  }

  CLI::App* nfold = app.add_subcommand("nfold", "block-structured ILP export and checking");
  nfold->require_subcommand(1);
  CLI::App* nExport = nfold->add_subcommand("export", "write the makespan-decision model as text");
  nExport->add_option("--in", inPath, "schedule instance (json)")->required();
  nExport->add_option("--target", targetStr, "makespan bound (defaults to the instance target)");
  nExport->add_option("--out", outPath, "model output path")->required();
  CLI::App* nCheck = nfold->add_subcommand("check", "check an assignment against an exported model");
  nCheck->add_option("--model", modelPath, "exported model (text)")->required();
  nCheck->add_option("--assign", assignPath, "assignment (json), flattened block by block")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand(reduce))
    return run_guarded([&] { return cmd_reduce(family, inPath, outPath, certPath); });
  if (app.got_subcommand(solve))
    return run_guarded([&] { return cmd_solve(inPath, algo, targetStr, outPath, maxStates); });
  if (app.got_subcommand(eval))
    return run_guarded([&] { return cmd_eval(inPath, assignPath); });
  if (app.got_subcommand(verify)) {
    spec.family = family;
    spec.tightOnly = !anyCapacity;
    std::string mode = verify->got_subcommand(vRound)   ? "roundtrip"
                       : verify->got_subcommand(vTarget) ? "target"
                                                         : "oracle";
    return run_guarded([&] { return cmd_verify(mode, spec, csvPath, jsonPath); });
  }
  if (app.got_subcommand(nfold)) {
    if (nfold->got_subcommand(nExport))
      return run_guarded([&] { return cmd_nfold_export(inPath, targetStr, outPath); });
    return run_guarded([&] { return cmd_nfold_check(modelPath, assignPath); });
  }
  return 2;
}
