#include "hms/nfold.hpp"

#include "hms/errors.hpp"

#include <sstream>

namespace hms {

NFoldModel build_nfold_cmax(const ScheduleInstance& inst, const Rat& T) {
  int k = inst.typeCount(), m = inst.machines;
  NFoldModel model;
  model.r = k;
  model.s = 1;
  model.t = k;
  model.N = m;

  std::vector<std::vector<Int>> identity(k, std::vector<Int>(k, Int(0)));
  for (int t = 0; t < k; ++t) identity[t][t] = 1;

  for (int i = 0; i < m; ++i) {
    model.E1.push_back(identity);
    std::vector<Int> row(k, Int(0));
    for (int t = 0; t < k; ++t) {
      MachineSize ms = size_on(inst, i, t);
      if (!ms.infinite) row[t] = ms.value;
    }
    model.E2.push_back({row});
  }

  for (const JobType& jt : inst.jobs) model.rhs.push_back(jt.multiplicity);
  for (int i = 0; i < m; ++i) model.rhs.push_back(rat_floor(T * speed_of(inst, i)));
  model.sense.assign(k, RowSense::eq);
  model.sense.insert(model.sense.end(), m, RowSense::le);

  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < k; ++t) {
      model.lb.push_back(Int(0));
      bool unusable = size_on(inst, i, t).infinite;
      model.ub.push_back(unusable ? Int(0) : inst.jobs[t].multiplicity);
    }
  }

  if (inst.objective != Objective::cmax) {
    model.objective =
        inst.objective == Objective::l2sq ? NFoldObjective::l2sq : NFoldObjective::sumwc;
    for (int i = 0; i < m; ++i) model.zdef.push_back(model.E2[i][0]);
  }
  return model;
}

NFoldCheck check_solution(const NFoldModel& model, const std::vector<Int>& x) {
  NFoldCheck res;
  auto fail = [&](const std::string& msg) {
    res.ok = false;
    res.violations.push_back(msg);
  };

  if (static_cast<long>(x.size()) != model.N * model.t) {
    fail("solution length mismatch");
    return res;
  }
  for (long v = 0; v < model.N * model.t; ++v) {
    if (model.lb[v] && x[v] < *model.lb[v])
      fail("variable " + std::to_string(v) + " below its lower bound");
    if (model.ub[v] && x[v] > *model.ub[v])
      fail("variable " + std::to_string(v) + " above its upper bound");
  }

  for (long row = 0; row < model.r; ++row) {
    Int sum = 0;
    for (long b = 0; b < model.N; ++b)
      for (long col = 0; col < model.t; ++col) sum += model.E1[b][row][col] * x[b * model.t + col];
    bool ok = model.sense[row] == RowSense::eq ? sum == model.rhs[row] : sum <= model.rhs[row];
    if (!ok) fail("linking row " + std::to_string(row) + " violated");
  }
  for (long b = 0; b < model.N; ++b) {
    for (long row = 0; row < model.s; ++row) {
      Int sum = 0;
      for (long col = 0; col < model.t; ++col) sum += model.E2[b][row][col] * x[b * model.t + col];
      long idx = model.r + b * model.s + row;
      bool ok = model.sense[idx] == RowSense::eq ? sum == model.rhs[idx] : sum <= model.rhs[idx];
      if (!ok) fail("local row " + std::to_string(row) + " of block " + std::to_string(b) + " violated");
    }
  }
  return res;
}

namespace {

void emit_row(std::ostringstream& out, const std::vector<Int>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ' ';
    out << row[i];
  }
  out << '\n';
}

}  // namespace

std::string export_nfold(const NFoldModel& model) {
  std::ostringstream out;
  out << "NFOLD " << model.r << ' ' << model.s << ' ' << model.t << ' ' << model.N << '\n';
  for (long b = 0; b < model.N; ++b) {
    out << "BLOCK " << (b + 1) << '\n';
    out << "E1\n";
    for (long row = 0; row < model.r; ++row) emit_row(out, model.E1[b][row]);
    out << "E2\n";
    for (long row = 0; row < model.s; ++row) emit_row(out, model.E2[b][row]);
  }
  out << "RHS\n";
  emit_row(out, model.rhs);
  out << "SENSE\n";
  for (std::size_t i = 0; i < model.sense.size(); ++i) {
    if (i) out << ' ';
    out << (model.sense[i] == RowSense::eq ? "=" : "<=");
  }
  out << '\n';
  auto emit_bounds = [&](const std::vector<std::optional<Int>>& bounds, const char* missing) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      if (i) out << ' ';
      if (bounds[i])
        out << *bounds[i];
      else
        out << missing;
    }
    out << '\n';
  };
  out << "LB\n";
  emit_bounds(model.lb, "-inf");
  out << "UB\n";
  emit_bounds(model.ub, "inf");
  if (model.objective != NFoldObjective::none) {
    out << "OBJ " << (model.objective == NFoldObjective::l2sq ? "l2sq" : "sumwc") << '\n';
    out << "ZDEF\n";
    for (long b = 0; b < model.N; ++b) emit_row(out, model.zdef[b]);
  }
  return out.str();
}

namespace {

struct LineReader {
  std::istringstream in;
  std::string line;

  explicit LineReader(const std::string& text) : in(text) {}

  bool next() { return static_cast<bool>(std::getline(in, line)); }

  std::string expect() {
    if (!next()) throw ParseError("unexpected end of nfold file");
    return line;
  }
};

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<Int> parse_row(const std::string& line, long width, const char* what) {
  std::vector<std::string> toks = split_ws(line);
  if (static_cast<long>(toks.size()) != width)
    throw ParseError(std::string(what) + ": expected " + std::to_string(width) + " entries");
  std::vector<Int> row;
  row.reserve(toks.size());
  for (const std::string& t : toks) row.push_back(parse_int(t));
  return row;
}

}  // namespace

NFoldModel import_nfold(const std::string& text) {
  LineReader reader(text);
  NFoldModel model;

  std::vector<std::string> header = split_ws(reader.expect());
  if (header.size() != 5 || header[0] != "NFOLD") throw ParseError("bad nfold header");
  model.r = std::stol(header[1]);
  model.s = std::stol(header[2]);
  model.t = std::stol(header[3]);
  model.N = std::stol(header[4]);
  if (model.r < 0 || model.s < 0 || model.t < 0 || model.N < 0)
    throw ParseError("negative dimension in nfold header");

  for (long b = 0; b < model.N; ++b) {
    if (reader.expect() != "BLOCK " + std::to_string(b + 1))
      throw ParseError("expected BLOCK " + std::to_string(b + 1));
    if (reader.expect() != "E1") throw ParseError("expected E1");
    std::vector<std::vector<Int>> e1;
    for (long row = 0; row < model.r; ++row) e1.push_back(parse_row(reader.expect(), model.t, "E1"));
    model.E1.push_back(std::move(e1));
    if (reader.expect() != "E2") throw ParseError("expected E2");
    std::vector<std::vector<Int>> e2;
    for (long row = 0; row < model.s; ++row) e2.push_back(parse_row(reader.expect(), model.t, "E2"));
    model.E2.push_back(std::move(e2));
  }

  if (reader.expect() != "RHS") throw ParseError("expected RHS");
  model.rhs = parse_row(reader.expect(), model.r + model.N * model.s, "RHS");

  if (reader.expect() != "SENSE") throw ParseError("expected SENSE");
  std::vector<std::string> senses = split_ws(reader.expect());
  if (static_cast<long>(senses.size()) != model.r + model.N * model.s)
    throw ParseError("SENSE: wrong number of entries");
  for (const std::string& s : senses) {
    if (s == "=")
      model.sense.push_back(RowSense::eq);
    else if (s == "<=")
      model.sense.push_back(RowSense::le);
    else
      throw ParseError("SENSE: unknown token '" + s + "'");
  }

  auto parse_bounds = [&](const char* name, const char* missing) {
    std::vector<std::optional<Int>> bounds;
    std::vector<std::string> toks = split_ws(reader.expect());
    if (static_cast<long>(toks.size()) != model.N * model.t)
      throw ParseError(std::string(name) + ": wrong number of entries");
    for (const std::string& t : toks) {
      if (t == missing)
        bounds.push_back(std::nullopt);
      else
        bounds.push_back(parse_int(t));
    }
    return bounds;
  };
  if (reader.expect() != "LB") throw ParseError("expected LB");
  model.lb = parse_bounds("LB", "-inf");
  if (reader.expect() != "UB") throw ParseError("expected UB");
  model.ub = parse_bounds("UB", "inf");

  if (reader.next()) {
    std::vector<std::string> toks = split_ws(reader.line);
    if (toks.size() != 2 || toks[0] != "OBJ") throw ParseError("expected OBJ stanza");
    if (toks[1] == "l2sq")
      model.objective = NFoldObjective::l2sq;
    else if (toks[1] == "sumwc")
      model.objective = NFoldObjective::sumwc;
    else
      throw ParseError("OBJ: unknown objective '" + toks[1] + "'");
    if (reader.expect() != "ZDEF") throw ParseError("expected ZDEF");
    for (long b = 0; b < model.N; ++b)
      model.zdef.push_back(parse_row(reader.expect(), model.t, "ZDEF"));
    while (reader.next())
      if (!split_ws(reader.line).empty()) throw ParseError("trailing content in nfold file");
  }
  return model;
}

}  // namespace hms
