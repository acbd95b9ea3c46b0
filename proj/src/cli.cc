// Copyright 2026 The rankone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rankone/cli.h"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankone/core_types.h"
#include "rankone/cqm_format.h"
#include "rankone/experiments.h"
#include "rankone/lifted_cuts.h"
#include "rankone/oracle_suites.h"
#include "rankone/relaxation.h"

namespace rankone {
namespace {

using Json = nlohmann::json;

constexpr const char* kInstanceTag = "#instance ";
constexpr const char* kMethodTag = "#method ";

// "#config cmd=... key=value ..." with every value resolved.
class ConfigLine {
 public:
  explicit ConfigLine(const std::string& cmd) { os_ << "#config cmd=" << cmd; }
  ConfigLine& Add(const std::string& key, const std::string& value) {
    os_ << ' ' << key << '=' << (value.empty() ? "-" : value);
    return *this;
  }
  ConfigLine& Add(const std::string& key, double value) {
    return Add(key, FormatReal(value));
  }
  ConfigLine& Add(const std::string& key, int value) {
    return Add(key, std::to_string(value));
  }
  ConfigLine& Add(const std::string& key, std::uint64_t value) {
    return Add(key, std::to_string(value));
  }
  ConfigLine& Add(const std::string& key, bool value) {
    return Add(key, std::string(value ? "true" : "false"));
  }
  std::string str() const { return os_.str() + "\n"; }

 private:
  std::ostringstream os_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !file.flush()) {
    throw InputError("cannot write " + path);
  }
}

// Writes to `path`, or to `out` when no path was given.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteFile(path, text);
  }
}

std::string Paint(const std::string& text, const char* code, bool color) {
  if (!color) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

Method MethodOrThrow(const std::string& name) {
  const std::optional<Method> m = ParseMethod(name);
  if (!m) throw InputError("unknown method " + name);
  return *m;
}

Partition ParsePartition(const std::string& signs, int n) {
  if (signs.empty()) return Partition::AllPlus(n);
  if (static_cast<int>(signs.size()) != n) {
    throw InputError("partition has " + std::to_string(signs.size()) +
                     " signs for n = " + std::to_string(n));
  }
  IndexSet minus;
  for (int i = 0; i < n; ++i) {
    if (signs[i] == '-') {
      minus.push_back(i);
    } else if (signs[i] != '+') {
      throw InputError("partition signs must be + or -");
    }
  }
  return Partition::FromMinus(n, minus);
}

FractionalPoint PointFromJson(const std::string& text) {
  FractionalPoint p;
  try {
    const Json j = Json::parse(text);
    p.x = j.at("x").get<std::vector<double>>();
    p.y = j.at("y").get<std::vector<double>>();
    p.t = j.value("t", 0.0);
  } catch (const Json::exception& e) {
    throw InputError(std::string("point json: ") + e.what());
  }
  p.Validate();
  return p;
}

std::string CompactJson(const std::string& text) {
  return Json::parse(text).dump();
}

struct Options {
  // generate
  int n = 12;
  int r = 1;
  double rho = 0.0;
  double delta = 0.01;
  double alpha = 10.0;
  std::uint64_t seed = 1;
  // shared
  std::string input;
  std::string output;
  std::string method = "super";
  double tol = 1e-7;
  // solve
  bool mip = false;
  int max_binaries = 16;
  // separate
  std::string partition;
  // cuts
  int max_rounds = 100;
  // experiment
  std::string batch;
  int jobs = 0;
  // oracle-check
  std::string suite;
  int suite_n = 4;
  int trials = 100;
};

int Generate(const Options& o, std::ostream& out) {
  out << ConfigLine("generate")
             .Add("n", o.n)
             .Add("r", o.r)
             .Add("rho", o.rho)
             .Add("delta", o.delta)
             .Add("alpha", o.alpha)
             .Add("seed", o.seed)
             .Add("out", o.output)
             .str();
  const PortfolioInstance inst =
      GenerateInstance(o.n, o.r, o.rho, o.delta, o.alpha, o.seed);
  Emit(o.output, InstanceToJson(inst), out);
  if (!o.output.empty()) {
    out << "integer_feasible=" << (IsIntegerFeasible(inst) ? "true" : "false")
        << "\n";
  }
  return kExitOk;
}

int Build(const Options& o, std::ostream& out) {
  const Method m = MethodOrThrow(o.method);
  out << ConfigLine("build")
             .Add("method", std::string(MethodName(m)))
             .Add("in", o.input)
             .Add("out", o.output)
             .str();
  const PortfolioInstance inst = InstanceFromJson(ReadFile(o.input));
  const Formulation f = BuildFormulation(inst, m);
  Emit(o.output, ExportModel(f.model), out);
  return kExitOk;
}

int Solve(const Options& o, std::ostream& out) {
  out << ConfigLine("solve")
             .Add("in", o.input)
             .Add("tol", o.tol)
             .Add("mip", o.mip)
             .Add("max_binaries", o.max_binaries)
             .Add("out", o.output)
             .str();
  const ConicModel model = ImportModel(ReadFile(o.input));
  const SolveResult res =
      o.mip ? SolveMipBruteforceSerial(model, o.max_binaries, o.tol)
            : SolveRelaxation(model, o.tol);
  Emit(o.output, FormatSolution(model, res), out);
  return res.status == SolveStatus::kIterationLimit ? kExitSolver : kExitOk;
}

int SeparateCmd(const Options& o, std::ostream& out) {
  out << ConfigLine("separate")
             .Add("in", o.input)
             .Add("partition", o.partition)
             .str();
  const FractionalPoint point = PointFromJson(ReadFile(o.input));
  const Partition p = ParsePartition(o.partition, point.size());
  const SeparationResult res = Separate(point, p);
  out << "cut=" << (res.cut ? res.cut->DebugString() : std::string("none"))
      << "\n";
  out << "rhs_value=" << FormatReal(res.rhs_value) << "\n";
  out << "t=" << FormatReal(point.t) << "\n";
  out << "violated=" << (res.violated ? "true" : "false") << "\n";
  out << "base_only=" << (res.base_only ? "true" : "false") << "\n";
  return kExitOk;
}

int Cuts(const Options& o, std::ostream& out) {
  out << ConfigLine("cuts")
             .Add("in", o.input)
             .Add("max_rounds", o.max_rounds)
             .Add("tol", o.tol)
             .str();
  const PortfolioInstance inst = InstanceFromJson(ReadFile(o.input));
  CutLoopOptions opts;
  opts.max_rounds = o.max_rounds;
  opts.tol = o.tol;
  double scale = 1.0;
  Formulation f = BuildFormulation(NormalizedInstance(inst, &scale, o.tol),
                                   Method::kSupermodular);
  const CutLoopResult loop = RunCutLoop(&f, opts);
  out << "round,value,cuts_added\n";
  for (std::size_t k = 0; k < loop.history.size(); ++k) {
    out << k << ',' << FormatReal(loop.history[k].value / scale) << ','
        << loop.history[k].cuts_added << "\n";
  }
  out << "# final_value=" << FormatReal(loop.final_value / scale)
      << " cuts=" << loop.cuts_added << "\n";
  return kExitOk;
}

// Mean gaps per (r, rho, alpha_fc) cell as '#' comment lines.
std::string BatchSummary(const BatchResult& batch) {
  struct Cell {
    int count = 0;
    double gap[3] = {0.0, 0.0, 0.0};
    double cuts = 0.0;
  };
  std::map<std::tuple<int, double, double>, Cell> cells;
  for (const InstanceResult& res : batch.results) {
    Cell& c = cells[{res.inst.r, res.inst.rho, res.inst.alpha_fc}];
    ++c.count;
    for (int k = 0; k < 3; ++k) c.gap[k] += res.rows[k].gap_pct;
    c.cuts += res.rows[2].cuts;
  }
  std::ostringstream os;
  os << "# instances=" << batch.results.size()
     << " skipped_seeds=" << batch.skipped << "\n";
  for (const auto& [key, c] : cells) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "# r=%d rho=%g alpha_fc=%g instances=%d gap_basic=%.4f "
                  "gap_persp=%.4f gap_super=%.4f cuts=%.2f\n",
                  std::get<0>(key), std::get<1>(key), std::get<2>(key), c.count,
                  c.gap[0] / c.count, c.gap[1] / c.count, c.gap[2] / c.count,
                  c.cuts / c.count);
    os << line;
  }
  return os.str();
}

int Experiment(const Options& o, std::ostream& out) {
  const BatchConfig config =
      o.batch.empty() ? BatchConfig{} : BatchConfigFromJson(ReadFile(o.batch));
  out << ConfigLine("experiment")
             .Add("batch", o.batch)
             .Add("out", o.output)
             .Add("jobs", o.jobs)
             .Add("config", CompactJson(BatchConfigToJson(config)))
             .str();
  const BatchResult batch = RunBatch(config, o.jobs);
  Emit(o.output, BatchCsv(batch), out);
  out << BatchSummary(batch);
  return kExitOk;
}

int OracleCheck(const Options& o, std::ostream& out, bool color) {
  out << ConfigLine("oracle-check")
             .Add("suite", o.suite)
             .Add("n", o.suite_n)
             .Add("trials", o.trials)
             .Add("seed", o.seed)
             .str();
  const OracleReport rep =
      RunNamedSuite(o.suite, o.suite_n, o.trials, o.seed, Exec::kSerial);
  char line[256];
  std::snprintf(line, sizeof(line),
                "suite=%s checks=%lld violations=%lld max_error=%.3e\n",
                rep.suite.c_str(), rep.checks, rep.violations, rep.max_error);
  out << line;
  if (rep.ok()) {
    out << Paint("OK", "32", color) << "\n";
    return kExitOk;
  }
  out << Paint("VIOLATION", "31", color) << " " << rep.first_violation << "\n";
  return kExitOracle;
}

// JSON instance -> .cqm with the instance embedded as a comment line, or
// such a .cqm back to the JSON instance.
int Export(const Options& o, std::ostream& out) {
  const std::string text = ReadFile(o.input);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  const bool from_json = first != std::string::npos && text[first] == '{';
  const Method m = MethodOrThrow(o.method);
  out << ConfigLine("export")
             .Add("in", o.input)
             .Add("out", o.output)
             .Add("direction",
                  std::string(from_json ? "json-to-cqm" : "cqm-to-json"))
             .Add("method", std::string(MethodName(m)))
             .str();
  if (from_json) {
    const PortfolioInstance inst = InstanceFromJson(text);
    const Formulation f = BuildFormulation(inst, m);
    std::string cqm = kInstanceTag + CompactJson(InstanceToJson(inst)) + "\n";
    cqm += kMethodTag + std::string(MethodName(m)) + "\n";
    Emit(o.output, cqm + ExportModel(f.model), out);
    return kExitOk;
  }
  ImportModel(text);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind(kInstanceTag, 0) == 0) {
      const PortfolioInstance inst =
          InstanceFromJson(line.substr(std::string(kInstanceTag).size()));
      Emit(o.output, InstanceToJson(inst), out);
      return kExitOk;
    }
  }
  throw InputError("model carries no embedded instance");
}

}  // namespace

bool ColorEnabled(const char* no_color_env, bool is_tty) {
  const bool no_color = no_color_env != nullptr && no_color_env[0] != '\0';
  return is_tty && !no_color;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, bool color) {
  Options o;
  CLI::App app{"Lifted rank-one cuts: instances, models and checks", "rankone"};
  app.require_subcommand(1);
  const std::vector<std::string> methods = {"basic", "persp", "perspective",
                                            "super", "supermodular"};

  CLI::App* gen = app.add_subcommand("generate", "Draw a portfolio instance");
  gen->add_option("--n", o.n, "Assets")->capture_default_str();
  gen->add_option("--r", o.r, "Factors")->capture_default_str();
  gen->add_option("--rho", o.rho, "Factor correlation")->capture_default_str();
  gen->add_option("--delta", o.delta, "Diagonal scale")->capture_default_str();
  gen->add_option("--alpha", o.alpha, "Fixed-cost scale")
      ->capture_default_str();
  gen->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--output", o.output, "Instance JSON (default stdout)");

  CLI::App* build = app.add_subcommand("build", "Write a formulation");
  build->add_option("--method", o.method, "basic, persp or super")
      ->check(CLI::IsMember(methods, CLI::ignore_case))
      ->capture_default_str();
  build->add_option("-i,--input", o.input, "Instance JSON")->required();
  build->add_option("-o,--output", o.output, "Model .cqm (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "Solve a .cqm model");
  solve->add_option("-i,--input", o.input, "Model .cqm")->required();
  solve->add_option("--tol", o.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_flag("--mip", o.mip, "Enumerate binary assignments");
  solve->add_option("--max-binaries", o.max_binaries, "Enumeration limit")
      ->capture_default_str();
  solve->add_option("-o,--output", o.output, "Solution (default stdout)");

  CLI::App* sep = app.add_subcommand("separate", "Separate a point");
  sep->add_option("-i,--input", o.input, "Point JSON {x, y, t}")->required();
  sep->add_option("--partition", o.partition,
                  "Sign per index, e.g. ++-+ (default all +)");

  CLI::App* cuts = app.add_subcommand("cuts", "Run the cut loop");
  cuts->add_option("-i,--input", o.input, "Instance JSON")->required();
  cuts->add_option("--max-rounds", o.max_rounds, "Round limit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cuts->add_option("--tol", o.tol, "Solver tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* exp = app.add_subcommand("experiment", "Run an instance batch");
  exp->add_option("--batch", o.batch, "Batch config JSON (default built-in)");
  exp->add_option("-o,--output", o.output, "Results CSV (default stdout)");
  exp->add_option("--jobs", o.jobs, "Threads, 0 for the runtime default")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* oc = app.add_subcommand("oracle-check", "Run an oracle suite");
  oc->add_option("--suite", o.suite, "hull, duality or validity")
      ->required()
      ->check(CLI::IsMember({"hull", "duality", "validity"}));
  oc->add_option("--n", o.suite_n, "Largest dimension")->capture_default_str();
  oc->add_option("--trials", o.trials, "Trials")->capture_default_str();
  oc->add_option("--seed", o.seed, "Suite seed")->capture_default_str();

  CLI::App* exp_cmd =
      app.add_subcommand("export", "Convert instance JSON <-> .cqm");
  exp_cmd->add_option("-i,--input", o.input, "Instance JSON or .cqm")
      ->required();
  exp_cmd->add_option("-o,--output", o.output, "Output (default stdout)");
  exp_cmd->add_option("--method", o.method, "Formulation for JSON input")
      ->check(CLI::IsMember(methods, CLI::ignore_case))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string error_tag = Paint("error:", "31", color);
  try {
    if (gen->parsed()) return Generate(o, out);
    if (build->parsed()) return Build(o, out);
    if (solve->parsed()) return Solve(o, out);
    if (sep->parsed()) return SeparateCmd(o, out);
    if (cuts->parsed()) return Cuts(o, out);
    if (exp->parsed()) return Experiment(o, out);
    if (oc->parsed()) return OracleCheck(o, out, color);
    if (exp_cmd->parsed()) return Export(o, out);
  } catch (const SolverError& e) {
    err << error_tag << " " << e.what() << "\n";
    return kExitSolver;
  } catch (const OracleError& e) {
    err << error_tag << " " << e.what() << "\n";
    return kExitOracle;
  } catch (const std::exception& e) {
    err << error_tag << " " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace rankone
