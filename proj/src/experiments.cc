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

#include "rankone/experiments.h"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "json.hpp"
#include "rankone/random.h"
#include "rankone/relaxation.h"

namespace rankone {
namespace {

using Json = nlohmann::json;

// Stream ids for the generator's parameter blocks.
enum : std::uint64_t { kStreamE = 1, kStreamG = 2, kStreamD = 3, kStreamB = 4 };

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

bool AllFinite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double e) { return std::isfinite(e); });
}

void CheckNonnegative(const std::vector<double>& v, const char* name) {
  for (double e : v) {
    if (!(e >= 0.0))
      throw InputError(std::string(name) + " has a negative entry");
  }
}

std::string Fixed(double v, int digits) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void SolveOrThrow(const ConicModel& model, double tol, const std::string& what,
                  SolveResult* out) {
  *out = SolveRelaxation(model, tol);
  if (out->status != SolveStatus::kOptimal) {
    throw SolverError(what + ": relaxation " + StatusName(out->status));
  }
}

}  // namespace

void PortfolioInstance::Validate() const {
  if (r < 1 || n < r) throw InputError("instance needs n >= r >= 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  if (F.size() != nn * r) throw InputError("F must have n*r entries");
  if (d.size() != nn || b.size() != nn || a.size() != nn) {
    throw InputError("d, b, a must have n entries");
  }
  if (!AllFinite(F) || !AllFinite(d) || !AllFinite(b) || !AllFinite(a) ||
      !std::isfinite(beta)) {
    throw InputError("instance has a non-finite entry");
  }
  CheckNonnegative(d, "d");
  CheckNonnegative(b, "b");
  CheckNonnegative(a, "a");
}

PortfolioInstance GenerateInstance(int n, int r, double rho, double delta,
                                   double alpha_fc, std::uint64_t seed) {
  if (r < 1 || n < r) throw InputError("generate needs n >= r >= 1");
  if (!(rho <= 1.0) || !std::isfinite(rho)) {
    throw InputError("rho must be finite and at most 1");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InputError("delta must be finite and nonnegative");
  }
  if (!(alpha_fc >= 0.0) || !std::isfinite(alpha_fc)) {
    throw InputError("alpha_fc must be finite and nonnegative");
  }
  PortfolioInstance inst;
  inst.n = n;
  inst.r = r;
  inst.rho = rho;
  inst.delta = delta;
  inst.alpha_fc = alpha_fc;
  inst.seed = seed;

  std::vector<double> e(static_cast<std::size_t>(n) * r, 0.0);
  StreamRng rng_e(seed, kStreamE);
  for (double& v : e) {
    const bool nonzero = rng_e.Uniform(0.0, 1.0) >= 0.8;
    if (nonzero) v = rng_e.Uniform(0.0, 1.0);
  }
  std::vector<double> g(static_cast<std::size_t>(r) * r);
  StreamRng rng_g(seed, kStreamG);
  for (double& v : g) v = rng_g.Uniform(rho, 1.0);

  inst.F.assign(static_cast<std::size_t>(n) * r, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) {
      double sum = 0.0;
      for (int k = 0; k < r; ++k) sum += e[i * r + k] * g[k * r + j];
      inst.F[i * r + j] = sum;
    }
  }
  std::vector<double> ff(n, 0.0);  // diagonal of FF'
  double v = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) ff[i] += inst.f(i, j) * inst.f(i, j);
    v += ff[i];
  }
  v /= n;

  StreamRng rng_d(seed, kStreamD);
  inst.d.resize(n);
  for (double& di : inst.d) di = std::sqrt(rng_d.Uniform(0.0, v * delta));

  StreamRng rng_b(seed, kStreamB);
  inst.b.resize(n);
  double sum_b = 0.0;
  for (int i = 0; i < n; ++i) {
    inst.b[i] =
        rng_b.Uniform(0.25, 0.75) * std::sqrt(ff[i] + inst.d[i] * inst.d[i]);
    sum_b += inst.b[i];
  }
  inst.a.assign(n, alpha_fc * sum_b / (static_cast<double>(n) * n));
  inst.beta = sum_b / n;
  return inst;
}

bool IsIntegerFeasible(const PortfolioInstance& inst) {
  double best = -kInfinity;
  for (int i = 0; i < inst.n; ++i) best = std::max(best, inst.b[i] - inst.a[i]);
  return best >= inst.beta;
}

PortfolioInstance NormalizedInstance(const PortfolioInstance& inst,
                                     double* objective_scale, double tol) {
  inst.Validate();
  // First pass: the best single-asset portfolio bounds the optimum.
  double bound = kInfinity;
  for (int i = 0; i < inst.n; ++i) {
    if (inst.b[i] - inst.a[i] < inst.beta) continue;
    double v = inst.d[i] * inst.d[i];
    for (int j = 0; j < inst.r; ++j) v += inst.f(i, j) * inst.f(i, j);
    bound = std::min(bound, v);
  }
  double scale = 1.0;
  PortfolioInstance out = inst;
  auto rescale = [&](double factor) {
    const double root = std::sqrt(factor);
    for (double& v : out.F) v *= root;
    for (double& v : out.d) v *= root;
    scale *= factor;
  };
  if (std::isfinite(bound) && bound > 0.0) rescale(1.0 / bound);
  SolveResult res;
  SolveOrThrow(BuildFormulation(out, Method::kPerspective).model, tol,
               "normalization", &res);
  if (res.objective > 0.0) rescale(1.0 / res.objective);
  *objective_scale = scale;
  return out;
}

SupportOptimum SolveSupportEnumeration(const PortfolioInstance& inst, int max_n,
                                       double tol) {
  inst.Validate();
  if (inst.n > max_n || inst.n > 30) {
    throw CapacityError("support enumeration limited to n <= " +
                        std::to_string(std::min(max_n, 30)));
  }
  Formulation base = BuildFormulation(inst, Method::kBasic);
  SupportOptimum best;
  const unsigned long long count = 1ULL << inst.n;
  for (unsigned long long mask = 1; mask < count; ++mask) {
    double max_b = -kInfinity;
    double fixed = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      if (mask >> i & 1ULL) {
        max_b = std::max(max_b, inst.b[i]);
        fixed += inst.a[i];
      }
    }
    if (max_b - fixed < inst.beta) continue;
    ConicModel m = base.model;
    for (int i = 0; i < inst.n; ++i) {
      const double v = (mask >> i & 1ULL) ? 1.0 : 0.0;
      m.lower[base.x[i]] = v;
      m.upper[base.x[i]] = v;
    }
    const SolveResult res = SolveRelaxation(m, tol);
    ++best.solves;
    if (res.status == SolveStatus::kInfeasible) continue;
    if (res.status != SolveStatus::kOptimal) {
      throw SolverError("support " + FormatSet(MaskToSet(mask, inst.n)) + ": " +
                        StatusName(res.status));
    }
    if (res.objective < best.value) {
      best.value = res.objective;
      best.support = MaskToSet(mask, inst.n);
    }
  }
  return best;
}

std::string InstanceToJson(const PortfolioInstance& inst) {
  Json j;
  j["n"] = inst.n;
  j["r"] = inst.r;
  j["rho"] = inst.rho;
  j["delta"] = inst.delta;
  j["alpha_fc"] = inst.alpha_fc;
  j["seed"] = inst.seed;
  j["F"] = inst.F;
  j["d"] = inst.d;
  j["b"] = inst.b;
  j["a"] = inst.a;
  j["beta"] = inst.beta;
  return j.dump(1) + "\n";
}

PortfolioInstance InstanceFromJson(const std::string& text) {
  PortfolioInstance inst;
  try {
    const Json j = Json::parse(text);
    inst.n = j.at("n").get<int>();
    inst.r = j.at("r").get<int>();
    inst.rho = j.at("rho").get<double>();
    inst.delta = j.at("delta").get<double>();
    inst.alpha_fc = j.at("alpha_fc").get<double>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.F = j.at("F").get<std::vector<double>>();
    inst.d = j.at("d").get<std::vector<double>>();
    inst.b = j.at("b").get<std::vector<double>>();
    inst.a = j.at("a").get<std::vector<double>>();
    inst.beta = j.at("beta").get<double>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("instance json: ") + e.what());
  }
  inst.Validate();
  return inst;
}

const char* MethodName(Method m) {
  switch (m) {
    case Method::kBasic:
      return "Basic";
    case Method::kPerspective:
      return "Perspective";
    case Method::kSupermodular:
      return "Supermodular";
  }
  return "?";
}

std::optional<Method> ParseMethod(const std::string& s) {
  std::string low = s;
  for (char& c : low) c = static_cast<char>(std::tolower(c));
  if (low == "basic") return Method::kBasic;
  if (low == "persp" || low == "perspective") return Method::kPerspective;
  if (low == "super" || low == "supermodular") return Method::kSupermodular;
  return std::nullopt;
}

Formulation BuildFormulation(const PortfolioInstance& inst, Method method) {
  inst.Validate();
  const int n = inst.n;
  const int r = inst.r;
  Formulation f;
  f.method = method;
  ConicModel& m = f.model;
  for (int i = 0; i < n; ++i) {
    f.x.push_back(m.AddVar("x" + std::to_string(i), 0.0, 1.0));
    m.MarkBinary(f.x.back());
  }
  for (int i = 0; i < n; ++i) {
    f.y.push_back(m.AddVar("y" + std::to_string(i), 0.0, kInfinity));
  }
  const int one = m.AddVar("one", 1.0, 1.0);

  LinearTerms budget;
  LinearTerms ret;
  for (int i = 0; i < n; ++i) {
    budget.emplace_back(f.y[i], 1.0);
    ret.emplace_back(f.y[i], inst.b[i]);
    if (inst.a[i] != 0.0) ret.emplace_back(f.x[i], -inst.a[i]);
    m.AddRow({{f.y[i], 1.0}, {f.x[i], -1.0}}, Sense::kLe, 0.0);
  }
  m.AddRow(budget, Sense::kEq, 1.0);
  m.AddRow(ret, Sense::kGe, inst.beta);

  // Factor exposures g_j = F_j'y, one per column.
  auto add_exposures = [&](const std::string& prefix) {
    std::vector<int> g;
    for (int j = 0; j < r; ++j) {
      g.push_back(m.AddVar(prefix + std::to_string(j), -kInfinity, kInfinity));
      LinearTerms row = {{g.back(), 1.0}};
      for (int i = 0; i < n; ++i) {
        if (inst.f(i, j) != 0.0) row.emplace_back(f.y[i], -inst.f(i, j));
      }
      m.AddRow(row, Sense::kEq, 0.0);
    }
    return g;
  };

  switch (method) {
    case Method::kBasic: {
      std::vector<int> w = add_exposures("q");
      for (int i = 0; i < n; ++i) {
        if (inst.d[i] == 0.0) continue;
        const int z = m.AddVar("z" + std::to_string(i), -kInfinity, kInfinity);
        m.AddRow({{z, 1.0}, {f.y[i], -inst.d[i]}}, Sense::kEq, 0.0);
        w.push_back(z);
      }
      const int s = m.AddVar("s", 0.0, kInfinity, 1.0);
      m.AddRsoc(s, one, w);
      break;
    }
    case Method::kPerspective: {
      const std::vector<int> q = add_exposures("q");
      const int s = m.AddVar("s", 0.0, kInfinity, 1.0);
      m.AddRsoc(s, one, q);
      for (int i = 0; i < n; ++i) {
        const int p = m.AddVar("p" + std::to_string(i), 0.0, kInfinity,
                               inst.d[i] * inst.d[i]);
        m.AddRsoc(p, f.x[i], {f.y[i]});
      }
      break;
    }
    case Method::kSupermodular: {
      const std::vector<int> g = add_exposures("g");
      std::vector<double> column(n);
      for (int j = 0; j < r; ++j) {
        const int t = m.AddVar("t" + std::to_string(j), 0.0, kInfinity, 1.0);
        m.AddRsoc(t, one, {g[j]});
        for (int i = 0; i < n; ++i) column[i] = inst.f(i, j);
        f.rows.push_back(MakeRowContext(column, f.x, f.y, t));
      }
      for (int i = 0; i < n; ++i) {
        const int p = m.AddVar("p" + std::to_string(i), 0.0, kInfinity,
                               inst.d[i] * inst.d[i]);
        m.AddRsoc(p, f.x[i], {f.y[i]});
      }
      break;
    }
  }
  return f;
}

CutLoopResult RunCutLoop(Formulation* f, const CutLoopOptions& opts) {
  if (f->method != Method::kSupermodular) {
    throw InputError("cut loop needs the Supermodular formulation");
  }
  const auto start = std::chrono::steady_clock::now();
  const int r = static_cast<int>(f->rows.size());
  const int max_total = 3 * r;
  CutLoopResult out;
  std::vector<std::vector<LiftedCut>> seen(r);
  for (int round = 0;; ++round) {
    SolveResult res;
    SolveOrThrow(f->model, opts.tol, "cut loop round " + std::to_string(round),
                 &res);
    out.history.push_back({res.objective, 0});
    if (out.cuts_added >= max_total || round >= opts.max_rounds) break;

    std::vector<SeparationTask> tasks(r);
    for (int j = 0; j < r; ++j) {
      const RowContext& row = f->rows[j];
      SeparationTask& task = tasks[j];
      task.partition = RowPartition(row);
      for (std::size_t i = 0; i < row.f.size(); ++i) {
        const double xv = res.primal[row.x_vars[i]];
        const double yv = res.primal[row.y_vars[i]];
        task.point.x.push_back(std::clamp(xv, 0.0, 1.0));
        task.point.y.push_back(std::abs(row.f[i]) * std::max(yv, 0.0));
      }
      task.point.t = std::max(res.primal[row.t_var], 0.0);
    }
    const std::vector<SeparationResult> found = SeparateBatch(tasks);

    int added = 0;
    for (int j = 0; j < r && out.cuts_added < max_total; ++j) {
      const SeparationResult& sr = found[j];
      if (!sr.violated || !sr.cut || sr.base_only) continue;
      if (std::find(seen[j].begin(), seen[j].end(), *sr.cut) != seen[j].end()) {
        continue;
      }
      seen[j].push_back(*sr.cut);
      out.blocks.push_back(EmitExtendedCut(*sr.cut, f->rows[j], &f->model));
      ++added;
      ++out.cuts_added;
    }
    out.history.back().cuts_added = added;
    if (added == 0) break;
  }
  out.final_value = out.history.back().value;
  out.time_s = Seconds(start);
  return out;
}

double GapPercent(double opt, double val) {
  if (opt == 0.0) return std::nan("");
  return (opt - val) / std::abs(opt) * 100.0;
}

std::optional<double> ImprovementPercent(double gap_p, double gap_s) {
  if (gap_p == 0.0 || std::isnan(gap_p) || std::isnan(gap_s)) {
    return std::nullopt;
  }
  return (gap_p - gap_s) / gap_p * 100.0;
}

namespace {

double ReportScale(double opt, const std::vector<ExperimentRow>& rows) {
  if (opt != 0.0) return 100.0 / std::abs(opt);
  for (const ExperimentRow& row : rows) {
    if (row.method == Method::kBasic && row.val != 0.0) {
      return 100.0 / std::abs(row.val);
    }
  }
  return 1.0;
}

std::string ReportLine(const ExperimentRow& row, double scale) {
  std::string line = MethodName(row.method);
  line += "," + Fixed(row.val * scale, 4);
  line += "," + Fixed(row.gap_pct, 4);
  line += "," + (row.imp_pct ? Fixed(*row.imp_pct, 2) : std::string("n/a"));
  line += "," + Fixed(row.time_s, 4);
  line += "," + std::to_string(row.cuts);
  return line;
}

}  // namespace

std::string Report(const PortfolioInstance& inst, double opt,
                   const std::vector<ExperimentRow>& rows) {
  (void)inst;
  const double scale = ReportScale(opt, rows);
  std::string out = "method,val,gap_pct,imp_pct,time_s,cuts\n";
  for (const ExperimentRow& row : rows) out += ReportLine(row, scale) + "\n";
  return out;
}

InstanceResult RunInstance(const PortfolioInstance& inst,
                           const RunOptions& opts) {
  InstanceResult out;
  out.inst = inst;
  const double tol = opts.loop.tol;
  double scale = 1.0;
  const PortfolioInstance norm = NormalizedInstance(inst, &scale, tol);
  const SupportOptimum best = SolveSupportEnumeration(norm, opts.max_n, tol);
  if (best.support.empty()) throw InputError("instance is integer-infeasible");
  out.opt = best.value / scale;

  for (Method m : {Method::kBasic, Method::kPerspective}) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    SolveOrThrow(BuildFormulation(norm, m).model, tol, MethodName(m), &res);
    ExperimentRow row;
    row.method = m;
    row.val = res.objective / scale;
    row.time_s = Seconds(start);
    row.gap_pct = GapPercent(out.opt, row.val);
    out.rows.push_back(row);
  }
  const auto start = std::chrono::steady_clock::now();
  Formulation sup = BuildFormulation(norm, Method::kSupermodular);
  out.loop = RunCutLoop(&sup, opts.loop);
  for (CutRound& round : out.loop.history) round.value /= scale;
  out.loop.final_value /= scale;
  ExperimentRow row;
  row.method = Method::kSupermodular;
  row.val = out.loop.final_value;
  row.time_s = Seconds(start);
  row.cuts = out.loop.cuts_added;
  row.gap_pct = GapPercent(out.opt, row.val);
  row.imp_pct = ImprovementPercent(out.rows[1].gap_pct, row.gap_pct);
  out.rows.push_back(row);
  return out;
}

BatchConfig BatchConfigFromJson(const std::string& text) {
  BatchConfig c;
  try {
    const Json j = Json::parse(text);
    if (!j.is_object()) throw InputError("batch config must be an object");
    c.n = j.value("n", c.n);
    c.r = j.value("r", c.r);
    c.rho = j.value("rho", c.rho);
    c.delta = j.value("delta", c.delta);
    c.alpha_fc = j.value("alpha_fc", c.alpha_fc);
    c.instances = j.value("instances", c.instances);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.run.max_n = j.value("max_n", c.run.max_n);
    c.run.loop.max_rounds = j.value("max_rounds", c.run.loop.max_rounds);
    c.run.loop.tol = j.value("tol", c.run.loop.tol);
  } catch (const Json::exception& e) {
    throw InputError(std::string("batch config json: ") + e.what());
  }
  if (c.instances < 0 || c.max_attempts < 0) {
    throw InputError("instances and max_attempts must be nonnegative");
  }
  if (!(c.run.loop.tol > 0.0)) throw InputError("tol must be positive");
  return c;
}

std::string BatchConfigToJson(const BatchConfig& c) {
  Json j;
  j["n"] = c.n;
  j["r"] = c.r;
  j["rho"] = c.rho;
  j["delta"] = c.delta;
  j["alpha_fc"] = c.alpha_fc;
  j["instances"] = c.instances;
  j["base_seed"] = c.base_seed;
  j["max_attempts"] = c.max_attempts;
  j["max_n"] = c.run.max_n;
  j["max_rounds"] = c.run.loop.max_rounds;
  j["tol"] = c.run.loop.tol;
  return j.dump();
}

namespace {

// Seeds are tried in order from base_seed in every cell; rejected ones are
// counted in `skipped`.
std::vector<PortfolioInstance> BatchInstances(const BatchConfig& c,
                                              int* skipped) {
  std::vector<PortfolioInstance> out;
  *skipped = 0;
  for (int r : c.r) {
    for (double rho : c.rho) {
      for (double alpha : c.alpha_fc) {
        int kept = 0;
        for (int k = 0; k < c.max_attempts && kept < c.instances; ++k) {
          PortfolioInstance inst =
              GenerateInstance(c.n, r, rho, c.delta, alpha, c.base_seed + k);
          const bool degenerate = std::all_of(
              inst.F.begin(), inst.F.end(), [](double v) { return v == 0.0; });
          if (degenerate || !IsIntegerFeasible(inst)) {
            ++*skipped;
            continue;
          }
          out.push_back(std::move(inst));
          ++kept;
        }
      }
    }
  }
  return out;
}

}  // namespace

BatchResult RunBatch(const BatchConfig& config, int jobs) {
  BatchResult out;
  const std::vector<PortfolioInstance> insts =
      BatchInstances(config, &out.skipped);
  const long long count = static_cast<long long>(insts.size());
  out.results.resize(count);
  std::vector<std::exception_ptr> errors(count);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long k = 0; k < count; ++k) {
    try {
      out.results[k] = RunInstance(insts[k], config.run);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

BatchResult RunBatchSerial(const BatchConfig& config) {
  BatchResult out;
  for (const PortfolioInstance& inst : BatchInstances(config, &out.skipped)) {
    out.results.push_back(RunInstance(inst, config.run));
  }
  return out;
}

std::string BatchCsv(const BatchResult& batch) {
  std::ostringstream os;
  os << "n,r,rho,delta,alpha_fc,seed,opt,method,val,gap_pct,imp_pct,time_s,"
        "cuts\n";
  for (const InstanceResult& res : batch.results) {
    const PortfolioInstance& inst = res.inst;
    const double scale = ReportScale(res.opt, res.rows);
    for (const ExperimentRow& row : res.rows) {
      os << inst.n << ',' << inst.r << ',' << inst.rho << ',' << inst.delta
         << ',' << inst.alpha_fc << ',' << inst.seed << ',' << Fixed(res.opt, 8)
         << ',' << ReportLine(row, scale) << '\n';
    }
  }
  return os.str();
}

}  // namespace rankone
