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

// Fixed-charge portfolio instances, their three conic formulations, the
// cut-addition loop and gap reporting.
//
// Instance:  min  y'FF'y + sum (d_i y_i)^2
//            s.t. e'y = 1,  b'y - a'x >= beta,  y <= x,
//                 x binary, y >= 0.

#ifndef RANKONE_EXPERIMENTS_H_
#define RANKONE_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankone/conic_model.h"
#include "rankone/extended_cut.h"
#include "rankone/lifted_cuts.h"

namespace rankone {

struct PortfolioInstance {
  int n = 0;
  int r = 0;
  double rho = 0.0;
  double delta = 0.0;
  double alpha_fc = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> F;  // n x r, row-major
  std::vector<double> d;
  std::vector<double> b;
  std::vector<double> a;
  double beta = 0.0;

  double f(int i, int j) const {
    return F[static_cast<std::size_t>(i) * r + j];
  }
  // Throws InputError on inconsistent sizes or negative d, b, a.
  void Validate() const;
};

// Draws use one StreamRng per parameter block: (seed, 1) for E, (seed, 2)
// for G, (seed, 3) for d and (seed, 4) for b. E is drawn row-major, mask
// then value per entry. Throws InputError on invalid parameters.
PortfolioInstance GenerateInstance(int n, int r, double rho, double delta,
                                   double alpha_fc, std::uint64_t seed);

// Some binary assignment admits a feasible y. With a >= 0 a single asset
// is always the best support, so this is max_i (b_i - a_i) >= beta.
bool IsIntegerFeasible(const PortfolioInstance& inst);

// Copy with F and d scaled by a common factor so that the Perspective
// relaxation value is 1. Gaps are invariant under this scaling, while the
// solver tolerances and the cut loop's violation rule are absolute.
// `objective_scale` receives the factor applied to objective values.
PortfolioInstance NormalizedInstance(const PortfolioInstance& inst,
                                     double* objective_scale,
                                     double tol = 1e-7);

struct SupportOptimum {
  double value = kInfinity;
  IndexSet support;
  int solves = 0;
};

// Exact optimum by enumerating supports. Supports with
// max_{i in S} b_i - a(S) < beta are infeasible and skipped; each remaining
// one is a small convex program over y_S. Throws CapacityError when
// n > max_n and SolverError when a subproblem fails.
SupportOptimum SolveSupportEnumeration(const PortfolioInstance& inst,
                                       int max_n = 16, double tol = 1e-7);

std::string InstanceToJson(const PortfolioInstance& inst);
// Throws InputError on malformed JSON or an invalid instance.
PortfolioInstance InstanceFromJson(const std::string& text);

enum class Method { kBasic, kPerspective, kSupermodular };

const char* MethodName(Method m);
// Accepts basic, persp, perspective, super, supermodular (any case).
std::optional<Method> ParseMethod(const std::string& s);

struct Formulation {
  Method method = Method::kBasic;
  ConicModel model;
  std::vector<int> x;
  std::vector<int> y;
  // Supermodular only: one rank-one row per column of F.
  std::vector<RowContext> rows;
};

Formulation BuildFormulation(const PortfolioInstance& inst, Method method);

struct CutLoopOptions {
  int max_rounds = 100;
  double tol = 1e-7;
};

struct CutRound {
  double value = 0.0;  // relaxation value at the start of the round
  int cuts_added = 0;
};

struct CutLoopResult {
  std::vector<CutRound> history;
  double final_value = 0.0;
  int cuts_added = 0;
  double time_s = 0.0;
  std::vector<ExtendedCutBlock> blocks;
};

// Separates every rank-one row at the current relaxation optimum and adds
// violated cuts, at most one per row per round and at most 3r in total.
// Repeated cuts for a row are skipped. Throws SolverError naming the round
// when a relaxation does not solve to optimality.
CutLoopResult RunCutLoop(Formulation* f, const CutLoopOptions& opts = {});

struct ExperimentRow {
  Method method = Method::kBasic;
  double val = 0.0;
  double gap_pct = 0.0;
  std::optional<double> imp_pct;
  double time_s = 0.0;
  int cuts = 0;
};

// (opt - val) / |opt| * 100, or NaN when opt = 0.
double GapPercent(double opt, double val);
// (gap_p - gap_s) / gap_p * 100, empty when gap_p = 0.
std::optional<double> ImprovementPercent(double gap_p, double gap_s);

// CSV with header method,val,gap_pct,imp_pct,time_s,cuts. Values are
// scaled so that opt = 100 when opt != 0, and so that Basic's value is
// -100 otherwise.
std::string Report(const PortfolioInstance& inst, double opt,
                   const std::vector<ExperimentRow>& rows);

struct RunOptions {
  int max_n = 16;  // support enumeration limit
  CutLoopOptions loop;
};

struct InstanceResult {
  PortfolioInstance inst;
  double opt = 0.0;
  std::vector<ExperimentRow> rows;  // Basic, Perspective, Supermodular
  CutLoopResult loop;
};

// Relaxations of the three formulations, the cut loop and the support
// enumeration optimum, all computed on the normalized instance and mapped
// back to the original objective scale.
InstanceResult RunInstance(const PortfolioInstance& inst,
                           const RunOptions& opts = {});

struct BatchConfig {
  int n = 12;
  std::vector<int> r = {1, 3};
  std::vector<double> rho = {-1.0, 0.0};
  double delta = 0.01;
  std::vector<double> alpha_fc = {2.0, 10.0, 50.0};
  int instances = 10;
  std::uint64_t base_seed = 1;
  // Seeds tried per cell before giving up on `instances` feasible ones.
  int max_attempts = 100;
  RunOptions run;
};

// Throws InputError on malformed JSON. Missing keys keep their defaults.
BatchConfig BatchConfigFromJson(const std::string& text);
std::string BatchConfigToJson(const BatchConfig& config);

struct BatchResult {
  std::vector<InstanceResult> results;
  int skipped = 0;  // seeds rejected as integer-infeasible or degenerate
};

// Instances run in parallel on `jobs` threads (0 = runtime default).
BatchResult RunBatch(const BatchConfig& config, int jobs = 0);
BatchResult RunBatchSerial(const BatchConfig& config);

// One line per (instance, method): n,r,rho,delta,alpha_fc,seed,opt followed
// by the Report columns.
std::string BatchCsv(const BatchResult& batch);

}  // namespace rankone

#endif  // RANKONE_EXPERIMENTS_H_
