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

// Continuous relaxation of a ConicModel (binaries relaxed to [0, 1]) and a
// brute-force mixed-integer reference by enumeration of binary assignments.

#ifndef RANKONE_RELAXATION_H_
#define RANKONE_RELAXATION_H_

#include <string>
#include <vector>

#include "rankone/cone_program.h"
#include "rankone/conic_model.h"

namespace rankone {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* StatusName(SolveStatus s);

struct KktResiduals {
  double primal_inf = 0.0;
  double dual_inf = 0.0;
  double gap = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> primal;
  KktResiduals kkt;
  int iterations = 0;
};

// Fixed-variable substitution, singleton-row bound tightening, activity
// checks and zero-side cone reduction, then the standard-form program.
struct CompiledModel {
  bool infeasible = false;
  std::string reason;
  ConeProgram program;
  std::vector<int> column_of;  // model var -> program column or -1
  std::vector<double> fixed_value;
};

CompiledModel CompileModel(const ConicModel& model);

SolveResult SolveRelaxation(const ConicModel& model, double tol = 1e-7);

// Throws CapacityError above max_binaries. Subproblems run in parallel;
// ties go to the lowest assignment index so the result is deterministic.
SolveResult SolveMipBruteforce(const ConicModel& model, int max_binaries = 16,
                               double tol = 1e-7);
// Single-threaded reference with identical semantics.
SolveResult SolveMipBruteforceSerial(const ConicModel& model,
                                     int max_binaries = 16, double tol = 1e-7);

// "name=value" lines preceded by '#' status comments.
std::string FormatSolution(const ConicModel& model, const SolveResult& result);

}  // namespace rankone

#endif  // RANKONE_RELAXATION_H_
