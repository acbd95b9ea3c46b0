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

// Extended-space conic form of the lifted cuts: the inner minimization over
// the auxiliary multipliers becomes fresh variables, one rotated cone per
// ratio term and an epigraph split of the row's t variable.

#ifndef RANKONE_EXTENDED_CUT_H_
#define RANKONE_EXTENDED_CUT_H_

#include <span>
#include <string>
#include <vector>

#include "rankone/conic_model.h"
#include "rankone/lifted_cuts.h"

namespace rankone {

// A rank-one row t >= (f'y)^2 over model variables, restricted to the
// indices with f_i != 0. Cut indices refer to positions in these vectors
// and the cut acts on the scaled variables |f_i| y_i.
struct RowContext {
  std::vector<double> f;
  std::vector<int> x_vars;
  std::vector<int> y_vars;
  int t_var = -1;
};

// Drops zero coefficients. Throws InputError on length mismatch.
RowContext MakeRowContext(std::span<const double> f,
                          std::span<const int> x_vars,
                          std::span<const int> y_vars, int t_var);

// N+ = positions with f > 0, N- = positions with f < 0.
Partition RowPartition(const RowContext& row);

struct ExtendedCutBlock {
  LiftedCut cut;
  IndexSet lambda;  // per R element, empty for the positive template
  IndexSet mu;      // per R element
  int lambda0 = -1;
  int mu0 = -1;
  int zeta = -1;
  IndexSet split_vars;  // epigraph parts, one per ratio term
  IndexSet cones;       // indices into model.cones
};

// Appends the cut to the model. Throws InputError when the cut sets do not
// match the row's sign pattern.
ExtendedCutBlock EmitExtendedCut(const LiftedCut& cut, const RowContext& row,
                                 ConicModel* model);

enum class EvalMode { kAuto, kNumeric };

// Inner minimum of the extended cut at (x, y) for the unscaled set. kAuto
// uses the closed form when CutConditionsHold and a small cone program
// otherwise. Returns +inf when the minimization is infeasible. Throws
// SolverError when the cone program does not converge.
double EvalExtendedMin(std::span<const double> x, std::span<const double> y,
                       const LiftedCut& cut, const Partition& p,
                       EvalMode mode = EvalMode::kAuto);

}  // namespace rankone

#endif  // RANKONE_EXTENDED_CUT_H_
