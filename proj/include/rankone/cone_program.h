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

// Standard-form cone program and its interior-point solver:
//
//   min c'x + c0  s.t.  A x = b,  G x + s = h,  s in K
//
// with K the product of a nonnegative orthant (first `num_nonneg` rows of
// G) and second-order cones {(s0, s1): s0 >= |s1|} of sizes `soc_dims`.

#ifndef RANKONE_CONE_PROGRAM_H_
#define RANKONE_CONE_PROGRAM_H_

#include <utility>
#include <vector>

namespace rankone {

// Compressed sparse rows with a fixed column count.
struct SparseRows {
  int cols = 0;
  std::vector<int> start = {0};
  std::vector<int> index;
  std::vector<double> value;

  int rows() const { return static_cast<int>(start.size()) - 1; }
  void AddRow(const std::vector<std::pair<int, double>>& terms);
};

struct ConeProgram {
  int num_vars = 0;
  std::vector<double> c;
  double c0 = 0.0;
  SparseRows a;
  std::vector<double> b;
  SparseRows g;
  std::vector<double> h;
  int num_nonneg = 0;
  std::vector<int> soc_dims;
};

struct IpmOptions {
  double feastol = 1e-9;
  double abstol = 1e-9;
  double reltol = 1e-8;
  int max_iter = 120;
  // Per-iteration trace on stderr.
  bool verbose = false;
};

enum class IpmStatus {
  kOptimal,
  kPrimalInfeasible,
  kDualInfeasible,
  kIterationLimit,
};

struct IpmResult {
  IpmStatus status = IpmStatus::kIterationLimit;
  // On kIterationLimit these hold the iterate with the smallest residuals.
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> s;
  double pcost = 0.0;
  double dcost = 0.0;
  double pres = 0.0;
  double dres = 0.0;
  double gap = 0.0;
  // gap / max(1, min(|primal objective|, |dual objective|)).
  double relgap = 0.0;
  int iterations = 0;
  // Set when the solver stalled and the best iterate only meets the
  // tolerances scaled up by 100.
  bool reduced_accuracy = false;
};

// Throws InputError on inconsistent dimensions.
IpmResult SolveConeProgram(const ConeProgram& prog,
                           const IpmOptions& opts = {});

}  // namespace rankone

#endif  // RANKONE_CONE_PROGRAM_H_
