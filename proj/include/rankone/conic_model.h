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

// Solver-agnostic conic model: bounded variables, a linear objective,
// linear rows and rotated cones w'w <= u v, plus a binary index set.

#ifndef RANKONE_CONIC_MODEL_H_
#define RANKONE_CONIC_MODEL_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankone/core_types.h"

namespace rankone {

enum class Sense { kLe, kEq, kGe };

using LinearTerms = std::vector<std::pair<int, double>>;

struct LinearRow {
  LinearTerms terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  bool operator==(const LinearRow&) const = default;
};

// w'w <= u v with u, v >= 0.
struct RsocBlock {
  int u = 0;
  int v = 0;
  std::vector<int> w;

  bool operator==(const RsocBlock&) const = default;
};

struct ConicModel {
  std::vector<std::string> names;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<LinearRow> rows;
  std::vector<RsocBlock> cones;
  IndexSet binaries;  // sorted, unique

  bool operator==(const ConicModel&) const = default;

  int num_vars() const { return static_cast<int>(names.size()); }

  int AddVar(std::string name, double lo, double hi, double obj = 0.0);
  void AddRow(LinearTerms terms, Sense sense, double rhs);
  void AddRsoc(int u, int v, std::vector<int> w);
  // Marks a variable binary and intersects its bounds with [0, 1].
  void MarkBinary(int var);
  bool IsBinary(int var) const;
  // Index of the first variable with this name, or -1.
  int FindVar(std::string_view name) const;

  // Throws InputError naming the offending record.
  void Validate() const;
};

// Value of the objective at a full primal vector.
double EvalObjective(const ConicModel& model, const std::vector<double>& x);

// Largest violation of bounds, rows and cones at x (0 when feasible).
double MaxViolation(const ConicModel& model, const std::vector<double>& x);

}  // namespace rankone

#endif  // RANKONE_CONIC_MODEL_H_
