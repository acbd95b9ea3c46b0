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

// Closed-form lifted inequalities in the original space and their
// separation, plus a numerical oracle for the same hull value.

#ifndef RANKONE_LIFTED_CUTS_H_
#define RANKONE_LIFTED_CUTS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankone/core_types.h"

namespace rankone {

// kPlus keeps the partition roles; kMinus exchanges N+ and N-.
enum class CutSign { kPlus, kMinus };

struct LiftedCut {
  CutSign sign = CutSign::kPlus;
  IndexSet L;
  IndexSet R;
  IndexSet U;

  bool operator==(const LiftedCut&) const = default;
  std::string DebugString() const;
};

struct SeparationResult {
  std::optional<LiftedCut> cut;
  double rhs_value = 0.0;
  bool violated = false;
  bool base_only = false;
};

// Index sets playing the N+ (side) and N- (opposite) roles under a sign.
struct SignedSides {
  IndexSet side;
  IndexSet opposite;
};
SignedSides SidesFor(CutSign sign, const Partition& p);

// (y(N+) - y(N-))^2.
double BaseValue(std::span<const double> y, const Partition& p);

double EvalLiftedRhs(std::span<const double> x, std::span<const double> y,
                     const LiftedCut& cut, const Partition& p);

// Set L for the all-positive case, as original indices in ratio order.
IndexSet FindLPositive(std::span<const double> x, std::span<const double> y);

std::optional<LiftedCut> FindLUGeneral(std::span<const double> x,
                                       std::span<const double> y,
                                       const Partition& p);

// Throws InputError unless (L, R, U) partitions the cut's signed side.
void CheckCutShape(const LiftedCut& cut, const Partition& p);

// Whether the sufficient conditions for the closed form hold at (x, y):
// nonnegative L denominator, L ratio below every ratio outside L, and,
// when a U term is present, a nonnegative U numerator whose ratio exceeds
// every ratio outside U and the L ratio. Strict comparisons must clear a
// tolerance, so boundary cases report false.
bool CutConditionsHold(std::span<const double> x, std::span<const double> y,
                       const LiftedCut& cut, const Partition& p);

// Violation rule: absolute 1e-3 when |t| < 1e-3, relative 1e-3 otherwise.
bool IsViolated(double value, double t);

SeparationResult Separate(const FractionalPoint& point, const Partition& p);

struct SeparationTask {
  FractionalPoint point;
  Partition partition;
};

// One Separate call per task, run in parallel. Results are in task order.
std::vector<SeparationResult> SeparateBatch(
    std::span<const SeparationTask> tasks);
// Single-threaded reference with identical results.
std::vector<SeparationResult> SeparateBatchSerial(
    std::span<const SeparationTask> tasks);

// Closed-form hull value at (x, y).
double HullValue(std::span<const double> x, std::span<const double> y,
                 const Partition& p);

// y(N)^2 / min{1, x(N)}.
double XfHullValue(std::span<const double> x, std::span<const double> y);
// Signed variant with y(N+) - y(N-) in the numerator.
double XfHullValue(std::span<const double> x, std::span<const double> y,
                   const Partition& p);

// Numerical maximization of the lifting objective over both multiplier
// regions; requires n <= 8 and x_i > 0 wherever y_i > 0.
double HullValueOracle(std::span<const double> x, std::span<const double> y,
                       const Partition& p, int grid = 256);

}  // namespace rankone

#endif  // RANKONE_LIFTED_CUTS_H_
