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

// Projected set function g_alpha(S) = min_y { -alpha'y + (y(N+) - y(N-))^2 }
// over y supported on S.

#ifndef RANKONE_SET_FUNCTION_H_
#define RANKONE_SET_FUNCTION_H_

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "rankone/core_types.h"

namespace rankone {

enum class Region { kBPlus, kBMinus, kUnbounded, kPositiveOrthant };

const char* RegionName(Region r);

struct AlphaVector {
  std::vector<double> values;
  Region region = Region::kPositiveOrthant;

  int size() const { return static_cast<int>(values.size()); }
};

struct GValue {
  double value = 0.0;

  static GValue Unbounded() {
    return {-std::numeric_limits<double>::infinity()};
  }
  bool IsUnbounded() const { return std::isinf(value) && value < 0; }
};

Region ClassifyAlpha(std::span<const double> alpha, const Partition& p);

// Convenience: classify and wrap.
AlphaVector MakeAlpha(std::vector<double> values, const Partition& p);

// True when some i in s∩N+ and j in s∩N- have alpha_i + alpha_j > tol.
bool IsUnboundedOn(std::span<const double> alpha, std::span<const int> s,
                   const Partition& p);

GValue EvalG(const AlphaVector& alpha, std::span<const int> s,
             const Partition& p);

// g(s ∪ {i}) - g(s).
double IncrementRho(const AlphaVector& alpha, int i, std::span<const int> s,
                    const Partition& p);

// g over all 2^n subsets, indexed by bitmask. Throws RegionError if any
// entry is unbounded and CapacityError for n > 20.
std::vector<double> GTable(const AlphaVector& alpha, const Partition& p);

// Exhaustive supermodularity test of a set-function table of size 2^n.
bool CheckSupermodularTable(std::span<const double> table, int n);

bool CheckSupermodular(const AlphaVector& alpha, const Partition& p);

}  // namespace rankone

#endif  // RANKONE_SET_FUNCTION_H_
