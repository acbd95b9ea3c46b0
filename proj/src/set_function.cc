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

#include "rankone/set_function.h"

#include <algorithm>
#include <string>

namespace rankone {
namespace {

void CheckDims(std::span<const double> alpha, const Partition& p) {
  if (static_cast<int>(alpha.size()) != p.n) {
    throw InputError("alpha has length " + std::to_string(alpha.size()) +
                     ", partition has n=" + std::to_string(p.n));
  }
}

}  // namespace

const char* RegionName(Region r) {
  switch (r) {
    case Region::kBPlus:
      return "BPlus";
    case Region::kBMinus:
      return "BMinus";
    case Region::kUnbounded:
      return "Unbounded";
    case Region::kPositiveOrthant:
      return "PositiveOrthant";
  }
  return "?";
}

Region ClassifyAlpha(std::span<const double> alpha, const Partition& p) {
  CheckDims(alpha, p);
  if (p.minus.empty()) return Region::kPositiveOrthant;
  double max_plus = -std::numeric_limits<double>::infinity();
  double max_minus = -std::numeric_limits<double>::infinity();
  for (int i : p.plus) max_plus = std::max(max_plus, alpha[i]);
  for (int j : p.minus) max_minus = std::max(max_minus, alpha[j]);
  if (!p.plus.empty() && max_plus + max_minus > kTol) {
    return Region::kUnbounded;
  }
  // Bounded alpha has all of one side nonpositive; plus side wins ties.
  if (max_minus <= kTol) return Region::kBPlus;
  return Region::kBMinus;
}

AlphaVector MakeAlpha(std::vector<double> values, const Partition& p) {
  AlphaVector a;
  a.region = ClassifyAlpha(values, p);
  a.values = std::move(values);
  return a;
}

bool IsUnboundedOn(std::span<const double> alpha, std::span<const int> s,
                   const Partition& p) {
  double max_plus = -std::numeric_limits<double>::infinity();
  double max_minus = -std::numeric_limits<double>::infinity();
  for (int i : s) {
    if (p.IsMinus(i)) {
      max_minus = std::max(max_minus, alpha[i]);
    } else {
      max_plus = std::max(max_plus, alpha[i]);
    }
  }
  return max_plus + max_minus > kTol;
}

GValue EvalG(const AlphaVector& alpha, std::span<const int> s,
             const Partition& p) {
  CheckDims(alpha.values, p);
  for (int i : s) {
    if (i < 0 || i >= p.n) throw InputError("subset index out of range");
  }
  if (IsUnboundedOn(alpha.values, s, p)) return GValue::Unbounded();
  // When bounded on s, one side of s carries only nonpositive multipliers,
  // so clipping at zero selects the right side automatically.
  double m = 0.0;
  for (int i : s) m = std::max(m, alpha.values[i]);
  return {-m * m / 4.0};
}

double IncrementRho(const AlphaVector& alpha, int i, std::span<const int> s,
                    const Partition& p) {
  if (std::find(s.begin(), s.end(), i) != s.end()) {
    throw InputError("increment index " + std::to_string(i) +
                     " already in the set");
  }
  if (i < 0 || i >= p.n) throw InputError("increment index out of range");
  std::vector<int> with(s.begin(), s.end());
  with.push_back(i);
  const GValue a = EvalG(alpha, with, p);
  const GValue b = EvalG(alpha, s, p);
  if (a.IsUnbounded() || b.IsUnbounded()) {
    throw RegionError("increment of an unbounded set function");
  }
  return a.value - b.value;
}

std::vector<double> GTable(const AlphaVector& alpha, const Partition& p) {
  if (p.n > 20) throw CapacityError("exhaustive table limited to n <= 20");
  const unsigned long long count = 1ULL << p.n;
  std::vector<double> table(count);
  for (unsigned long long mask = 0; mask < count; ++mask) {
    const GValue g = EvalG(alpha, MaskToSet(mask, p.n), p);
    if (g.IsUnbounded()) {
      throw RegionError("g is unbounded on " + FormatSet(MaskToSet(mask, p.n)));
    }
    table[mask] = g.value;
  }
  return table;
}

bool CheckSupermodularTable(std::span<const double> table, int n) {
  if (n > 20) throw CapacityError("exhaustive check limited to n <= 20");
  if (table.size() != (1ULL << n)) throw InputError("table size is not 2^n");
  // Local form: rho(i,S) <= rho(i,S+k) for every S and distinct i,k not in
  // S. Chaining these steps gives rho(i,S) <= rho(i,T) for all S ⊆ T.
  const unsigned long long count = 1ULL << n;
  for (unsigned long long s = 0; s < count; ++s) {
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1ULL) continue;
      const double rho_s = table[s | 1ULL << i] - table[s];
      for (int k = 0; k < n; ++k) {
        if (k == i || (s >> k & 1ULL)) continue;
        const unsigned long long t = s | 1ULL << k;
        const double rho_t = table[t | 1ULL << i] - table[t];
        if (rho_s > rho_t + kTol) return false;
      }
    }
  }
  return true;
}

bool CheckSupermodular(const AlphaVector& alpha, const Partition& p) {
  if (p.n > 20) throw CapacityError("exhaustive check limited to n <= 20");
  return CheckSupermodularTable(GTable(alpha, p), p.n);
}

}  // namespace rankone
