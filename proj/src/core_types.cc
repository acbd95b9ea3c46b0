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

#include "rankone/core_types.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rankone {
namespace {

void CheckIndex(int i, std::size_t len) {
  if (i < 0 || static_cast<std::size_t>(i) >= len) {
    throw InputError("index " + std::to_string(i) + " out of range [0," +
                     std::to_string(len) + ")");
  }
}

bool StrictlyIncreasing(const IndexSet& s) {
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (s[k] <= s[k - 1]) return false;
  }
  return true;
}

}  // namespace

Partition Partition::AllPlus(int n) {
  Partition p;
  p.n = n;
  p.plus.resize(n);
  for (int i = 0; i < n; ++i) p.plus[i] = i;
  return p;
}

Partition Partition::FromMinus(int n, const IndexSet& minus) {
  Partition p;
  p.n = n;
  p.minus = minus;
  std::sort(p.minus.begin(), p.minus.end());
  p.plus = Complement(p.minus, n);
  p.Validate();
  return p;
}

void Partition::Validate() const {
  if (n < 0) throw InputError("negative dimension");
  if (!StrictlyIncreasing(plus) || !StrictlyIncreasing(minus)) {
    throw InputError("partition sets must be strictly increasing");
  }
  std::vector<int> seen(n, 0);
  for (int i : plus) {
    CheckIndex(i, n);
    ++seen[i];
  }
  for (int i : minus) {
    CheckIndex(i, n);
    ++seen[i];
  }
  for (int i = 0; i < n; ++i) {
    if (seen[i] != 1) {
      throw InputError("index " + std::to_string(i) +
                       " must appear in exactly one side of the partition");
    }
  }
}

bool Partition::IsMinus(int i) const {
  return std::binary_search(minus.begin(), minus.end(), i);
}

Partition Partition::Swapped() const {
  Partition p;
  p.n = n;
  p.plus = minus;
  p.minus = plus;
  return p;
}

void FractionalPoint::Validate() const {
  if (x.size() != y.size()) throw InputError("x and y lengths differ");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -kTol && x[i] <= 1.0 + kTol)) {
      throw InputError("x[" + std::to_string(i) + "] outside [0,1]");
    }
    if (!(y[i] >= -kTol)) {
      throw InputError("y[" + std::to_string(i) + "] is negative");
    }
  }
  if (std::isnan(t)) throw InputError("t is NaN");
}

double SafeRatio(double numerator, double denominator) {
  if (denominator > 0.0) return numerator / denominator;
  if (numerator > 0.0) return std::numeric_limits<double>::infinity();
  return 0.0;
}

double SumOver(std::span<const double> v, std::span<const int> s) {
  double total = 0.0;
  for (int i : s) {
    CheckIndex(i, v.size());
    total += v[i];
  }
  return total;
}

double MaxOver(std::span<const double> v, std::span<const int> s) {
  const int arg = ArgMaxOver(v, s);
  return arg < 0 ? 0.0 : v[arg];
}

int ArgMaxOver(std::span<const double> v, std::span<const int> s) {
  int best = -1;
  for (int i : s) {
    CheckIndex(i, v.size());
    if (best < 0 || v[i] > v[best] || (v[i] == v[best] && i < best)) {
      best = i;
    }
  }
  return best;
}

IndexSet MaskToSet(unsigned long long mask, int n) {
  IndexSet s;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1ULL) s.push_back(i);
  }
  return s;
}

unsigned long long SetToMask(std::span<const int> s) {
  unsigned long long mask = 0;
  for (int i : s) mask |= 1ULL << i;
  return mask;
}

IndexSet Complement(std::span<const int> s, int n) {
  std::vector<char> in(n, 0);
  for (int i : s) {
    CheckIndex(i, n);
    in[i] = 1;
  }
  IndexSet out;
  for (int i = 0; i < n; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

std::string FormatSet(std::span<const int> s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) os << ',';
    os << s[k];
  }
  os << '}';
  return os.str();
}

}  // namespace rankone
