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

#ifndef RANKONE_CORE_TYPES_H_
#define RANKONE_CORE_TYPES_H_

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankone {

// Library-wide absolute tolerance for bound and sign comparisons.
inline constexpr double kTol = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using IndexSet = std::vector<int>;

// Error families. The CLI maps them to exit codes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sign pattern of a rank-one form: the quadratic is (y(plus) - y(minus))^2.
struct Partition {
  int n = 0;
  IndexSet plus;
  IndexSet minus;

  // All indices in `plus`.
  static Partition AllPlus(int n);
  // Builds a partition from the minus set; everything else is plus.
  static Partition FromMinus(int n, const IndexSet& minus);
  // Throws InputError unless the invariants hold.
  void Validate() const;
  bool IsPositive() const { return minus.empty(); }
  bool IsMinus(int i) const;
  // Roles of plus and minus exchanged.
  Partition Swapped() const;
};

struct FractionalPoint {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;

  int size() const { return static_cast<int>(x.size()); }
  // Throws InputError on length mismatch or out-of-bounds entries.
  void Validate() const;
};

// a/b for a,b >= 0 with a/0 = +inf if a > 0 and 0/0 = 0.
double SafeRatio(double numerator, double denominator);

double SumOver(std::span<const double> v, std::span<const int> s);
// Max over s; 0 for the empty set.
double MaxOver(std::span<const double> v, std::span<const int> s);
// Index of the max over s, lowest index on ties; -1 for the empty set.
int ArgMaxOver(std::span<const double> v, std::span<const int> s);

// Bitmask <-> index set helpers for exhaustive enumeration.
IndexSet MaskToSet(unsigned long long mask, int n);
unsigned long long SetToMask(std::span<const int> s);

// Sorted complement of s in {0..n-1}.
IndexSet Complement(std::span<const int> s, int n);

std::string FormatSet(std::span<const int> s);

}  // namespace rankone

#endif  // RANKONE_CORE_TYPES_H_
