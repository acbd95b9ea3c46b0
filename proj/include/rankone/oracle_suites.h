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

// Randomized sweeps that compare the closed forms against independent
// oracles. Trial k draws from StreamRng(seed, k), so the parallel sweeps
// and their serial references report identical results.

#ifndef RANKONE_ORACLE_SUITES_H_
#define RANKONE_ORACLE_SUITES_H_

#include <cstdint>
#include <string>

namespace rankone {

struct OracleReport {
  std::string suite;
  long long checks = 0;
  long long violations = 0;
  double max_error = 0.0;  // worst error over the scale its tolerance uses
  std::string first_violation;

  bool ok() const { return violations == 0; }
  void Merge(const OracleReport& other);
};

enum class Exec { kParallel, kSerial };

// Greedy primal, dual certificate, best sorted facet and the exhaustive
// 2^n envelope LP agree within 1e-8 at random (x, alpha >= 0), n <= max_n.
OracleReport DualitySuite(int max_n, int trials, std::uint64_t seed,
                          Exec exec = Exec::kParallel);

// Closed-form hull value matches the concave-maximization oracle within
// 1e-3 relative. Each trial checks one point of X (random signs) and one of
// X+, n <= max_n.
OracleReport HullSuite(int max_n, int trials, std::uint64_t seed,
                       Exec exec = Exec::kParallel);

// No separated cut exceeds t by more than 1e-6 at random convex
// combinations of integer-feasible points, n <= max_n.
OracleReport ConvexCombinationSuite(int max_n, int trials, std::uint64_t seed,
                                    Exec exec = Exec::kParallel);

// The conic template value matches the closed form within 1e-5 at points
// where the separation conditions hold, n <= max_n.
OracleReport TemplateSuite(int max_n, int trials, std::uint64_t seed,
                           Exec exec = Exec::kParallel);

// Every (L, R, U) template of both signs, on every partition with
// n <= max_n and every integer support, with `draws` random y per support:
// the template minimum never exceeds the base value by more than 1e-6.
OracleReport ValiditySuite(int max_n, int draws, std::uint64_t seed,
                           Exec exec = Exec::kParallel);

// Suite names accepted by RunNamedSuite.
bool IsSuiteName(const std::string& name);

// hull = Hull + ConvexCombination, duality = Duality,
// validity = Template + Validity with max(1, trials / 10) draws per
// support. Throws InputError on an unknown name.
OracleReport RunNamedSuite(const std::string& name, int max_n, int trials,
                           std::uint64_t seed, Exec exec = Exec::kParallel);

}  // namespace rankone

#endif  // RANKONE_ORACLE_SUITES_H_
