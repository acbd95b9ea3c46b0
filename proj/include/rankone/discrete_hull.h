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

// Linear inequalities for the epigraph of g_alpha over {0,1}^n, the greedy
// primal/dual pair for its convex envelope, and linear optimization over X.

#ifndef RANKONE_DISCRETE_HULL_H_
#define RANKONE_DISCRETE_HULL_H_

#include <span>
#include <utility>
#include <vector>

#include "rankone/core_types.h"
#include "rankone/set_function.h"

namespace rankone {

// t >= constant + coeff_x . x
struct LinearIneq {
  std::vector<double> coeff_x;
  double constant = 0.0;

  double Rhs(std::span<const double> x) const;
};

struct LambdaWeights {
  // Strictly positive weights keyed by sorted original-index sets.
  std::vector<std::pair<IndexSet, double>> entries;

  double Total() const;
  // sum of weights of sets containing each index.
  std::vector<double> Coverage(int n) const;
  // Weight of a set, 0 when absent.
  double WeightOf(const IndexSet& s) const;
};

struct DualCertificate {
  std::vector<double> mu;
  double gamma = 0.0;
};

struct DualityReport {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  // Sets with positive weight whose dual constraint is not tight.
  std::vector<IndexSet> cs_violations;
};

struct LinearOptResult {
  double value = 0.0;
  std::vector<int> x;
};

// Multipliers that actually enter g: max(alpha, 0). Throws RegionError when
// alpha is unbounded for the partition.
std::vector<double> EffectiveAlpha(const AlphaVector& alpha,
                                   const Partition& p);

// Supermodular inequality t >= g(S) + sum_{i not in S} c_i x_i
// - sum_{i in S} c_i (1 - x_i) from a 2^n table. Variant 1 takes the
// increment of i outside S at S and inside S at N \ i; variant 2 takes
// them at the empty set and at S \ i.
LinearIneq SupermodularIneqFromTable(std::span<const double> table, int n,
                                     std::span<const int> s, int variant);

LinearIneq SupermodularIneq(std::span<const int> s, const AlphaVector& alpha,
                            int variant, const Partition& p);

// Ascending order of alpha with ties broken by index.
std::vector<int> AscendingOrder(std::span<const double> alpha);

// The n facets in sorted form, mapped back to original indices.
std::vector<LinearIneq> SortedFacets(const AlphaVector& alpha,
                                     const Partition& p);

// Max of the sorted facets at x: the convex envelope of g at x.
double EnvelopeValue(std::span<const double> x, std::span<const double> alpha);

// Critical position: smallest k in 0..n with x over sorted positions > k
// summing to at most one. Positions are 1-based, 0 means "none".
int CriticalPosition(std::span<const double> x, std::span<const int> order);

// Greedy optimal weights for the envelope LP; alpha must be nonnegative.
LambdaWeights GreedyPrimal(std::span<const double> x,
                           std::span<const double> alpha);

DualCertificate MakeDualCertificate(std::span<const double> x,
                                    std::span<const double> alpha);

DualityReport VerifyStrongDuality(std::span<const double> x,
                                  std::span<const double> alpha);

// min beta'x + g(x) over x in {0,1}^n in linear time.
LinearOptResult MinLinearOverX(std::span<const double> alpha,
                               std::span<const double> beta,
                               const Partition& p);

}  // namespace rankone

#endif  // RANKONE_DISCRETE_HULL_H_
