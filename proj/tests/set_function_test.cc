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
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace rankone {
namespace {

// Direct minimization of -alpha'y + (y(S+) - y(S-))^2 over y >= 0 supported
// on S, restricted to y with at most two nonzeros on a fine grid.
double GridG(const std::vector<double>& alpha, const IndexSet& s,
             const Partition& p) {
  double best = 0.0;
  for (int i : s) {
    for (int j : s) {
      for (int a = 0; a <= 200; ++a) {
        for (int b = 0; b <= (i == j ? 0 : 200); ++b) {
          const double yi = a * 0.02, yj = b * 0.02;
          const double q =
              (p.IsMinus(i) ? -yi : yi) + (p.IsMinus(j) ? -yj : yj);
          best = std::min(best, -alpha[i] * yi - alpha[j] * yj + q * q);
        }
      }
    }
  }
  return best;
}

// rho(i,S) <= rho(i,T) over every chain S ⊆ T ⊆ N \ i.
bool FullTripleCheck(const std::vector<double>& table, int n) {
  const unsigned long long count = 1ULL << n;
  for (int i = 0; i < n; ++i) {
    const unsigned long long rest = (count - 1) & ~(1ULL << i);
    for (unsigned long long t = rest;; t = (t - 1) & rest) {
      for (unsigned long long s = t;; s = (s - 1) & t) {
        const double rs = table[s | 1ULL << i] - table[s];
        const double rt = table[t | 1ULL << i] - table[t];
        if (rs > rt + 1e-9) return false;
        if (s == 0) break;
      }
      if (t == 0) break;
    }
  }
  return true;
}

TEST(ClassifyAlphaTest, Examples) {
  const Partition p = Partition::FromMinus(2, {1});
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{1, -2}, p), Region::kBPlus);
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{1, -0.5}, p), Region::kUnbounded);
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{-1, 0.5}, p), Region::kBMinus);
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{-1, -1}, p), Region::kBPlus);
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{1, -1}, p), Region::kBPlus);
  EXPECT_EQ(ClassifyAlpha(std::vector<double>{3, 2}, Partition::AllPlus(2)),
            Region::kPositiveOrthant);
  EXPECT_THROW(ClassifyAlpha(std::vector<double>{1}, p), InputError);
}

TEST(EvalGTest, Examples) {
  const Partition pos = Partition::AllPlus(2);
  const AlphaVector a = MakeAlpha({2, 3}, pos);
  EXPECT_DOUBLE_EQ(EvalG(a, std::vector<int>{0, 1}, pos).value, -9.0 / 4);
  EXPECT_EQ(EvalG(a, std::vector<int>{}, pos).value, 0.0);
  const Partition mixed = Partition::FromMinus(2, {1});
  AlphaVector forced{{1, -0.5}, Region::kBPlus};
  EXPECT_TRUE(EvalG(forced, std::vector<int>{0, 1}, mixed).IsUnbounded());
  EXPECT_DOUBLE_EQ(EvalG(forced, std::vector<int>{0}, mixed).value, -0.25);
}

TEST(EvalGTest, ClippingInvariance) {
  const Partition pos = Partition::AllPlus(3);
  const AlphaVector a{{-2, 1, -5}, Region::kPositiveOrthant};
  const AlphaVector clipped{{0, 1, 0}, Region::kPositiveOrthant};
  for (unsigned long long m = 0; m < 8; ++m) {
    EXPECT_EQ(EvalG(a, MaskToSet(m, 3), pos).value,
              EvalG(clipped, MaskToSet(m, 3), pos).value);
  }
}

TEST(EvalGTest, MatchesGridMinimization) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Partition p = Partition::FromMinus(3, {2});
    // alpha in B+: nonnegative on plus, below -max(plus) on minus.
    std::vector<double> alpha = {u(rng), u(rng), 0};
    alpha[2] = -std::max(alpha[0], alpha[1]) - u(rng);
    const AlphaVector a = MakeAlpha(alpha, p);
    ASSERT_EQ(a.region, Region::kBPlus);
    for (unsigned long long m = 0; m < 8; ++m) {
      const IndexSet s = MaskToSet(m, 3);
      EXPECT_NEAR(EvalG(a, s, p).value, GridG(alpha, s, p), 1e-3);
    }
  }
}

TEST(EvalGTest, MonotoneForBPlus) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 2);
  const Partition p = Partition::FromMinus(5, {1, 4});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> alpha(5);
    for (int i : p.plus) alpha[i] = u(rng);
    for (int j : p.minus) alpha[j] = -2.0 - u(rng);
    const AlphaVector a = MakeAlpha(alpha, p);
    for (unsigned long long m = 0; m < 32; ++m) {
      for (int i = 0; i < 5; ++i) {
        if (m >> i & 1ULL) continue;
        EXPECT_LE(EvalG(a, MaskToSet(m | 1ULL << i, 5), p).value,
                  EvalG(a, MaskToSet(m, 5), p).value);
      }
    }
  }
}

TEST(IncrementRhoTest, Examples) {
  const Partition pos = Partition::AllPlus(2);
  const AlphaVector a = MakeAlpha({2, 3}, pos);
  EXPECT_DOUBLE_EQ(IncrementRho(a, 1, std::vector<int>{0}, pos), -5.0 / 4);
  EXPECT_DOUBLE_EQ(IncrementRho(a, 0, std::vector<int>{1}, pos), 0.0);
  const AlphaVector b = MakeAlpha({2, 0}, pos);
  EXPECT_DOUBLE_EQ(IncrementRho(b, 1, std::vector<int>{}, pos), 0.0);
  EXPECT_THROW(IncrementRho(a, 0, std::vector<int>{0}, pos), InputError);
  const Partition mixed = Partition::FromMinus(2, {1});
  AlphaVector forced{{1, -0.5}, Region::kUnbounded};
  EXPECT_THROW(IncrementRho(forced, 1, std::vector<int>{0}, mixed),
               RegionError);
}

TEST(CheckSupermodularTest, Examples) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 2);
  const Partition p = Partition::FromMinus(4, {0, 3});
  std::vector<double> alpha(4);
  for (int i : p.plus) alpha[i] = u(rng);
  for (int j : p.minus) alpha[j] = -3.0;
  EXPECT_TRUE(CheckSupermodular(MakeAlpha(alpha, p), p));
  EXPECT_TRUE(CheckSupermodular(MakeAlpha({1, 2, 3}, Partition::AllPlus(3)),
                                Partition::AllPlus(3)));
  EXPECT_THROW(CheckSupermodular(MakeAlpha(std::vector<double>(21, 1.0),
                                           Partition::AllPlus(21)),
                                 Partition::AllPlus(21)),
               CapacityError);
}

TEST(CheckSupermodularTest, HandBuiltTables) {
  // Table index is the bitmask; bit 0 is element 1, bit 1 is element 2.
  // Increments -1 then 0: increasing, hence supermodular.
  const std::vector<double> flat = {0, -1, -1, -1};
  EXPECT_TRUE(CheckSupermodularTable(flat, 2));
  EXPECT_TRUE(FullTripleCheck(flat, 2));
  // Increments -1 then -2: decreasing.
  const std::vector<double> strict = {0, -1, -1, -3};
  EXPECT_FALSE(CheckSupermodularTable(strict, 2));
  EXPECT_FALSE(FullTripleCheck(strict, 2));
}

TEST(CheckSupermodularTest, RandomAlphaAgainstTripleEnumeration) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng);
    IndexSet minus;
    for (int i = 0; i < n; ++i) {
      if (rng() & 1) minus.push_back(i);
    }
    const Partition p = Partition::FromMinus(n, minus);
    std::vector<double> alpha(n);
    for (double& a : alpha) a = u(rng);
    // Push the draw into the bounded region by shifting the minus side.
    if (!p.plus.empty() && !p.minus.empty()) {
      double mp = -1e9;
      for (int i : p.plus) mp = std::max(mp, alpha[i]);
      for (int j : p.minus) alpha[j] = std::min(alpha[j], -mp);
    }
    const AlphaVector a = MakeAlpha(alpha, p);
    ASSERT_NE(a.region, Region::kUnbounded);
    const std::vector<double> table = GTable(a, p);
    EXPECT_TRUE(FullTripleCheck(table, n));
    EXPECT_TRUE(CheckSupermodular(a, p));
  }
}

TEST(GTableTest, UnboundedThrows) {
  const Partition p = Partition::FromMinus(2, {1});
  AlphaVector a{{1, 1}, Region::kUnbounded};
  EXPECT_THROW(GTable(a, p), RegionError);
}

}  // namespace
}  // namespace rankone
