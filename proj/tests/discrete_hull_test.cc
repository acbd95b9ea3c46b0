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

#include "rankone/discrete_hull.h"

#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "rankone/lp_oracle.h"

namespace rankone {
namespace {

double Cost(const std::vector<double>& alpha, unsigned long long mask) {
  double m = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (mask >> i & 1ULL) m = std::max(m, alpha[i]);
  }
  return -m * m / 4.0;
}

// Envelope LP over all 2^n subset weights, solved by the test simplex.
double ExhaustiveLpValue(const std::vector<double>& x,
                         const std::vector<double>& alpha) {
  const int n = static_cast<int>(x.size());
  const int cols = 1 << n;
  lp_oracle::DenseMatrix a(n + 1, std::vector<double>(cols, 0.0));
  std::vector<double> b(n + 1), c(cols);
  for (int s = 0; s < cols; ++s) {
    a[0][s] = 1.0;
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) a[i + 1][s] = 1.0;
    }
    c[s] = Cost(alpha, s);
  }
  b[0] = 1.0;
  for (int i = 0; i < n; ++i) b[i + 1] = x[i];
  const auto sol = lp_oracle::SimplexStandardForm(a, b, c);
  EXPECT_TRUE(sol.has_value());
  return sol ? sol->value : 0.0;
}

void ExpectIneq(const LinearIneq& ineq, double constant,
                const std::vector<double>& coeff) {
  EXPECT_NEAR(ineq.constant, constant, 1e-12);
  ASSERT_EQ(ineq.coeff_x.size(), coeff.size());
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    EXPECT_NEAR(ineq.coeff_x[i], coeff[i], 1e-12) << "i=" << i;
  }
}

TEST(SupermodularIneqTest, Examples) {
  const Partition pos = Partition::AllPlus(2);
  const AlphaVector a = MakeAlpha({2, 3}, pos);
  ExpectIneq(SupermodularIneq(std::vector<int>{}, a, 1, pos), 0.0,
             {-1.0, -9.0 / 4});
  ExpectIneq(SupermodularIneq(std::vector<int>{0}, a, 1, pos), -1.0,
             {0.0, -5.0 / 4});
  const Partition one = Partition::AllPlus(1);
  const double s = 1.7;
  ExpectIneq(SupermodularIneq(std::vector<int>{0}, MakeAlpha({s}, one), 1, one),
             0.0, {-s * s / 4});
  ExpectIneq(SupermodularIneq(std::vector<int>{0}, MakeAlpha({s}, one), 2, one),
             0.0, {-s * s / 4});
}

TEST(SupermodularIneqTest, ValidAtIntegerPoints) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 3);
  const Partition p = Partition::FromMinus(4, {2});
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> alpha = {u(rng), u(rng), 0, u(rng)};
    alpha[2] = -5.0;
    const AlphaVector a = MakeAlpha(alpha, p);
    const std::vector<double> table = GTable(a, p);
    for (unsigned long long s = 0; s < 16; ++s) {
      for (int variant : {1, 2}) {
        const LinearIneq ineq =
            SupermodularIneq(MaskToSet(s, 4), a, variant, p);
        for (unsigned long long z = 0; z < 16; ++z) {
          std::vector<double> x(4);
          for (int i = 0; i < 4; ++i) x[i] = z >> i & 1ULL;
          EXPECT_LE(ineq.Rhs(x), table[z] + 1e-12);
        }
        // Tight at S itself.
        std::vector<double> xs(4);
        for (int i = 0; i < 4; ++i) xs[i] = s >> i & 1ULL;
        EXPECT_NEAR(ineq.Rhs(xs), table[s], 1e-12);
      }
    }
  }
}

TEST(SortedFacetsTest, Examples) {
  const Partition pos = Partition::AllPlus(2);
  const auto f = SortedFacets(MakeAlpha({2, 3}, pos), pos);
  ASSERT_EQ(f.size(), 2u);
  ExpectIneq(f[0], 0.0, {-1.0, -9.0 / 4});
  ExpectIneq(f[1], -1.0, {0.0, -5.0 / 4});
  const Partition one = Partition::AllPlus(1);
  const auto g = SortedFacets(MakeAlpha({4.0}, one), one);
  ASSERT_EQ(g.size(), 1u);
  ExpectIneq(g[0], 0.0, {-4.0});
  const Partition three = Partition::AllPlus(3);
  for (const auto& h : SortedFacets(MakeAlpha({0, 0, 0}, three), three)) {
    ExpectIneq(h, 0.0, {0, 0, 0});
  }
}

TEST(SortedFacetsTest, UnsortedInputMapsBack) {
  const Partition pos = Partition::AllPlus(2);
  const auto f = SortedFacets(MakeAlpha({3, 2}, pos), pos);
  ExpectIneq(f[0], 0.0, {-9.0 / 4, -1.0});
  ExpectIneq(f[1], -1.0, {-5.0 / 4, 0.0});
}

TEST(GreedyPrimalTest, FiveIndexExample) {
  const std::vector<double> x = {1, 0.2, 0.5, 0.6, 0.3};
  const std::vector<double> alpha = {1, 2, 3, 4, 5};
  EXPECT_EQ(CriticalPosition(x, AscendingOrder(alpha)), 3);
  const LambdaWeights w = GreedyPrimal(x, alpha);
  ASSERT_EQ(w.entries.size(), 5u);
  // 1-based sets {1,2,3,5}, {1,3,5}, {1,3,4}, {1,4}, {1,3}.
  EXPECT_NEAR(w.WeightOf({0, 1, 2, 4}), 0.2, 1e-12);
  EXPECT_NEAR(w.WeightOf({0, 2, 4}), 0.1, 1e-12);
  EXPECT_NEAR(w.WeightOf({0, 2, 3}), 0.1, 1e-12);
  EXPECT_NEAR(w.WeightOf({0, 3}), 0.5, 1e-12);
  EXPECT_NEAR(w.WeightOf({0, 2}), 0.1, 1e-12);
  EXPECT_NEAR(w.Total(), 1.0, 1e-12);
  const auto cover = w.Coverage(5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(cover[i], x[i], 1e-12);
}

TEST(GreedyPrimalTest, TrivialCases) {
  const LambdaWeights zero =
      GreedyPrimal(std::vector<double>{0, 0, 0}, std::vector<double>{1, 2, 3});
  ASSERT_EQ(zero.entries.size(), 1u);
  EXPECT_TRUE(zero.entries[0].first.empty());
  EXPECT_DOUBLE_EQ(zero.entries[0].second, 1.0);
  const LambdaWeights ones =
      GreedyPrimal(std::vector<double>{1, 1}, std::vector<double>{1, 2});
  ASSERT_EQ(ones.entries.size(), 1u);
  EXPECT_EQ(ones.entries[0].first, (IndexSet{0, 1}));
  EXPECT_DOUBLE_EQ(ones.entries[0].second, 1.0);
  EXPECT_NEAR(ExhaustiveLpValue({1, 1}, {1, 2}), Cost({1, 2}, 3), 1e-12);
  EXPECT_THROW(GreedyPrimal(std::vector<double>{1.5}, std::vector<double>{1}),
               InputError);
}

TEST(GreedyPrimalTest, RandomInvariants) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> dim(1, 9);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = dim(rng);
    std::vector<double> x(n), alpha(n);
    for (int i = 0; i < n; ++i) {
      x[i] = (rng() % 5 == 0) ? double(rng() % 2) : u(rng);
      alpha[i] = 4 * u(rng);
    }
    const LambdaWeights w = GreedyPrimal(x, alpha);
    EXPECT_LE(w.entries.size(), static_cast<std::size_t>(2 * n + 1));
    EXPECT_NEAR(w.Total(), 1.0, 1e-12);
    const auto cover = w.Coverage(n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(cover[i], x[i], 1e-12);
    // Tight families: exactly one position beyond the critical one, or the
    // critical position and nothing beyond it.
    const auto order = AscendingOrder(alpha);
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order[k]] = k + 1;
    const int ell = CriticalPosition(x, order);
    for (const auto& [set, weight] : w.entries) {
      EXPECT_GT(weight, 0.0);
      int beyond = 0, top = 0;
      for (int i : set) {
        beyond += pos[i] > ell;
        top = std::max(top, pos[i]);
      }
      EXPECT_TRUE(beyond == 1 || (beyond == 0 && top == ell))
          << "set " << FormatSet(set) << " ell=" << ell;
    }
  }
}

TEST(DualCertificateTest, Examples) {
  const DualCertificate c =
      MakeDualCertificate(std::vector<double>{1, 0.2, 0.5, 0.6, 0.3},
                          std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(c.gamma, -9.0 / 4);
  const std::vector<double> mu = {0, 0, 0, -7.0 / 4, -4};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(c.mu[i], mu[i]);

  const DualCertificate s = MakeDualCertificate(
      std::vector<double>{0.2, 0.3, 0.1}, std::vector<double>{1, 2, 3});
  EXPECT_EQ(s.gamma, 0.0);
  EXPECT_DOUBLE_EQ(s.mu[0], -0.25);
  EXPECT_DOUBLE_EQ(s.mu[1], -1.0);
  EXPECT_DOUBLE_EQ(s.mu[2], -2.25);

  const DualCertificate one =
      MakeDualCertificate(std::vector<double>{0.5}, std::vector<double>{2});
  EXPECT_EQ(one.gamma, 0.0);
  EXPECT_DOUBLE_EQ(one.mu[0], -1.0);
}

TEST(DualCertificateTest, FeasibleOverAllSubsets) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> x(n), alpha(n);
      for (int i = 0; i < n; ++i) {
        x[i] = u(rng);
        alpha[i] = 3 * u(rng);
      }
      const DualCertificate c = MakeDualCertificate(x, alpha);
      EXPECT_LE(c.gamma, 0.0);
      for (unsigned long long s = 0; s < (1ULL << n); ++s) {
        double lhs = c.gamma;
        for (int i = 0; i < n; ++i) {
          if (s >> i & 1ULL) lhs += c.mu[i];
        }
        ASSERT_LE(lhs, Cost(alpha, s) + 1e-12) << "n=" << n << " s=" << s;
      }
    }
  }
}

TEST(VerifyStrongDualityTest, FiveIndexExampleAndZero) {
  const DualityReport r =
      VerifyStrongDuality(std::vector<double>{1, 0.2, 0.5, 0.6, 0.3},
                          std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_NEAR(r.primal_obj, r.dual_obj, 1e-12);
  EXPECT_TRUE(r.cs_violations.empty());
  const DualityReport z =
      VerifyStrongDuality(std::vector<double>{0, 0}, std::vector<double>{1, 2});
  EXPECT_EQ(z.primal_obj, 0.0);
  EXPECT_EQ(z.dual_obj, 0.0);
}

TEST(VerifyStrongDualityTest, RandomAgainstExhaustiveLp) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 6;
    std::vector<double> x(n), alpha(n);
    for (int i = 0; i < n; ++i) {
      x[i] = u(rng);
      alpha[i] = 3 * u(rng);
    }
    const DualityReport r = VerifyStrongDuality(x, alpha);
    EXPECT_TRUE(r.cs_violations.empty());
    const double lp = ExhaustiveLpValue(x, alpha);
    EXPECT_NEAR(r.primal_obj, lp, 1e-8);
    EXPECT_NEAR(r.dual_obj, lp, 1e-8);
    EXPECT_NEAR(EnvelopeValue(x, alpha), lp, 1e-8);
  }
}

TEST(EnvelopeValueTest, MaxOfFacetsEqualsLpUpToTen) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n = 1; n <= 10; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<double> x(n), alpha(n);
      for (int i = 0; i < n; ++i) {
        x[i] = u(rng);
        alpha[i] = 2 * u(rng);
      }
      const Partition p = Partition::AllPlus(n);
      double facet_max = -1e300;
      for (const auto& f : SortedFacets(MakeAlpha(alpha, p), p)) {
        facet_max = std::max(facet_max, f.Rhs(x));
      }
      const double lp = ExhaustiveLpValue(x, alpha);
      EXPECT_NEAR(facet_max, lp, 1e-8);
      EXPECT_NEAR(EnvelopeValue(x, alpha), lp, 1e-8);
    }
  }
}

TEST(MinLinearOverXTest, Examples) {
  const Partition p = Partition::AllPlus(2);
  LinearOptResult r =
      MinLinearOverX(std::vector<double>{4, 0}, std::vector<double>{1, 1}, p);
  EXPECT_DOUBLE_EQ(r.value, -3.0);
  EXPECT_EQ(r.x, (std::vector<int>{1, 0}));
  r = MinLinearOverX(std::vector<double>{0, 0}, std::vector<double>{1, 2}, p);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.x, (std::vector<int>{0, 0}));
  r = MinLinearOverX(std::vector<double>{2, 2}, std::vector<double>{-1, -1}, p);
  EXPECT_DOUBLE_EQ(r.value, -3.0);
  EXPECT_EQ(r.x, (std::vector<int>{1, 1}));
  EXPECT_THROW(
      MinLinearOverX(std::vector<double>{1, 1}, std::vector<double>{0, 0},
                     Partition::FromMinus(2, {1})),
      RegionError);
}

TEST(MinLinearOverXTest, AgreesWithEnumeration) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n = 1; n <= 15; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      IndexSet minus;
      for (int i = 0; i < n; ++i) {
        if (rng() % 3 == 0) minus.push_back(i);
      }
      const Partition p = Partition::FromMinus(n, minus);
      std::vector<double> alpha(n), beta(n);
      for (int i = 0; i < n; ++i) beta[i] = u(rng);
      for (int i : p.plus) alpha[i] = 2 + 2 * u(rng);
      for (int j : p.minus) alpha[j] = -5 + u(rng);
      const LinearOptResult r = MinLinearOverX(alpha, beta, p);
      double best = 1e300;
      for (unsigned long long z = 0; z < (1ULL << n); ++z) {
        double v = 0.0, m = 0.0;
        for (int i = 0; i < n; ++i) {
          if (z >> i & 1ULL) {
            v += beta[i];
            m = std::max(m, alpha[i]);
          }
        }
        best = std::min(best, v - m * m / 4.0);
      }
      EXPECT_NEAR(r.value, best, 1e-12) << "n=" << n;
      double check = 0.0, m = 0.0;
      for (int i = 0; i < n; ++i) {
        if (r.x[i]) {
          check += beta[i];
          m = std::max(m, alpha[i]);
        }
      }
      EXPECT_NEAR(check - m * m / 4.0, r.value, 1e-12);
    }
  }
}

}  // namespace
}  // namespace rankone
