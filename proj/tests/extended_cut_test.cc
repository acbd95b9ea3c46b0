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

#include "rankone/extended_cut.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rankone/lifted_cuts.h"
#include "rankone/relaxation.h"

namespace rankone {
namespace {

// Every way to split `side` into (L, R, U), indexed by a base-3 code.
std::vector<LiftedCut> AllCuts(CutSign sign, const IndexSet& side) {
  std::vector<LiftedCut> out;
  int total = 1;
  for (std::size_t k = 0; k < side.size(); ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    LiftedCut cut;
    cut.sign = sign;
    int c = code;
    for (int i : side) {
      (c % 3 == 0 ? cut.L : c % 3 == 1 ? cut.R : cut.U).push_back(i);
      c /= 3;
    }
    out.push_back(cut);
  }
  return out;
}

// Model with x and y fixed by bounds and a single row t >= (f'y)^2.
struct FixedRow {
  ConicModel model;
  RowContext row;
};

FixedRow MakeFixedRow(const std::vector<double>& f,
                      const std::vector<double>& x,
                      const std::vector<double>& y) {
  FixedRow fr;
  std::vector<int> xs, ys;
  for (std::size_t i = 0; i < f.size(); ++i) {
    xs.push_back(fr.model.AddVar("x" + std::to_string(i), x[i], x[i]));
    ys.push_back(fr.model.AddVar("y" + std::to_string(i), y[i], y[i]));
  }
  const int t = fr.model.AddVar("t", 0, kInfinity, 1.0);
  fr.row = MakeRowContext(f, xs, ys, t);
  return fr;
}

TEST(MakeRowContextTest, DropsZeroCoefficients) {
  const RowContext row =
      MakeRowContext(std::vector<double>{1, 0, -2}, std::vector<int>{0, 1, 2},
                     std::vector<int>{3, 4, 5}, 6);
  EXPECT_EQ(row.f, (std::vector<double>{1, -2}));
  EXPECT_EQ(row.x_vars, (std::vector<int>{0, 2}));
  EXPECT_EQ(row.y_vars, (std::vector<int>{3, 5}));
  const Partition p = RowPartition(row);
  EXPECT_EQ(p.plus, (IndexSet{0}));
  EXPECT_EQ(p.minus, (IndexSet{1}));
  EXPECT_THROW(MakeRowContext(std::vector<double>{1}, std::vector<int>{0, 1},
                              std::vector<int>{2}, 3),
               InputError);
}

TEST(EmitExtendedCutTest, PositiveTemplateWithoutR) {
  FixedRow fr = MakeFixedRow({1, 1, 1}, {0.2, 0.3, 0.4}, {0.1, 0.2, 0.3});
  const ExtendedCutBlock blk = EmitExtendedCut(
      LiftedCut{CutSign::kPlus, {0, 1, 2}, {}, {}}, fr.row, &fr.model);
  EXPECT_EQ(blk.cones.size(), 1u);
  EXPECT_TRUE(blk.mu.empty());
  EXPECT_TRUE(blk.lambda.empty());
  EXPECT_EQ(blk.lambda0, -1);
  EXPECT_EQ(blk.mu0, -1);
  EXPECT_EQ(blk.zeta, -1);
  EXPECT_NO_THROW(fr.model.Validate());
  // t >= y(N)^2 / 1.
  const SolveResult r = SolveRelaxation(fr.model);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.36, 1e-6);
}

TEST(EmitExtendedCutTest, PositiveTemplateAllR) {
  FixedRow fr =
      MakeFixedRow({1, 1, 1, 1}, {0.2, 0.3, 0.4, 0.5}, {0.1, 0.2, 0.3, 0.1});
  const ExtendedCutBlock blk = EmitExtendedCut(
      LiftedCut{CutSign::kPlus, {}, {0, 1, 2, 3}, {}}, fr.row, &fr.model);
  EXPECT_EQ(blk.cones.size(), 5u);
  EXPECT_EQ(blk.mu.size(), 4u);
  EXPECT_TRUE(blk.lambda.empty());
  EXPECT_EQ(blk.split_vars.size(), 5u);
  EXPECT_NO_THROW(fr.model.Validate());
}

TEST(EmitExtendedCutTest, GeneralTemplateFreshVariables) {
  FixedRow fr = MakeFixedRow({1, 1, -1}, {0.5, 0.5, 0.5}, {0.4, 0.3, 0.1});
  const ExtendedCutBlock blk = EmitExtendedCut(
      LiftedCut{CutSign::kPlus, {0}, {1}, {}}, fr.row, &fr.model);
  // L term, one R term and the U term.
  EXPECT_EQ(blk.cones.size(), 3u);
  EXPECT_EQ(blk.lambda.size(), 1u);
  EXPECT_EQ(blk.mu.size(), 1u);
  EXPECT_GE(blk.lambda0, 0);
  EXPECT_GE(blk.mu0, 0);
  EXPECT_GE(blk.zeta, 0);
  EXPECT_NO_THROW(fr.model.Validate());
}

TEST(EmitExtendedCutTest, TwoVariableNegativeCase) {
  // f = (1, -1), sign +, U = {0}: t >= (y0 - y1)^2 / x0 when y0 >= y1.
  const std::vector<double> x = {0.4, 0.7}, y = {0.5, 0.2};
  FixedRow fr = MakeFixedRow({1, -1}, x, y);
  const LiftedCut cut{CutSign::kPlus, {}, {}, {0}};
  EmitExtendedCut(cut, fr.row, &fr.model);
  const SolveResult r = SolveRelaxation(fr.model);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const double expect = (y[0] - y[1]) * (y[0] - y[1]) / x[0];
  EXPECT_NEAR(r.objective, expect, 1e-6);
  const Partition p = Partition::FromMinus(2, {1});
  EXPECT_NEAR(EvalExtendedMin(x, y, cut, p), expect, 1e-9);
  EXPECT_NEAR(EvalExtendedMin(x, y, cut, p, EvalMode::kNumeric), expect, 1e-6);
}

TEST(EmitExtendedCutTest, ScalesByCoefficientMagnitude) {
  // f = (2, -3): the cut sees (2 y0, 3 y1).
  const std::vector<double> x = {0.5, 0.8}, y = {0.4, 0.1};
  FixedRow fr = MakeFixedRow({2, -3}, x, y);
  const LiftedCut cut{CutSign::kPlus, {}, {}, {0}};
  EmitExtendedCut(cut, fr.row, &fr.model);
  const SolveResult r = SolveRelaxation(fr.model);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const std::vector<double> scaled = {0.8, 0.3};
  EXPECT_NEAR(r.objective,
              EvalExtendedMin(x, scaled, cut, Partition::FromMinus(2, {1})),
              1e-6);
}

TEST(EmitExtendedCutTest, RejectsSignMismatch) {
  FixedRow fr = MakeFixedRow({1, -1}, {0.5, 0.5}, {0.1, 0.1});
  const int before = fr.model.num_vars();
  // Index 1 is on the minus side and cannot appear in a + cut.
  EXPECT_THROW(EmitExtendedCut(LiftedCut{CutSign::kPlus, {0, 1}, {}, {}},
                               fr.row, &fr.model),
               InputError);
  EXPECT_THROW(EmitExtendedCut(LiftedCut{CutSign::kMinus, {}, {0}, {}}, fr.row,
                               &fr.model),
               InputError);
  EXPECT_EQ(fr.model.num_vars(), before);
}

TEST(EvalExtendedMinTest, ClosedFormAtConditionPoint) {
  const Partition p = Partition::AllPlus(3);
  const std::vector<double> x = {0.1, 0.6, 0.3}, y = {0.5, 0.5, 0.2};
  const LiftedCut cut{CutSign::kPlus, {2}, {0, 1}, {}};
  ASSERT_TRUE(CutConditionsHold(x, y, cut, p));
  EXPECT_EQ(EvalExtendedMin(x, y, cut, p), EvalLiftedRhs(x, y, cut, p));
  EXPECT_NEAR(EvalExtendedMin(x, y, cut, p), 3.05, 0.005);
}

TEST(EvalExtendedMinTest, MinusSideDominatesAtIntegerPoint) {
  // x = (1, 1), y(N+) = 0.2 < y(N-) = 0.9: the cut reduces to t >= 0.
  const Partition p = Partition::FromMinus(2, {1});
  const std::vector<double> x = {1, 1}, y = {0.2, 0.9};
  for (const LiftedCut& cut : AllCuts(CutSign::kPlus, p.plus)) {
    EXPECT_NEAR(EvalExtendedMin(x, y, cut, p), 0.0, 1e-7) << cut.DebugString();
  }
}

TEST(EvalExtendedMinTest, FullUReducesToBase) {
  // x(U) >= 1 at an integer point gives t >= (y(N+) - y(N-))^2.
  const Partition p = Partition::FromMinus(3, {2});
  const std::vector<double> x = {1, 0, 1}, y = {0.9, 0, 0.3};
  const double base = BaseValue(y, p);
  for (const LiftedCut& cut : {LiftedCut{CutSign::kPlus, {}, {1}, {0}},
                               LiftedCut{CutSign::kPlus, {1}, {}, {0}},
                               LiftedCut{CutSign::kPlus, {}, {}, {0, 1}}}) {
    EXPECT_NEAR(EvalExtendedMin(x, y, cut, p), base, 1e-6) << cut.DebugString();
  }
}

TEST(EvalExtendedMinTest, InfeasibleWithoutUDenominator) {
  // x(U) = 0 with a positive U numerator has no feasible multipliers.
  const Partition p = Partition::FromMinus(2, {1});
  const LiftedCut cut{CutSign::kPlus, {}, {}, {0}};
  EXPECT_EQ(EvalExtendedMin(std::vector<double>{0, 0.5},
                            std::vector<double>{0.3, 0.1}, cut, p),
            kInfinity);
}

TEST(EvalExtendedMinTest, RejectsBadInput) {
  const Partition p = Partition::AllPlus(2);
  const LiftedCut cut{CutSign::kPlus, {0}, {1}, {}};
  EXPECT_THROW(EvalExtendedMin(std::vector<double>{0.5},
                               std::vector<double>{0.1}, cut, p),
               InputError);
  EXPECT_THROW(EvalExtendedMin(std::vector<double>{1.5, 0.5},
                               std::vector<double>{0.1, 0.1}, cut, p),
               InputError);
  EXPECT_THROW(EvalExtendedMin(std::vector<double>{0.5, 0.5},
                               std::vector<double>{0.1, 0.1},
                               LiftedCut{CutSign::kPlus, {0}, {}, {}}, p),
               InputError);
}

TEST(EvalExtendedMinTest, NeverCutsIntegerPoints) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0, 2);
  int evaluations = 0;
  for (int n = 1; n <= 3; ++n) {
    for (unsigned minus = 0; minus < (1u << n); ++minus) {
      IndexSet m;
      for (int i = 0; i < n; ++i) {
        if (minus >> i & 1u) m.push_back(i);
      }
      const Partition p = Partition::FromMinus(n, m);
      for (CutSign sign : {CutSign::kPlus, CutSign::kMinus}) {
        const auto cuts = AllCuts(sign, SidesFor(sign, p).side);
        for (unsigned z = 0; z < (1u << n); ++z) {
          for (int draw = 0; draw < 10; ++draw) {
            std::vector<double> x(n, 0.0), y(n, 0.0);
            for (int i = 0; i < n; ++i) {
              if (z >> i & 1u) {
                x[i] = 1.0;
                y[i] = u(rng);
              }
            }
            const double base = BaseValue(y, p);
            for (const LiftedCut& cut : cuts) {
              ASSERT_LE(EvalExtendedMin(x, y, cut, p), base + 1e-6)
                  << "n=" << n << " z=" << z << " " << cut.DebugString();
              ++evaluations;
            }
          }
        }
      }
    }
  }
  EXPECT_GT(evaluations, 0);
}

TEST(EvalExtendedMinTest, DegenerateIntegerPointStaysValid) {
  // Every x at 1 pins the optimal multipliers to their bounds.
  const Partition p = Partition::AllPlus(4);
  const std::vector<double> x = {1, 1, 1, 1};
  const std::vector<double> y = {1.1608849221007074, 1.7596069451628282,
                                 1.2075537835367252, 1.3600940308779927};
  const LiftedCut cut{CutSign::kPlus, {3}, {2}, {0, 1}};
  const double base = BaseValue(y, p);
  EXPECT_NEAR(EvalExtendedMin(x, y, cut, p), base, 1e-6 * base);
}

TEST(EvalExtendedMinTest, NumericMatchesClosedForm) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> dim(1, 5);
  int checked = 0;
  for (int trial = 0; checked < 200 && trial < 5000; ++trial) {
    const int n = dim(rng);
    IndexSet m;
    if (trial % 2) {
      for (int i = 0; i < n; ++i) {
        if (rng() & 1) m.push_back(i);
      }
    }
    const Partition p = Partition::FromMinus(n, m);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = 0.02 + 0.98 * u(rng);
      y[i] = u(rng);
    }
    const auto cut = FindLUGeneral(x, y, p);
    if (!cut) continue;
    const double closed = EvalLiftedRhs(x, y, *cut, p);
    if (!std::isfinite(closed)) continue;
    const double numeric = EvalExtendedMin(x, y, *cut, p, EvalMode::kNumeric);
    ASSERT_NEAR(numeric, closed, 1e-5 * std::max(1.0, closed))
        << "trial " << trial << " " << cut->DebugString();
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(EvalExtendedMinTest, ModelSolveMatchesEvaluation) {
  std::mt19937_64 rng(79);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<double> f(n), x(n), y(n), scaled(n);
    IndexSet minus;
    for (int i = 0; i < n; ++i) {
      f[i] = (0.5 + u(rng)) * (trial % 2 && i == n - 1 ? -1.0 : 1.0);
      if (f[i] < 0) minus.push_back(i);
      x[i] = 0.05 + 0.9 * u(rng);
      y[i] = u(rng);
      scaled[i] = std::abs(f[i]) * y[i];
    }
    const Partition p = Partition::FromMinus(n, minus);
    const CutSign sign = trial % 4 == 3 ? CutSign::kMinus : CutSign::kPlus;
    const auto cuts = AllCuts(sign, SidesFor(sign, p).side);
    const LiftedCut& cut = cuts[rng() % cuts.size()];
    const double eval = EvalExtendedMin(x, scaled, cut, p);
    if (!std::isfinite(eval)) continue;
    FixedRow fr = MakeFixedRow(f, x, y);
    EmitExtendedCut(cut, fr.row, &fr.model);
    const SolveResult r = SolveRelaxation(fr.model);
    ASSERT_EQ(r.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, eval, 1e-5 * std::max(1.0, eval))
        << "trial " << trial << " " << cut.DebugString();
  }
}

}  // namespace
}  // namespace rankone
