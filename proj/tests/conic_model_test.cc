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

#include "rankone/conic_model.h"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "rankone/cqm_format.h"

namespace rankone {
namespace {

bool SameBits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void ExpectBitEqual(const ConicModel& a, const ConicModel& b) {
  ASSERT_EQ(a.num_vars(), b.num_vars());
  EXPECT_EQ(a.names, b.names);
  for (int i = 0; i < a.num_vars(); ++i) {
    EXPECT_TRUE(SameBits(a.lower[i], b.lower[i])) << i;
    EXPECT_TRUE(SameBits(a.upper[i], b.upper[i])) << i;
    EXPECT_TRUE(SameBits(a.objective[i], b.objective[i]) ||
                (a.objective[i] == 0.0 && b.objective[i] == 0.0 &&
                 !std::signbit(a.objective[i])))
        << i;
  }
  EXPECT_TRUE(SameBits(a.objective_constant, b.objective_constant));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    EXPECT_EQ(a.rows[r].sense, b.rows[r].sense);
    EXPECT_TRUE(SameBits(a.rows[r].rhs, b.rows[r].rhs));
    ASSERT_EQ(a.rows[r].terms.size(), b.rows[r].terms.size());
    for (std::size_t k = 0; k < a.rows[r].terms.size(); ++k) {
      EXPECT_EQ(a.rows[r].terms[k].first, b.rows[r].terms[k].first);
      EXPECT_TRUE(
          SameBits(a.rows[r].terms[k].second, b.rows[r].terms[k].second));
    }
  }
  EXPECT_EQ(a.cones, b.cones);
  EXPECT_EQ(a.binaries, b.binaries);
}

ConicModel PerspectiveOne() {
  ConicModel m;
  const int x = m.AddVar("x", 0, 1);
  const int y = m.AddVar("y", 0, kInfinity, -1.0);
  const int p = m.AddVar("p", 0, kInfinity, 1.0);
  m.MarkBinary(x);
  m.AddRow({{y, 1.0}, {x, -1.0}}, Sense::kLe, 0.0);
  m.AddRsoc(p, x, {y});
  return m;
}

TEST(ConicModelTest, EmptyModelHasZeroCountSections) {
  EXPECT_EQ(
      ExportModel(ConicModel{}),
      "VERSION 1\nVARS 0\nBOUNDS 0\nBIN 0\nOBJ 0 0\nLIN 0\nRSOC 0\nEND\n");
  EXPECT_EQ(ImportModel(ExportModel(ConicModel{})), ConicModel{});
}

TEST(ConicModelTest, PerspectiveModelText) {
  const ConicModel m = PerspectiveOne();
  const std::string text = ExportModel(m);
  EXPECT_NE(text.find("BIN 1\n0\n"), std::string::npos);
  EXPECT_NE(text.find("RSOC 1\n2 0 1 1\n"), std::string::npos);
  EXPECT_NE(text.find("LIN 1\nL 0 2 1 1 0 -1\n"), std::string::npos);
  EXPECT_EQ(ImportModel(text), m);
}

TEST(ConicModelTest, RandomModelsRoundTripBitExactly) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 5);
  auto real = [&]() {
    switch (coin(rng)) {
      case 0:
        return 0.1 * u(rng);
      case 1:
        return u(rng) * 1e-300;
      case 2:
        return u(rng) * 1e300;
      case 3:
        return -0.0;
      default:
        return u(rng) * 7.0;
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    ConicModel m;
    const int n = 1 + trial % 9;
    for (int i = 0; i < n; ++i) {
      const double lo = coin(rng) == 0 ? -kInfinity : -std::abs(real());
      const double hi = coin(rng) == 0 ? kInfinity : std::abs(real());
      m.AddVar("v" + std::to_string(i), std::min(lo, hi), std::max(lo, hi),
               real());
    }
    m.objective_constant = real();
    for (int r = 0; r < trial % 5; ++r) {
      LinearTerms t;
      for (int k = 0; k < 1 + r; ++k) t.emplace_back(coin(rng) % n, real());
      m.AddRow(t, static_cast<Sense>(coin(rng) % 3), real());
    }
    for (int c = 0; c < trial % 3; ++c) {
      const int u_var = m.AddVar("u" + std::to_string(c), 0.0, kInfinity);
      const int v_var = m.AddVar("w" + std::to_string(c), 0.5, 2.0);
      m.AddRsoc(u_var, v_var, {coin(rng) % n, coin(rng) % n});
    }
    if (trial % 2) m.MarkBinary(trial % n);
    const std::string text = ExportModel(m);
    const ConicModel back = ImportModel(text);
    ExpectBitEqual(m, back);
    EXPECT_EQ(ExportModel(back), text);
  }
}

TEST(ConicModelTest, ExportIsDeterministic) {
  EXPECT_EQ(ExportModel(PerspectiveOne()), ExportModel(PerspectiveOne()));
}

TEST(ConicModelTest, CommentsAndBlankLinesIgnored) {
  const std::string text =
      "# header\nVERSION 1\n\nVARS 1\nz\nBOUNDS 1\n-inf inf\nBIN 0\n"
      "OBJ 1 2.5\n0 -1\nLIN 0\nRSOC 0\nEND\n";
  const ConicModel m = ImportModel(text);
  EXPECT_EQ(m.num_vars(), 1);
  EXPECT_EQ(m.lower[0], -kInfinity);
  EXPECT_EQ(m.objective[0], -1.0);
  EXPECT_EQ(m.objective_constant, 2.5);
}

std::string ErrorOf(const std::string& text) {
  try {
    ImportModel(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(ConicModelTest, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(ErrorOf("VERSION 2\n"), "line 1: unsupported version '2'");
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 1\nx\nBOUNDS 1\n0 abc\n"),
            "line 5: invalid number 'abc'");
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 1\nx\nBOUNDS 1\n0 1\nBIN 0\nOBJ 0 0\n"
                    "LIN 1\nQ 0 0\n"),
            "line 9: invalid sense 'Q'");
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 0\nBOUNDS 0\nBIN 0\nOBJ 0 0\nLIN 0\n"
                    "RSOC 0\n"),
            "line 8: unexpected end of input");
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 0\nBOUNDS 0\nBIN 0\nOBJ 0 0\nLIN 0\n"
                    "RSOC 0\nEND\nextra\n"),
            "line 9: content after END");
}

TEST(ConicModelTest, SemanticErrorsNameTheRecord) {
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 1\nx\nBOUNDS 1\n0 1\nBIN 0\nOBJ 0 0\n"
                    "LIN 1\nL 0 1 3 1\nRSOC 0\nEND\n"),
            "LIN record 0: index out of range");
  EXPECT_EQ(ErrorOf("VERSION 1\nVARS 2\nx\ny\nBOUNDS 2\n-1 1\n0 1\nBIN 0\n"
                    "OBJ 0 0\nLIN 0\nRSOC 1\n0 1 0\nEND\n"),
            "RSOC record 0: u/v variable needs a nonnegative lower bound");
}

TEST(ConicModelTest, EvaluatesObjectiveAndViolation) {
  const ConicModel m = PerspectiveOne();
  EXPECT_DOUBLE_EQ(EvalObjective(m, {1.0, 0.5, 0.25}), -0.25);
  EXPECT_NEAR(MaxViolation(m, {1.0, 0.5, 0.25}), 0.0, 1e-15);
  EXPECT_GT(MaxViolation(m, {0.5, 1.0, 0.25}), 0.4);
}

}  // namespace
}  // namespace rankone
