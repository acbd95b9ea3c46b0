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

// Reference LP oracles for tests and oracle suites: a dense two-phase
// tableau simplex with Bland's rule and a brute-force vertex enumerator for
// tiny inequality systems.

#ifndef RANKONE_LP_ORACLE_H_
#define RANKONE_LP_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace rankone::lp_oracle {

struct LpSolution {
  double value = 0.0;
  std::vector<double> x;
};

using DenseMatrix = std::vector<std::vector<double>>;

// min c'x s.t. A x = b, x >= 0. Returns nullopt when infeasible or
// unbounded.
inline std::optional<LpSolution> SimplexStandardForm(
    const DenseMatrix& a, std::vector<double> b, const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  const double eps = 1e-12;
  // Tableau columns: n structural, m artificial, then rhs.
  const int cols = n + m + 1;
  DenseMatrix t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    const double sign = b[r] < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t[r][j] = sign * a[r][j];
    t[r][n + r] = 1.0;
    t[r][cols - 1] = sign * b[r];
    basis[r] = n + r;
  }
  auto pivot = [&](int pr, int pc) {
    const double pv = t[pr][pc];
    for (double& v : t[pr]) v /= pv;
    for (int r = 0; r <= m; ++r) {
      if (r == pr || t[r][pc] == 0.0) continue;
      const double f = t[r][pc];
      for (int j = 0; j < cols; ++j) t[r][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  };
  // Runs simplex on objective row m over columns < limit. Returns false on
  // unboundedness.
  auto run = [&](int limit) {
    for (int iter = 0; iter < 100000; ++iter) {
      int pc = -1;
      for (int j = 0; j < limit; ++j) {
        if (t[m][j] < -eps) {
          pc = j;
          break;
        }
      }
      if (pc < 0) return true;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (t[r][pc] > eps) {
          const double ratio = t[r][cols - 1] / t[r][pc];
          if (ratio < best - eps ||
              (ratio < best + eps && pr >= 0 && basis[r] < basis[pr])) {
            best = ratio;
            pr = r;
          }
        }
      }
      if (pr < 0) return false;
      pivot(pr, pc);
    }
    return false;
  };
  // Phase I: minimize the sum of artificials.
  for (int j = 0; j < cols; ++j) t[m][j] = 0.0;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < cols; ++j) {
      if (j < n || j == cols - 1) t[m][j] -= t[r][j];
    }
  }
  run(n + m);
  if (-t[m][cols - 1] > 1e-9) return std::nullopt;
  // Drive remaining artificials out of the basis.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t[r][j]) > 1e-9) {
        pivot(r, j);
        break;
      }
    }
  }
  // Phase II objective row.
  for (int j = 0; j < cols; ++j) t[m][j] = 0.0;
  for (int j = 0; j < n; ++j) t[m][j] = c[j];
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= n) continue;
    const double f = t[m][basis[r]];
    if (f == 0.0) continue;
    for (int j = 0; j < cols; ++j) t[m][j] -= f * t[r][j];
  }
  // Artificial columns stay out of the entering set.
  if (!run(n)) return std::nullopt;
  LpSolution sol;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = t[r][cols - 1];
  }
  sol.value = 0.0;
  for (int j = 0; j < n; ++j) sol.value += c[j] * sol.x[j];
  return sol;
}

// Solves the square system M z = v by Gaussian elimination with partial
// pivoting; nullopt when singular.
inline std::optional<std::vector<double>> SolveSquare(DenseMatrix m,
                                                      std::vector<double> v) {
  const int n = static_cast<int>(v.size());
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int r = k + 1; r < n; ++r) {
      if (std::abs(m[r][k]) > std::abs(m[p][k])) p = r;
    }
    if (std::abs(m[p][k]) < 1e-10) return std::nullopt;
    std::swap(m[p], m[k]);
    std::swap(v[p], v[k]);
    for (int r = k + 1; r < n; ++r) {
      const double f = m[r][k] / m[k][k];
      for (int j = k; j < n; ++j) m[r][j] -= f * m[k][j];
      v[r] -= f * v[k];
    }
  }
  std::vector<double> z(n);
  for (int k = n - 1; k >= 0; --k) {
    double s = v[k];
    for (int j = k + 1; j < n; ++j) s -= m[k][j] * z[j];
    z[k] = s / m[k][k];
  }
  return z;
}

// min c'x s.t. G x <= h by enumerating every basis of n active rows.
// Assumes the feasible region is bounded.
inline std::optional<LpSolution> VertexEnumeration(
    const DenseMatrix& g, const std::vector<double>& h,
    const std::vector<double>& c) {
  const int rows = static_cast<int>(g.size());
  const int n = static_cast<int>(c.size());
  std::optional<LpSolution> best;
  std::vector<int> pick(n);
  for (int k = 0; k < n; ++k) pick[k] = k;
  if (rows < n) return std::nullopt;
  while (true) {
    DenseMatrix m(n);
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) {
      m[k] = g[pick[k]];
      v[k] = h[pick[k]];
    }
    if (auto z = SolveSquare(m, v)) {
      bool feasible = true;
      for (int r = 0; r < rows && feasible; ++r) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += g[r][j] * (*z)[j];
        feasible = lhs <= h[r] + 1e-9;
      }
      if (feasible) {
        double val = 0.0;
        for (int j = 0; j < n; ++j) val += c[j] * (*z)[j];
        if (!best || val < best->value) best = LpSolution{val, *z};
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == rows - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace rankone::lp_oracle

#endif  // RANKONE_LP_ORACLE_H_
