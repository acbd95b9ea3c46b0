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
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rankone {
namespace {

// Residues below this are treated as exhausted by the greedy sweeps.
constexpr double kZero = 1e-14;

void CheckUnitBox(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -kTol && x[i] <= 1.0 + kTol)) {
      throw InputError("x[" + std::to_string(i) + "] outside [0,1]");
    }
  }
}

void CheckNonnegative(std::span<const double> alpha) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < -kTol) {
      throw InputError("alpha[" + std::to_string(i) + "] must be >= 0");
    }
  }
}

double MaxSquareOver(std::span<const double> alpha, const IndexSet& s) {
  double m = 0.0;
  for (int i : s) m = std::max(m, alpha[i]);
  return m * m;
}

}  // namespace

double LinearIneq::Rhs(std::span<const double> x) const {
  double v = constant;
  for (std::size_t i = 0; i < coeff_x.size(); ++i) v += coeff_x[i] * x[i];
  return v;
}

double LambdaWeights::Total() const {
  double total = 0.0;
  for (const auto& [set, w] : entries) total += w;
  return total;
}

std::vector<double> LambdaWeights::Coverage(int n) const {
  std::vector<double> cover(n, 0.0);
  for (const auto& [set, w] : entries) {
    for (int i : set) cover[i] += w;
  }
  return cover;
}

double LambdaWeights::WeightOf(const IndexSet& s) const {
  for (const auto& [set, w] : entries) {
    if (set == s) return w;
  }
  return 0.0;
}

std::vector<double> EffectiveAlpha(const AlphaVector& alpha,
                                   const Partition& p) {
  if (alpha.size() != p.n) throw InputError("alpha length mismatch");
  if (ClassifyAlpha(alpha.values, p) == Region::kUnbounded) {
    throw RegionError("alpha lies outside the bounded region");
  }
  std::vector<double> out(alpha.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(alpha.values[i], 0.0);
  }
  return out;
}

LinearIneq SupermodularIneqFromTable(std::span<const double> table, int n,
                                     std::span<const int> s, int variant) {
  if (variant != 1 && variant != 2) throw InputError("variant must be 1 or 2");
  if (table.size() != (1ULL << n)) throw InputError("table size is not 2^n");
  const unsigned long long full = (1ULL << n) - 1;
  const unsigned long long sm = SetToMask(s);
  auto rho = [&](int i, unsigned long long base) {
    return table[base | 1ULL << i] - table[base & ~(1ULL << i)];
  };
  LinearIneq ineq;
  ineq.coeff_x.assign(n, 0.0);
  ineq.constant = table[sm];
  for (int i = 0; i < n; ++i) {
    const bool in_s = sm >> i & 1ULL;
    if (!in_s) {
      ineq.coeff_x[i] = variant == 1 ? rho(i, sm) : rho(i, 0);
    } else {
      const double r = variant == 1 ? rho(i, full & ~(1ULL << i))
                                    : rho(i, sm & ~(1ULL << i));
      // -r * (1 - x_i)
      ineq.constant -= r;
      ineq.coeff_x[i] = r;
    }
  }
  return ineq;
}

LinearIneq SupermodularIneq(std::span<const int> s, const AlphaVector& alpha,
                            int variant, const Partition& p) {
  return SupermodularIneqFromTable(GTable(alpha, p), p.n, s, variant);
}

std::vector<int> AscendingOrder(std::span<const double> alpha) {
  std::vector<int> order(alpha.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return alpha[a] < alpha[b]; });
  return order;
}

std::vector<LinearIneq> SortedFacets(const AlphaVector& alpha,
                                     const Partition& p) {
  const std::vector<double> a = EffectiveAlpha(alpha, p);
  const int n = p.n;
  const std::vector<int> order = AscendingOrder(a);
  std::vector<LinearIneq> facets(n);
  for (int l = 0; l < n; ++l) {
    const double al = l == 0 ? 0.0 : a[order[l - 1]];
    LinearIneq& f = facets[l];
    f.coeff_x.assign(n, 0.0);
    f.constant = -al * al / 4.0;
    for (int k = l + 1; k <= n; ++k) {
      const int i = order[k - 1];
      f.coeff_x[i] = -(a[i] * a[i] - al * al) / 4.0;
    }
  }
  return facets;
}

double EnvelopeValue(std::span<const double> x, std::span<const double> alpha) {
  const int n = static_cast<int>(alpha.size());
  const std::vector<int> order = AscendingOrder(alpha);
  // Evaluate facet l as -al^2/4 - sum_{k>l} (a_k^2 - al^2) x_k / 4 using
  // suffix sums of x and a^2 x.
  std::vector<double> sx(n + 2, 0.0), sax(n + 2, 0.0);
  for (int k = n; k >= 1; --k) {
    const int i = order[k - 1];
    sx[k] = sx[k + 1] + x[i];
    sax[k] = sax[k + 1] + alpha[i] * alpha[i] * x[i];
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < n; ++l) {
    const double al = l == 0 ? 0.0 : alpha[order[l - 1]];
    const double v = -al * al / 4.0 - (sax[l + 1] - al * al * sx[l + 1]) / 4.0;
    best = std::max(best, v);
  }
  return n == 0 ? 0.0 : best;
}

int CriticalPosition(std::span<const double> x, std::span<const int> order) {
  const int n = static_cast<int>(order.size());
  double suffix = 0.0;
  // suffix(k) = sum over positions > k; find the smallest k with <= 1.
  std::vector<double> tail(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    suffix += x[order[k]];
    tail[k] = suffix;
  }
  for (int k = 0; k <= n; ++k) {
    if (tail[k] <= 1.0 + kZero) return k;
  }
  return n;
}

LambdaWeights GreedyPrimal(std::span<const double> x,
                           std::span<const double> alpha) {
  if (x.size() != alpha.size()) throw InputError("x and alpha lengths differ");
  CheckUnitBox(x);
  CheckNonnegative(alpha);
  const int n = static_cast<int>(x.size());
  const std::vector<int> order = AscendingOrder(alpha);
  const int ell = CriticalPosition(x, order);

  // Residual capacity by 1-based sorted position.
  std::vector<double> rem(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) rem[k] = std::clamp(x[order[k - 1]], 0.0, 1.0);
  double tail = 0.0;
  for (int k = ell + 1; k <= n; ++k) tail += rem[k];
  if (ell >= 1) rem[ell] -= 1.0 - tail;

  LambdaWeights out;
  double used = 0.0;
  auto allocate = [&](const std::vector<int>& positions) {
    double v = std::numeric_limits<double>::infinity();
    for (int k : positions) v = std::min(v, rem[k]);
    IndexSet set;
    for (int k : positions) {
      rem[k] -= v;
      if (rem[k] <= kZero) rem[k] = 0.0;
      set.push_back(order[k - 1]);
    }
    std::sort(set.begin(), set.end());
    out.entries.emplace_back(std::move(set), v);
    used += v;
  };

  for (int j = n; j > ell; --j) {
    while (rem[j] > kZero) {
      std::vector<int> positions;
      for (int k = 1; k <= ell; ++k) {
        if (rem[k] > kZero) positions.push_back(k);
      }
      positions.push_back(j);
      allocate(positions);
    }
  }
  if (ell == 0) {
    const double w = 1.0 - used;
    if (w > kZero) out.entries.emplace_back(IndexSet{}, w);
  } else {
    rem[ell] = 1.0 - tail;
    while (rem[ell] > kZero) {
      std::vector<int> positions;
      for (int k = 1; k < ell; ++k) {
        if (rem[k] > kZero) positions.push_back(k);
      }
      positions.push_back(ell);
      allocate(positions);
    }
  }
  return out;
}

DualCertificate MakeDualCertificate(std::span<const double> x,
                                    std::span<const double> alpha) {
  if (x.size() != alpha.size()) throw InputError("x and alpha lengths differ");
  CheckUnitBox(x);
  CheckNonnegative(alpha);
  const int n = static_cast<int>(x.size());
  const std::vector<int> order = AscendingOrder(alpha);
  const int ell = CriticalPosition(x, order);
  const double al = ell == 0 ? 0.0 : alpha[order[ell - 1]];
  DualCertificate cert;
  cert.gamma = -al * al / 4.0;
  cert.mu.assign(n, 0.0);
  for (int k = ell + 1; k <= n; ++k) {
    const int i = order[k - 1];
    cert.mu[i] = -(alpha[i] * alpha[i] - al * al) / 4.0;
  }
  return cert;
}

DualityReport VerifyStrongDuality(std::span<const double> x,
                                  std::span<const double> alpha) {
  const LambdaWeights lambda = GreedyPrimal(x, alpha);
  const DualCertificate cert = MakeDualCertificate(x, alpha);
  DualityReport report;
  for (const auto& [set, w] : lambda.entries) {
    const double cost = -MaxSquareOver(alpha, set) / 4.0;
    report.primal_obj += w * cost;
    double lhs = cert.gamma;
    for (int i : set) lhs += cert.mu[i];
    if (std::abs(lhs - cost) > 1e-8) report.cs_violations.push_back(set);
  }
  report.dual_obj = cert.gamma;
  for (std::size_t i = 0; i < x.size(); ++i) {
    report.dual_obj += x[i] * cert.mu[i];
  }
  return report;
}

LinearOptResult MinLinearOverX(std::span<const double> alpha,
                               std::span<const double> beta,
                               const Partition& p) {
  if (static_cast<int>(alpha.size()) != p.n ||
      static_cast<int>(beta.size()) != p.n) {
    throw InputError("alpha/beta length mismatch");
  }
  if (ClassifyAlpha(alpha, p) == Region::kUnbounded) {
    throw RegionError("linear optimization over X is unbounded for alpha");
  }
  const int n = p.n;
  // Baseline takes every index with negative cost; then pick the index
  // carrying the max term.
  double base = 0.0;
  double max_sq_in_base = 0.0;
  for (int i = 0; i < n; ++i) {
    if (beta[i] < 0) {
      base += beta[i];
      const double a = std::max(alpha[i], 0.0);
      max_sq_in_base = std::max(max_sq_in_base, a * a);
    }
  }
  double best = base - max_sq_in_base / 4.0;
  int best_j = -1;
  for (int j = 0; j < n; ++j) {
    if (beta[j] < 0) continue;
    const double a = std::max(alpha[j], 0.0);
    const double v = base + beta[j] - std::max(a * a, max_sq_in_base) / 4.0;
    if (v < best) {
      best = v;
      best_j = j;
    }
  }
  LinearOptResult out;
  out.value = best;
  out.x.assign(n, 0);
  for (int i = 0; i < n; ++i) out.x[i] = beta[i] < 0 ? 1 : 0;
  if (best_j >= 0) out.x[best_j] = 1;
  return out;
}

}  // namespace rankone
