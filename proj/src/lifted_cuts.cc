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

#include "rankone/lifted_cuts.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

namespace rankone {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kViolationEps = 1e-3;

double Scale(double a, double b) {
  return std::max({1.0, std::abs(a), std::abs(b)});
}

// Comparisons used by the condition checks. Infinite operands compare
// exactly; finite ones get a relative tolerance. `strict` decides whether a
// strict "<" must clear the tolerance or may fall inside it.
bool Less(double a, double b, bool strict) {
  if (std::isinf(a)) return false;
  if (std::isinf(b)) return true;
  const double tol = kTol * Scale(a, b);
  return strict ? a < b - tol : a < b + tol;
}

bool AtLeast(double a, double b) {
  if (std::isinf(a)) return true;
  if (std::isinf(b)) return false;
  return a >= b - kTol * Scale(a, b);
}

// num^2 / den with the zero-denominator convention, where `num` is the
// unsquared numerator.
double SquareRatio(double num, double den) {
  if (den > 0.0) return num * num / den;
  return std::abs(num) <= kTol ? 0.0 : kInf;
}

struct SortedSide {
  std::vector<int> idx;    // original indices in ascending ratio order
  std::vector<double> r;   // ratios
  std::vector<double> px;  // prefix sums of x, length m+1
  std::vector<double> py;  // prefix sums of y, length m+1
};

SortedSide SortSide(std::span<const double> x, std::span<const double> y,
                    const IndexSet& side) {
  SortedSide s;
  const int m = static_cast<int>(side.size());
  std::vector<double> ratio(m);
  for (int k = 0; k < m; ++k) {
    ratio[k] = SafeRatio(std::max(y[side[k]], 0.0), std::max(x[side[k]], 0.0));
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return ratio[a] < ratio[b]; });
  s.idx.resize(m);
  s.r.resize(m);
  s.px.assign(m + 1, 0.0);
  s.py.assign(m + 1, 0.0);
  for (int k = 0; k < m; ++k) {
    s.idx[k] = side[perm[k]];
    s.r[k] = ratio[perm[k]];
    s.px[k + 1] = s.px[k] + x[s.idx[k]];
    s.py[k + 1] = s.py[k] + y[s.idx[k]];
  }
  return s;
}

IndexSet SortedCopy(std::span<const int> v) {
  IndexSet out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Prefix length of L for the all-positive case, or -1.
int ScanPositive(const SortedSide& s, bool strict) {
  const int m = static_cast<int>(s.idx.size());
  const double total_x = s.px[m];
  for (int l = 0; l <= m; ++l) {
    const double den = 1.0 - (total_x - s.px[l]);
    if (strict ? den <= kTol : den < -kTol) continue;
    const double rho = SafeRatio(s.py[l], std::max(den, 0.0));
    if (l < m && !Less(rho, s.r[l], strict)) continue;
    if (l > 0 && !AtLeast(rho, s.r[l - 1])) continue;
    return l;
  }
  return -1;
}

struct PairChoice {
  int l = -1;
  int u = -1;
};

PairChoice ScanGeneral(const SortedSide& s, double y_opp, bool strict) {
  const int m = static_cast<int>(s.idx.size());
  const double total_x = s.px[m];
  const double total_y = s.py[m];
  for (int l = 0; l <= m; ++l) {
    const double den = 1.0 - (total_x - s.px[l]);
    if (strict ? den <= kTol : den < -kTol) continue;
    const double rho_l = SafeRatio(s.py[l], std::max(den, 0.0));
    if (l < m && !Less(rho_l, s.r[l], strict)) continue;
    if (l > 0 && !AtLeast(rho_l, s.r[l - 1])) continue;
    for (int u = l; u <= m; ++u) {
      const double y_u = total_y - s.py[u];
      const double num = y_u - y_opp;
      // y(U) only shrinks as u grows.
      if (num < -kTol * Scale(y_u, y_opp)) break;
      if (u == m) {
        // Empty U stands for an unbounded multiplier on the opposite side,
        // which is only available when y(opposite) vanishes.
        if (y_opp <= kTol) return {l, u};
        continue;
      }
      const double x_u = total_x - s.px[u];
      const double rho_u = SafeRatio(std::max(num, 0.0), x_u);
      if (u > 0 && !Less(s.r[u - 1], rho_u, strict)) continue;
      if (!AtLeast(s.r[u], rho_u)) continue;
      if (!Less(rho_l, rho_u, strict)) continue;
      return {l, u};
    }
  }
  return {};
}

}  // namespace

std::string LiftedCut::DebugString() const {
  std::ostringstream os;
  os << (sign == CutSign::kPlus ? "+" : "-") << " L=" << FormatSet(L)
     << " R=" << FormatSet(R) << " U=" << FormatSet(U);
  return os.str();
}

SignedSides SidesFor(CutSign sign, const Partition& p) {
  if (sign == CutSign::kPlus) return {p.plus, p.minus};
  return {p.minus, p.plus};
}

double BaseValue(std::span<const double> y, const Partition& p) {
  const double d = SumOver(y, p.plus) - SumOver(y, p.minus);
  return d * d;
}

double EvalLiftedRhs(std::span<const double> x, std::span<const double> y,
                     const LiftedCut& cut, const Partition& p) {
  const SignedSides sides = SidesFor(cut.sign, p);
  const double x_side = SumOver(x, sides.side);
  const double value_l =
      SquareRatio(SumOver(y, cut.L), 1.0 - (x_side - SumOver(x, cut.L)));
  double value_r = 0.0;
  for (int i : cut.R) value_r += SquareRatio(y[i], x[i]);
  const double value_u = SquareRatio(
      SumOver(y, cut.U) - SumOver(y, sides.opposite), SumOver(x, cut.U));
  return value_l + value_r + value_u;
}

IndexSet FindLPositive(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("x and y lengths differ");
  IndexSet all(x.size());
  std::iota(all.begin(), all.end(), 0);
  const SortedSide s = SortSide(x, y, all);
  int l = ScanPositive(s, /*strict=*/true);
  if (l < 0) l = ScanPositive(s, /*strict=*/false);
  if (l < 0) l = static_cast<int>(all.size());
  return IndexSet(s.idx.begin(), s.idx.begin() + l);
}

std::optional<LiftedCut> FindLUGeneral(std::span<const double> x,
                                       std::span<const double> y,
                                       const Partition& p) {
  const CutSign sign = SumOver(y, p.plus) >= SumOver(y, p.minus)
                           ? CutSign::kPlus
                           : CutSign::kMinus;
  const SignedSides sides = SidesFor(sign, p);
  const SortedSide s = SortSide(x, y, sides.side);
  const int m = static_cast<int>(s.idx.size());
  LiftedCut cut;
  cut.sign = sign;
  if (sides.opposite.empty()) {
    int l = ScanPositive(s, true);
    if (l < 0) l = ScanPositive(s, false);
    if (l < 0) l = m;
    cut.L = SortedCopy(std::span(s.idx).subspan(0, l));
    cut.R = SortedCopy(std::span(s.idx).subspan(l));
    return cut;
  }
  const double y_opp = SumOver(y, sides.opposite);
  PairChoice choice = ScanGeneral(s, y_opp, true);
  if (choice.l < 0) choice = ScanGeneral(s, y_opp, false);
  if (choice.l < 0) return std::nullopt;
  cut.L = SortedCopy(std::span(s.idx).subspan(0, choice.l));
  cut.R = SortedCopy(std::span(s.idx).subspan(choice.l, choice.u - choice.l));
  cut.U = SortedCopy(std::span(s.idx).subspan(choice.u));
  return cut;
}

void CheckCutShape(const LiftedCut& cut, const Partition& p) {
  const SignedSides sides = SidesFor(cut.sign, p);
  IndexSet all;
  for (const IndexSet* s : {&cut.L, &cut.R, &cut.U}) {
    all.insert(all.end(), s->begin(), s->end());
  }
  std::sort(all.begin(), all.end());
  if (all != sides.side) {
    throw InputError("cut sets do not partition the signed side: " +
                     cut.DebugString());
  }
}

bool CutConditionsHold(std::span<const double> x, std::span<const double> y,
                       const LiftedCut& cut, const Partition& p) {
  CheckCutShape(cut, p);
  const SignedSides sides = SidesFor(cut.sign, p);
  const double den = 1.0 - (SumOver(x, sides.side) - SumOver(x, cut.L));
  if (den <= kTol) return false;
  const double rho_l = SumOver(y, cut.L) / den;
  auto ratio = [&](int i) { return SafeRatio(std::max(y[i], 0.0), x[i]); };
  for (const IndexSet* s : {&cut.R, &cut.U}) {
    for (int i : *s) {
      if (!Less(rho_l, ratio(i), true)) return false;
    }
  }
  if (sides.opposite.empty() && cut.U.empty()) return true;
  const double num = SumOver(y, cut.U) - SumOver(y, sides.opposite);
  if (num < -kTol) return false;
  const double x_u = SumOver(x, cut.U);
  // A vanishing U denominator pins the U term's multipliers to zero.
  const double rho_u = x_u > kTol ? std::max(num, 0.0) / x_u : kInf;
  if (x_u <= kTol && num > kTol) return false;
  for (const IndexSet* s : {&cut.L, &cut.R}) {
    for (int i : *s) {
      if (!Less(ratio(i), rho_u, true)) return false;
    }
  }
  return Less(rho_l, rho_u, true);
}

bool IsViolated(double value, double t) {
  if (std::isinf(value)) return value > 0;
  if (std::abs(t) < kViolationEps) return value - t > kViolationEps;
  return value - t > kViolationEps * std::abs(t);
}

SeparationResult Separate(const FractionalPoint& point, const Partition& p) {
  point.Validate();
  if (point.size() != p.n) throw InputError("point and partition sizes differ");
  SeparationResult out;
  const double base = BaseValue(point.y, p);
  out.cut = FindLUGeneral(point.x, point.y, p);
  if (out.cut) {
    out.rhs_value =
        std::max(base, EvalLiftedRhs(point.x, point.y, *out.cut, p));
  } else {
    out.rhs_value = base;
    out.base_only = true;
  }
  out.violated = IsViolated(out.rhs_value, point.t);
  return out;
}

std::vector<SeparationResult> SeparateBatch(
    std::span<const SeparationTask> tasks) {
  const long long count = static_cast<long long>(tasks.size());
  std::vector<SeparationResult> out(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < count; ++k) {
    try {
      out[k] = Separate(tasks[k].point, tasks[k].partition);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<SeparationResult> SeparateBatchSerial(
    std::span<const SeparationTask> tasks) {
  std::vector<SeparationResult> out;
  out.reserve(tasks.size());
  for (const SeparationTask& t : tasks) {
    out.push_back(Separate(t.point, t.partition));
  }
  return out;
}

double HullValue(std::span<const double> x, std::span<const double> y,
                 const Partition& p) {
  FractionalPoint point{{x.begin(), x.end()}, {y.begin(), y.end()}, 0.0};
  return Separate(point, p).rhs_value;
}

double XfHullValue(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  return SquareRatio(sy, std::min(1.0, sx));
}

double XfHullValue(std::span<const double> x, std::span<const double> y,
                   const Partition& p) {
  double sx = 0.0;
  for (double v : x) sx += v;
  return SquareRatio(SumOver(y, p.plus) - SumOver(y, p.minus),
                     std::min(1.0, sx));
}

}  // namespace rankone
