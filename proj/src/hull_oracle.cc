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

// Numerical hull value. For multipliers in the region where the N- side is
// nonpositive, the lifting objective is
//
//   max  alpha'y + env_alpha(x)
//
// with env_alpha the convex envelope of g_alpha. The envelope is a max over
// thresholds c >= 0 of -c^2/4 - sum_i (alpha_i^2 - c^2)_+ x_i / 4, and the
// N- multipliers collapse to a single cap w >= max alpha on the N+ side.
// For fixed (c, w) every N+ multiplier separates into a one-dimensional
// concave problem, leaving a two-parameter search that is done here by
// grids, golden-section refinement and a projected-gradient polish.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rankone/lifted_cuts.h"

namespace rankone {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

struct SideData {
  std::vector<double> x;
  std::vector<double> y;
  double y_opp = 0.0;
  bool capped = true;  // false when the opposite side is empty
};

// Objective at threshold c and cap w (w ignored when uncapped).
double Objective(const SideData& d, double c, double w) {
  double v = -c * c / 4.0;
  if (d.capped) v -= w * d.y_opp;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double xi = d.x[i], yi = d.y[i];
    if (yi <= 0.0) continue;
    double a = 2.0 * yi / xi;
    a = std::max(a, c);
    if (d.capped) a = std::min(a, w);
    v += a * yi - std::max(a * a - c * c, 0.0) * xi / 4.0;
  }
  return v;
}

template <typename F>
double GoldenMax(F f, double lo, double hi, double* arg) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(b));
       ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  double best_x = c, best = fc;
  for (double t : {a, b, d}) {
    const double ft = f(t);
    if (ft > best) {
      best = ft;
      best_x = t;
    }
  }
  if (fd > best) {
    best = fd;
    best_x = d;
  }
  *arg = best_x;
  return best;
}

// Global 1-D maximization on [lo, hi]: uniform grid, then golden refinement
// inside the brackets of the best few grid points.
template <typename F>
double MaximizeOnInterval(F f, double lo, double hi, int grid, double* arg) {
  if (hi <= lo) {
    *arg = lo;
    return f(lo);
  }
  std::vector<double> vals(grid + 1);
  const double h = (hi - lo) / grid;
  for (int k = 0; k <= grid; ++k) vals[k] = f(lo + h * k);
  std::vector<int> idx(grid + 1);
  for (int k = 0; k <= grid; ++k) idx[k] = k;
  const int starts = std::min(grid + 1, 4);
  std::partial_sort(idx.begin(), idx.begin() + starts, idx.end(),
                    [&](int a, int b) { return vals[a] > vals[b]; });
  double best = -kInf;
  for (int s = 0; s < starts; ++s) {
    const int k = idx[s];
    double t;
    const double v = GoldenMax(f, lo + h * std::max(k - 1, 0),
                               lo + h * std::min(k + 1, grid), &t);
    if (v > best) {
      best = v;
      *arg = t;
    }
    if (vals[k] > best) {
      best = vals[k];
      *arg = lo + h * k;
    }
  }
  return best;
}

// Projected gradient ascent on {0 <= c <= w <= cmax} from (c, w).
double Polish(const SideData& d, double cmax, double* c, double* w) {
  auto project = [&](double& pc, double& pw) {
    pw = std::clamp(pw, 0.0, cmax);
    pc = std::clamp(pc, 0.0, pw);
  };
  double fc = Objective(d, *c, *w);
  double step = 0.1 * std::max(cmax, 1e-12);
  for (int it = 0; it < 500 && step > 1e-14 * std::max(1.0, cmax); ++it) {
    const double e = 1e-7 * std::max(1.0, cmax);
    const double gc =
        (Objective(d, *c + e, *w) - Objective(d, *c - e, *w)) / (2 * e);
    const double gw =
        (Objective(d, *c, *w + e) - Objective(d, *c, *w - e)) / (2 * e);
    const double norm = std::hypot(gc, gw);
    if (!(norm > 0)) break;
    double nc = *c + step * gc / norm, nw = *w + step * gw / norm;
    project(nc, nw);
    const double fn = Objective(d, nc, nw);
    if (fn > fc) {
      *c = nc;
      *w = nw;
      fc = fn;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  if (!std::isfinite(fc)) throw OracleError("hull oracle diverged");
  return fc;
}

double MaximizeSide(const SideData& d, int grid) {
  double cmax = 0.0, ysum = 0.0;
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (d.y[i] <= 0.0) continue;
    cmax = std::max(cmax, d.y[i] / d.x[i]);
    ysum += d.y[i];
  }
  cmax = 2.0 * std::max(cmax, ysum) * 1.05;
  if (cmax <= 0.0) return 0.0;

  double arg = 0.0;
  if (!d.capped) {
    return MaximizeOnInterval([&](double c) { return Objective(d, c, kInf); },
                              0.0, cmax, 4 * grid, &arg);
  }
  // Profile over the cap with the threshold maximized inside.
  auto profile = [&](double w) {
    double c;
    return MaximizeOnInterval([&](double cc) { return Objective(d, cc, w); },
                              0.0, w, grid, &c);
  };
  double w_best = 0.0;
  const double best_profile =
      MaximizeOnInterval(profile, 0.0, cmax, grid, &w_best);
  double c_best = 0.0;
  MaximizeOnInterval([&](double cc) { return Objective(d, cc, w_best); }, 0.0,
                     w_best, grid, &c_best);
  const double polished = Polish(d, cmax, &c_best, &w_best);
  return std::max(best_profile, polished);
}

}  // namespace

double HullValueOracle(std::span<const double> x, std::span<const double> y,
                       const Partition& p, int grid) {
  if (p.n > 8) throw CapacityError("hull oracle limited to n <= 8");
  if (static_cast<int>(x.size()) != p.n || static_cast<int>(y.size()) != p.n) {
    throw InputError("point and partition sizes differ");
  }
  if (grid < 8) throw InputError("oracle grid too coarse");
  double best = BaseValue(y, p);
  for (CutSign sign : {CutSign::kPlus, CutSign::kMinus}) {
    const SignedSides sides = SidesFor(sign, p);
    SideData d;
    d.capped = !sides.opposite.empty();
    d.y_opp = SumOver(y, sides.opposite);
    for (int i : sides.side) {
      if (y[i] > 0.0 && x[i] <= 0.0) {
        if (!d.capped) return kInf;
        throw OracleError("point outside oracle domain: x_i = 0 < y_i");
      }
      d.x.push_back(x[i]);
      d.y.push_back(y[i]);
    }
    best = std::max(best, MaximizeSide(d, grid));
  }
  return best;
}

}  // namespace rankone
