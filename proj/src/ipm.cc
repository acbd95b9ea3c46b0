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

// Homogeneous self-dual interior-point method with Nesterov-Todd scaling
// and Mehrotra predictor-corrector steps. Directions come from a pivoted LU
// of the lightly regularized KKT matrix, followed by iterative refinement
// against the unregularized system.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "rankone/cone_program.h"
#include "rankone/core_types.h"

namespace rankone {

void SparseRows::AddRow(const std::vector<std::pair<int, double>>& terms) {
  for (const auto& [j, v] : terms) {
    if (j < 0 || j >= cols) throw InputError("sparse row column out of range");
    index.push_back(j);
    value.push_back(v);
  }
  start.push_back(static_cast<int>(index.size()));
}

namespace {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

constexpr double kStepFraction = 0.99;
constexpr double kStatReg = 1e-12;
// KKT systems up to this order are factored densely.
constexpr int kDenseKkt = 200;
// Reduced-accuracy acceptance: tolerances times this factor.
constexpr double kInaccurateFactor = 100.0;
// Iterations without progress before a reduced-accuracy exit.
constexpr int kStallIters = 8;
constexpr int kRefineSteps = 8;

struct Layout {
  int m = 0;
  int nonneg = 0;
  std::vector<int> soc_start;
  std::vector<int> soc_dim;
  int degree = 0;
};

Layout MakeLayout(const ConeProgram& prog) {
  Layout l;
  l.nonneg = prog.num_nonneg;
  int offset = prog.num_nonneg;
  for (int d : prog.soc_dims) {
    if (d < 1) throw InputError("second-order cone of size < 1");
    l.soc_start.push_back(offset);
    l.soc_dim.push_back(d);
    offset += d;
  }
  l.m = offset;
  l.degree = l.nonneg + static_cast<int>(l.soc_dim.size());
  return l;
}

SpMat ToEigen(const SparseRows& rows) {
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < rows.rows(); ++r) {
    for (int k = rows.start[r]; k < rows.start[r + 1]; ++k) {
      trip.emplace_back(r, rows.index[k], rows.value[k]);
    }
  }
  SpMat mat(rows.rows(), rows.cols);
  mat.setFromTriplets(trip.begin(), trip.end());
  return mat;
}

double SocNorm1(const Vec& v, int o, int d) {
  return d > 1 ? v.segment(o + 1, d - 1).norm() : 0.0;
}

// Smallest "eigenvalue" of v with respect to the cone.
double MinEig(const Vec& v, const Layout& l) {
  double e = std::numeric_limits<double>::infinity();
  for (int i = 0; i < l.nonneg; ++i) e = std::min(e, v[i]);
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], d = l.soc_dim[k];
    e = std::min(e, v[o] - SocNorm1(v, o, d));
  }
  return e;
}

Vec Identity(const Layout& l) {
  Vec e = Vec::Zero(l.m);
  for (int i = 0; i < l.nonneg; ++i) e[i] = 1.0;
  for (int o : l.soc_start) e[o] = 1.0;
  return e;
}

Vec Jordan(const Vec& u, const Vec& v, const Layout& l) {
  Vec w(l.m);
  for (int i = 0; i < l.nonneg; ++i) w[i] = u[i] * v[i];
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], d = l.soc_dim[k];
    w[o] = u.segment(o, d).dot(v.segment(o, d));
    for (int j = 1; j < d; ++j) w[o + j] = u[o] * v[o + j] + v[o] * u[o + j];
  }
  return w;
}

// Solves lambda o x = d.
Vec JordanDivide(const Vec& lam, const Vec& d, const Layout& l) {
  Vec x(l.m);
  for (int i = 0; i < l.nonneg; ++i) x[i] = d[i] / lam[i];
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], q = l.soc_dim[k];
    const double l0 = lam[o];
    double l1sq = 0.0, l1d1 = 0.0;
    for (int j = 1; j < q; ++j) {
      l1sq += lam[o + j] * lam[o + j];
      l1d1 += lam[o + j] * d[o + j];
    }
    const double x0 = (l0 * d[o] - l1d1) / (l0 * l0 - l1sq);
    x[o] = x0;
    for (int j = 1; j < q; ++j) x[o + j] = (d[o + j] - x0 * lam[o + j]) / l0;
  }
  return x;
}

// Nesterov-Todd scaling W with W z = W^{-1} s = lambda.
struct Scaling {
  Vec d;                    // nonnegative rows: sqrt(s / z)
  std::vector<double> eta;  // per cone
  std::vector<Vec> wbar;    // per cone, unit hyperbolic vector
  Vec lambda;
};

bool ComputeScaling(const Vec& s, const Vec& z, const Layout& l, Scaling* sc) {
  sc->d.resize(l.nonneg);
  sc->eta.resize(l.soc_dim.size());
  sc->wbar.resize(l.soc_dim.size());
  for (int i = 0; i < l.nonneg; ++i) {
    if (!(s[i] > 0 && z[i] > 0)) return false;
    sc->d[i] = std::sqrt(s[i] / z[i]);
  }
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], q = l.soc_dim[k];
    const double sn = SocNorm1(s, o, q), zn = SocNorm1(z, o, q);
    const double sres = (s[o] - sn) * (s[o] + sn);
    const double zres = (z[o] - zn) * (z[o] + zn);
    if (!(s[o] - sn > 0 && z[o] - zn > 0 && sres > 0 && zres > 0)) return false;
    const double sr = std::sqrt(sres), zr = std::sqrt(zres);
    Vec sb = s.segment(o, q) / sr;
    Vec zb = z.segment(o, q) / zr;
    const double gamma = std::sqrt((1.0 + sb.dot(zb)) / 2.0);
    Vec w(q);
    w[0] = (sb[0] + zb[0]) / (2.0 * gamma);
    for (int j = 1; j < q; ++j) w[j] = (sb[j] - zb[j]) / (2.0 * gamma);
    // Restore w0^2 - |w1|^2 = 1 against rounding.
    w[0] = std::sqrt(1.0 + (q > 1 ? w.tail(q - 1).squaredNorm() : 0.0));
    sc->wbar[k] = std::move(w);
    sc->eta[k] = std::sqrt(sr / zr);
  }
  return true;
}

void IdentityScaling(const Layout& l, Scaling* sc) {
  sc->d = Vec::Ones(l.nonneg);
  sc->eta.assign(l.soc_dim.size(), 1.0);
  sc->wbar.resize(l.soc_dim.size());
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    sc->wbar[k] = Vec::Zero(l.soc_dim[k]);
    sc->wbar[k][0] = 1.0;
  }
}

// v -> W v (inverse = false) or W^{-1} v (inverse = true).
Vec ApplyW(const Scaling& sc, const Layout& l, const Vec& v, bool inverse) {
  Vec out(l.m);
  for (int i = 0; i < l.nonneg; ++i) {
    out[i] = inverse ? v[i] / sc.d[i] : v[i] * sc.d[i];
  }
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], q = l.soc_dim[k];
    const Vec& w = sc.wbar[k];
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = inverse ? 1.0 / sc.eta[k] : sc.eta[k];
    double w1v1 = 0.0;
    for (int j = 1; j < q; ++j) w1v1 += w[j] * v[o + j];
    out[o] = scale * (w[0] * v[o] + sign * w1v1);
    const double coef = sign * v[o] + w1v1 / (1.0 + w[0]);
    for (int j = 1; j < q; ++j) out[o + j] = scale * (v[o + j] + coef * w[j]);
  }
  return out;
}

Vec ApplyW2(const Scaling& sc, const Layout& l, const Vec& v, bool inverse) {
  return ApplyW(sc, l, ApplyW(sc, l, v, inverse), inverse);
}

// Largest step in [0, cap] keeping v + a dv in the cone.
double ConeStep(const Vec& v, const Vec& dv, const Layout& l, double cap) {
  double a = cap;
  for (int i = 0; i < l.nonneg; ++i) {
    if (dv[i] < 0) a = std::min(a, -v[i] / dv[i]);
  }
  for (std::size_t k = 0; k < l.soc_dim.size(); ++k) {
    const int o = l.soc_start[k], q = l.soc_dim[k];
    double qa = dv[o] * dv[o], qb = v[o] * dv[o], qc = v[o] * v[o];
    for (int j = 1; j < q; ++j) {
      qa -= dv[o + j] * dv[o + j];
      qb -= v[o + j] * dv[o + j];
      qc -= v[o + j] * v[o + j];
    }
    qc = std::max(qc, 0.0);
    const double disc = qb * qb - qa * qc;
    if (qa < 0 || (qb < 0 && disc >= 0)) {
      const double den = std::sqrt(std::max(disc, 0.0)) - qb;
      if (den > 0) a = std::min(a, qc / den);
    }
  }
  return std::max(a, 0.0);
}

// Applies the unregularized KKT operator
//   [0 A' G'; A 0 0; G 0 -W^2] (dx, dy, dz).
struct KktOperator {
  const SpMat& A;
  const SpMat& G;
  const Layout& l;

  void Apply(const Scaling& sc, const Vec& dx, const Vec& dy, const Vec& dz,
             Vec* o1, Vec* o2, Vec* o3) const {
    *o1 = A.transpose() * dy + G.transpose() * dz;
    *o2 = A * dx;
    *o3 = G * dx - ApplyW2(sc, l, dz, false);
  }
};

// LU factorization with partial pivoting of the KKT matrix
//   [reg I  A'  G'; A  -reg I  0; G  0  -W^2 - reg I],
// dense for small systems and sparse otherwise. The regularization is
// raised when a factorization breaks down.
class KktSolver {
 public:
  KktSolver(const SpMat& A, const SpMat& G, const Layout& l)
      : A_(A), G_(G), l_(l) {}

  bool Factor(const Scaling& sc) {
    for (double reg = kStatReg; reg < 1e-3; reg *= 100) {
      if (FactorWith(sc, reg)) return true;
    }
    return false;
  }

  void SolveRaw(const Vec& r1, const Vec& r2, const Vec& r3, Vec* dx, Vec* dy,
                Vec* dz) {
    const int n = static_cast<int>(A_.cols()), p = static_cast<int>(A_.rows());
    Vec rhs(n + p + l_.m);
    rhs << r1, r2, r3;
    const Vec sol =
        dense_ ? Vec(dense_lu_.solve(rhs)) : Vec(sparse_lu_.solve(rhs));
    *dx = sol.head(n);
    *dy = sol.segment(n, p);
    *dz = sol.tail(l_.m);
  }

 private:
  bool FactorWith(const Scaling& sc, double reg) {
    const int n = static_cast<int>(A_.cols()), p = static_cast<int>(A_.rows());
    const int N = n + p + l_.m;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(N + 2 * (A_.nonZeros() + G_.nonZeros()) + 4 * l_.m);
    auto sym = [&](int r, int c, double v) {
      trip.emplace_back(r, c, v);
      if (r != c) trip.emplace_back(c, r, v);
    };
    for (int i = 0; i < n; ++i) sym(i, i, reg);
    for (int r = 0; r < p; ++r) {
      for (SpMat::InnerIterator it(A_, r); it; ++it) {
        sym(n + r, static_cast<int>(it.col()), it.value());
      }
      sym(n + r, n + r, -reg);
    }
    const int zo = n + p;
    for (int r = 0; r < l_.m; ++r) {
      for (SpMat::InnerIterator it(G_, r); it; ++it) {
        sym(zo + r, static_cast<int>(it.col()), it.value());
      }
    }
    for (int i = 0; i < l_.nonneg; ++i) {
      sym(zo + i, zo + i, -sc.d[i] * sc.d[i] - reg);
    }
    for (std::size_t k = 0; k < l_.soc_dim.size(); ++k) {
      const int o = l_.soc_start[k], q = l_.soc_dim[k];
      const double e2 = sc.eta[k] * sc.eta[k];
      const Vec& w = sc.wbar[k];
      // -eta^2 (2 w w' - J).
      for (int a = 0; a < q; ++a) {
        for (int b = 0; b <= a; ++b) {
          double v = 2.0 * w[a] * w[b];
          if (a == b) v += a == 0 ? -1.0 : 1.0;
          v *= -e2;
          if (a == b) v -= reg;
          sym(zo + o + a, zo + o + b, v);
        }
      }
    }
    dense_ = N <= kDenseKkt;
    if (dense_) {
      Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
      for (const auto& t : trip) K(t.row(), t.col()) += t.value();
      dense_lu_.compute(K);
      const auto diag = dense_lu_.matrixLU().diagonal();
      return diag.allFinite() && diag.cwiseAbs().minCoeff() > 0.0;
    }
    Eigen::SparseMatrix<double> K(N, N);
    K.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed_) {
      sparse_lu_.analyzePattern(K);
      analyzed_ = true;
    }
    sparse_lu_.factorize(K);
    return sparse_lu_.info() == Eigen::Success;
  }

  const SpMat& A_;
  const SpMat& G_;
  const Layout& l_;
  bool dense_ = false;
  bool analyzed_ = false;
  Eigen::PartialPivLU<Eigen::MatrixXd> dense_lu_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>
      sparse_lu_;
};

// Regularized solve followed by iterative refinement on the exact system.
void SolveRefined(KktSolver& solver, const KktOperator& op, const Scaling& sc,
                  const Vec& r1, const Vec& r2, const Vec& r3, Vec* dx, Vec* dy,
                  Vec* dz) {
  solver.SolveRaw(r1, r2, r3, dx, dy, dz);
  const double rnorm =
      1.0 + std::max({r1.lpNorm<Eigen::Infinity>(),
                      r2.size() ? r2.lpNorm<Eigen::Infinity>() : 0.0,
                      r3.size() ? r3.lpNorm<Eigen::Infinity>() : 0.0});
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kRefineSteps; ++it) {
    Vec o1, o2, o3;
    op.Apply(sc, *dx, *dy, *dz, &o1, &o2, &o3);
    const Vec e1 = r1 - o1, e2 = r2 - o2, e3 = r3 - o3;
    const double err =
        std::max({e1.size() ? e1.lpNorm<Eigen::Infinity>() : 0.0,
                  e2.size() ? e2.lpNorm<Eigen::Infinity>() : 0.0,
                  e3.size() ? e3.lpNorm<Eigen::Infinity>() : 0.0});
    if (err <= 1e-14 * rnorm || err > 0.9 * prev) break;
    prev = err;
    Vec c1, c2, c3;
    solver.SolveRaw(e1, e2, e3, &c1, &c2, &c3);
    *dx += c1;
    *dy += c2;
    *dz += c3;
  }
}

double Norm(const Vec& v) { return v.size() ? v.norm() : 0.0; }

std::vector<double> ToStd(const Vec& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

IpmResult SolveConeProgram(const ConeProgram& prog, const IpmOptions& opts) {
  const int n = prog.num_vars;
  if (static_cast<int>(prog.c.size()) != n || prog.a.cols != n ||
      prog.g.cols != n) {
    throw InputError("cone program column count mismatch");
  }
  if (static_cast<int>(prog.b.size()) != prog.a.rows() ||
      static_cast<int>(prog.h.size()) != prog.g.rows()) {
    throw InputError("cone program row count mismatch");
  }
  const Layout l = MakeLayout(prog);
  if (l.m != prog.g.rows()) throw InputError("cone sizes do not cover G");

  const SpMat A = ToEigen(prog.a), G = ToEigen(prog.g);
  const Vec c = Eigen::Map<const Vec>(prog.c.data(), n);
  const Vec b = Eigen::Map<const Vec>(prog.b.data(), prog.b.size());
  const Vec h = Eigen::Map<const Vec>(prog.h.data(), prog.h.size());
  const int p = static_cast<int>(A.rows());

  KktSolver solver(A, G, l);
  const KktOperator op{A, G, l};

  IpmResult res;
  Scaling sc;
  IdentityScaling(l, &sc);
  if (!solver.Factor(sc)) throw SolverError("initial KKT factorization failed");

  Vec x, y, z, s, tmp;
  // Primal start: least-squares fit of the constraints.
  SolveRefined(solver, op, sc, Vec::Zero(n), b, h, &x, &tmp, &z);
  s = -z;
  {
    Vec x0;
    SolveRefined(solver, op, sc, -c, Vec::Zero(p), Vec::Zero(l.m), &x0, &y, &z);
  }
  const Vec e = Identity(l);
  const double es = MinEig(s, l), ez = MinEig(z, l);
  if (l.m > 0 && es <= 0) s += (1.0 - es) * e;
  if (l.m > 0 && ez <= 0) z += (1.0 - ez) * e;
  double tau = 1.0, kappa = 1.0;

  const double bnorm = std::max(1.0, Norm(b)), hnorm = std::max(1.0, Norm(h));
  const double cnorm = std::max(1.0, Norm(c));

  auto finish = [&](IpmStatus status, int iters) {
    res.status = status;
    res.iterations = iters;
    if (status == IpmStatus::kPrimalInfeasible) {
      const double scale = -1.0 / (b.dot(y) + h.dot(z));
      res.x.assign(n, 0.0);
      res.s.assign(l.m, 0.0);
      res.y = ToStd(y * scale);
      res.z = ToStd(z * scale);
      return res;
    }
    if (status == IpmStatus::kDualInfeasible) {
      const double scale = -1.0 / c.dot(x);
      res.x = ToStd(x * scale);
      res.s = ToStd(s * scale);
      res.y.assign(p, 0.0);
      res.z.assign(l.m, 0.0);
      return res;
    }
    res.x = ToStd(x / tau);
    res.y = ToStd(y / tau);
    res.z = ToStd(z / tau);
    res.s = ToStd(s / tau);
    return res;
  };

  // Iterate with the smallest residual, kept for a reduced-accuracy exit.
  struct Snapshot {
    Vec x, y, z, s;
    double tau = 0.0;
    IpmResult metrics;
    double merit = std::numeric_limits<double>::infinity();
    int iter = 0;
  } best;
  auto converged = [&](const IpmResult& r, double factor) {
    return r.pres <= factor * opts.feastol && r.dres <= factor * opts.feastol &&
           (r.gap <= factor * opts.abstol || r.relgap <= factor * opts.reltol);
  };

  double last_step = 0.0, last_sigma = 0.0;
  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const Vec rx = -(A.transpose() * y) - G.transpose() * z - c * tau;
    const Vec ry = A * x - b * tau;
    const Vec rz = s + G * x - h * tau;
    const double cx = c.dot(x), by_hz = b.dot(y) + h.dot(z);
    const double rt = kappa + cx + by_hz;

    res.pcost = cx / tau + prog.c0;
    res.dcost = -by_hz / tau + prog.c0;
    res.gap = s.dot(z) / (tau * tau);
    res.pres = std::max(Norm(ry) / bnorm, Norm(rz) / hnorm) / tau;
    res.dres = Norm(rx) / cnorm / tau;
    res.relgap = res.gap / std::max(1.0, std::min(std::abs(res.pcost),
                                                  std::abs(res.dcost)));
    if (opts.verbose) {
      std::fprintf(stderr,
                   "ipm %3d pcost %+.9e dcost %+.9e gap %.2e pres %.2e "
                   "dres %.2e k/t %.2e step %.3f sigma %.3f\n",
                   iter, res.pcost, res.dcost, res.gap, res.pres, res.dres,
                   kappa / tau, last_step, last_sigma);
    }
    if (converged(res, 1.0)) return finish(IpmStatus::kOptimal, iter);
    const double merit =
        std::max({res.pres, res.dres, std::min(res.gap, res.relgap)});
    if (tau >= kappa && merit < best.merit) {
      best = {x, y, z, s, tau, res, merit, iter};
    }
    if (iter - best.iter > kStallIters &&
        converged(best.metrics, kInaccurateFactor)) {
      if (opts.verbose) std::fprintf(stderr, "ipm: stalled\n");
      break;
    }
    if (tau < kappa) {
      if (by_hz < 0) {
        const double infres =
            Norm(A.transpose() * y + G.transpose() * z) / (-by_hz) / cnorm;
        if (infres <= opts.feastol) {
          return finish(IpmStatus::kPrimalInfeasible, iter);
        }
      }
      if (cx < 0) {
        const double infres =
            std::max(Norm(A * x) / bnorm, Norm(G * x + s) / hnorm) / (-cx);
        if (infres <= opts.feastol) {
          return finish(IpmStatus::kDualInfeasible, iter);
        }
      }
    }
    if (iter == opts.max_iter) break;

    if (!ComputeScaling(s, z, l, &sc)) {
      if (opts.verbose) std::fprintf(stderr, "ipm: scaling failed\n");
      break;
    }
    sc.lambda = ApplyW(sc, l, z, false);
    if (!solver.Factor(sc)) {
      if (opts.verbose) std::fprintf(stderr, "ipm: factorization failed\n");
      break;
    }

    Vec x1, y1, z1;
    SolveRefined(solver, op, sc, -c, b, h, &x1, &y1, &z1);
    const double den1 = c.dot(x1) + b.dot(y1) + h.dot(z1) - kappa / tau;
    const double mu = (s.dot(z) + tau * kappa) / (l.degree + 1);

    struct Dir {
      Vec dx, dy, dz, ds;
      double dtau = 0, dkappa = 0;
    };
    auto direction = [&](double sigma, const Vec& ds_target, double dk) {
      Dir d;
      const Vec w_div =
          ApplyW(sc, l, JordanDivide(sc.lambda, ds_target, l), false);
      SolveRefined(solver, op, sc, (1.0 - sigma) * rx, -(1.0 - sigma) * ry,
                   -(1.0 - sigma) * rz - w_div, &d.dx, &d.dy, &d.dz);
      d.dtau = (-(1.0 - sigma) * rt - dk / tau - c.dot(d.dx) - b.dot(d.dy) -
                h.dot(d.dz)) /
               den1;
      d.dx += d.dtau * x1;
      d.dy += d.dtau * y1;
      d.dz += d.dtau * z1;
      d.ds = w_div - ApplyW2(sc, l, d.dz, false);
      d.dkappa = (dk - kappa * d.dtau) / tau;
      return d;
    };
    auto max_step = [&](const Dir& d, double cap) {
      double a = std::min(ConeStep(s, d.ds, l, cap), ConeStep(z, d.dz, l, cap));
      if (d.dtau < 0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    const Vec lam_sq = Jordan(sc.lambda, sc.lambda, l);
    const Dir aff = direction(0.0, -lam_sq, -tau * kappa);
    const double a_aff = max_step(aff, 1.0);
    const double sigma = std::clamp(std::pow(1.0 - a_aff, 3), 0.0, 1.0);

    const Vec corr =
        Jordan(ApplyW(sc, l, aff.ds, true), ApplyW(sc, l, aff.dz, false), l);
    const Vec ds_target = -lam_sq - corr + sigma * mu * e;
    const double dk = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
    const Dir dir = direction(sigma, ds_target, dk);
    double alpha = std::min(1.0, kStepFraction * max_step(dir, 1e10));
    // Back off until the new point is strictly interior in floating point.
    Scaling trial;
    bool interior = false;
    for (int k = 0; k < 40 && alpha > 1e-12 && !interior; ++k) {
      interior =
          ComputeScaling(s + alpha * dir.ds, z + alpha * dir.dz, l, &trial);
      if (!interior) alpha *= 0.8;
    }
    if (!interior) alpha = 0.0;
    last_step = alpha;
    last_sigma = sigma;
    if (!(alpha > 1e-12)) {
      if (opts.verbose) std::fprintf(stderr, "ipm: step too short\n");
      break;
    }

    x += alpha * dir.dx;
    y += alpha * dir.dy;
    z += alpha * dir.dz;
    s += alpha * dir.ds;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    res.iterations = iter + 1;
  }
  const int iters = res.iterations;
  // Report the best iterate rather than the last one, which may have
  // drifted after precision ran out.
  if (best.merit < std::numeric_limits<double>::infinity()) {
    x = best.x;
    y = best.y;
    z = best.z;
    s = best.s;
    tau = best.tau;
    res = best.metrics;
    if (converged(best.metrics, kInaccurateFactor)) {
      res.reduced_accuracy = true;
      return finish(IpmStatus::kOptimal, iters);
    }
  }
  return finish(IpmStatus::kIterationLimit, iters);
}

}  // namespace rankone
