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

#include <cmath>
#include <cstdio>
#include <map>

#include "rankone/cone_program.h"

namespace rankone {
namespace {

// Below this an x value is treated as zero when building the inner program.
constexpr double kZeroX = 1e-12;

// Affine expression over program variables.
struct Affine {
  double constant = 0.0;
  std::map<int, double> terms;

  Affine& Add(int var, double coef) {
    terms[var] += coef;
    return *this;
  }
};

class ProgramBuilder {
 public:
  int NewVar(double cost = 0.0) {
    c_.push_back(cost);
    return static_cast<int>(c_.size()) - 1;
  }
  void Nonneg(const Affine& e) { nonneg_.push_back(e); }
  void Equal(const Affine& e) { eq_.push_back(e); }
  // num^2 <= split * den.
  void Ratio(const Affine& num, int split, const Affine& den) {
    cones_.push_back({num, split, den});
  }

  ConeProgram Build() const {
    ConeProgram p;
    const int n = static_cast<int>(c_.size());
    p.num_vars = n;
    p.c = c_;
    p.a.cols = n;
    p.g.cols = n;
    for (const Affine& e : eq_) {
      p.a.AddRow(Terms(e, 1.0));
      p.b.push_back(-e.constant);
    }
    for (const Affine& e : nonneg_) AddG(e, &p);
    p.num_nonneg = static_cast<int>(nonneg_.size());
    for (const ConeTerm& t : cones_) {
      Affine s0 = Half(t.den, 1.0), s1 = Half(t.den, -1.0);
      s0.Add(t.split, 0.5);
      s1.Add(t.split, 0.5);
      AddG(s0, &p);
      AddG(s1, &p);
      AddG(t.num, &p);
      p.soc_dims.push_back(3);
    }
    return p;
  }

 private:
  struct ConeTerm {
    Affine num;
    int split;
    Affine den;
  };

  static std::vector<std::pair<int, double>> Terms(const Affine& e,
                                                   double sign) {
    std::vector<std::pair<int, double>> out;
    for (const auto& [j, a] : e.terms) {
      if (a != 0.0) out.emplace_back(j, sign * a);
    }
    return out;
  }
  static Affine Half(const Affine& e, double sign) {
    Affine h;
    h.constant = 0.5 * sign * e.constant;
    for (const auto& [j, a] : e.terms) h.terms[j] = 0.5 * sign * a;
    return h;
  }
  static void AddG(const Affine& e, ConeProgram* p) {
    p->g.AddRow(Terms(e, -1.0));
    p->h.push_back(e.constant);
  }

  std::vector<double> c_;
  std::vector<Affine> nonneg_, eq_;
  std::vector<ConeTerm> cones_;
};

double NumericMin(std::span<const double> x, std::span<const double> y,
                  const LiftedCut& cut, const Partition& p) {
  const SignedSides sides = SidesFor(cut.sign, p);
  ProgramBuilder b;
  // R positions with a vanishing x have their multipliers pinned to
  // (y_i, x_i), leaving no cone.
  IndexSet r_live;
  double y_r0 = 0.0;
  for (int i : cut.R) {
    if (x[i] > kZeroX) {
      r_live.push_back(i);
    } else {
      y_r0 += y[i];
    }
  }
  const double x_u = SumOver(x, cut.U);
  const double u_const = SumOver(y, cut.U) - SumOver(y, sides.opposite) + y_r0;
  const bool u_term = x_u > kZeroX;
  // Without a U denominator the U numerator must vanish. Its multiplier
  // part is nonnegative, so a positive constant is infeasible and a zero
  // constant pins every lambda-type multiplier to zero.
  if (!u_term && u_const > kZeroX) return kInfinity;
  const bool lambdas = u_term || u_const < -kZeroX;

  std::vector<int> lam(r_live.size(), -1), mu(r_live.size(), -1);
  int lam0 = -1, mu0 = -1, zeta = -1;
  for (std::size_t k = 0; k < r_live.size(); ++k) {
    mu[k] = b.NewVar();
    b.Nonneg(Affine().Add(mu[k], 1.0));
    b.Nonneg(Affine{x[r_live[k]], {}}.Add(mu[k], -1.0));
    if (lambdas) {
      lam[k] = b.NewVar();
      b.Nonneg(Affine().Add(lam[k], 1.0));
    }
  }
  if (lambdas) {
    lam0 = b.NewVar();
    zeta = b.NewVar();
    b.Nonneg(Affine().Add(lam0, 1.0));
    b.Nonneg(Affine().Add(zeta, 1.0));
  }
  if (u_term) {
    mu0 = b.NewVar();
    b.Nonneg(Affine().Add(mu0, 1.0));
    b.Nonneg(Affine{x_u, {}}.Add(mu0, -1.0));
  }

  // L term.
  // Pinned R positions contribute x_i - mu_i = 0 to the denominator.
  Affine den_l{1.0 - SumOver(x, r_live) - x_u, {}};
  for (int v : mu) den_l.Add(v, 1.0);
  if (mu0 >= 0) den_l.Add(mu0, 1.0);
  b.Nonneg(den_l);
  Affine num_l{SumOver(y, cut.L), {}};
  if (lam0 >= 0) num_l.Add(lam0, -1.0);
  b.Ratio(num_l, b.NewVar(1.0), den_l);

  // R terms.
  for (std::size_t k = 0; k < r_live.size(); ++k) {
    const int i = r_live[k];
    Affine num{y[i], {}};
    if (lam[k] >= 0) num.Add(lam[k], -1.0);
    b.Ratio(num, b.NewVar(1.0), Affine{x[i], {}}.Add(mu[k], -1.0));
  }

  // U term.
  if (lambdas) {
    Affine num_u{u_const, {}};
    num_u.Add(lam0, 1.0).Add(zeta, 1.0);
    for (int v : lam) num_u.Add(v, 1.0);
    if (u_term) {
      b.Ratio(num_u, b.NewVar(1.0), Affine{x_u, {}}.Add(mu0, -1.0));
    } else {
      b.Equal(num_u);
    }
  }

  IpmOptions opts;
  opts.feastol = 1e-10;
  opts.abstol = 1e-10;
  opts.reltol = 1e-10;
  const IpmResult r = SolveConeProgram(b.Build(), opts);
  if (r.status == IpmStatus::kPrimalInfeasible) return kInfinity;
  if (r.status != IpmStatus::kOptimal) {
    // Accept a slightly looser certificate before giving up.
    if (r.pres <= 1e-7 && r.dres <= 1e-7 && r.relgap <= 1e-7) return r.pcost;
    char buf[128];
    std::snprintf(buf, sizeof(buf), " (pres %.2e dres %.2e relgap %.2e)",
                  r.pres, r.dres, r.relgap);
    throw SolverError("inner minimization did not converge for cut " +
                      cut.DebugString() + buf);
  }
  return r.pcost;
}

}  // namespace

RowContext MakeRowContext(std::span<const double> f,
                          std::span<const int> x_vars,
                          std::span<const int> y_vars, int t_var) {
  if (f.size() != x_vars.size() || f.size() != y_vars.size()) {
    throw InputError("row context vectors differ in length");
  }
  RowContext row;
  row.t_var = t_var;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    row.f.push_back(f[i]);
    row.x_vars.push_back(x_vars[i]);
    row.y_vars.push_back(y_vars[i]);
  }
  return row;
}

Partition RowPartition(const RowContext& row) {
  IndexSet minus;
  for (std::size_t i = 0; i < row.f.size(); ++i) {
    if (row.f[i] < 0) minus.push_back(static_cast<int>(i));
  }
  return Partition::FromMinus(static_cast<int>(row.f.size()), minus);
}

ExtendedCutBlock EmitExtendedCut(const LiftedCut& cut, const RowContext& row,
                                 ConicModel* model) {
  for (double fi : row.f) {
    if (fi == 0.0 || !std::isfinite(fi)) {
      throw InputError("row context has a zero or non-finite coefficient");
    }
  }
  const Partition p = RowPartition(row);
  CheckCutShape(cut, p);
  const int nv = model->num_vars();
  if (row.t_var < 0 || row.t_var >= nv)
    throw InputError("t variable out of range");
  for (std::size_t i = 0; i < row.f.size(); ++i) {
    if (row.x_vars[i] < 0 || row.x_vars[i] >= nv || row.y_vars[i] < 0 ||
        row.y_vars[i] >= nv) {
      throw InputError("row context variable out of range");
    }
  }
  const SignedSides sides = SidesFor(cut.sign, p);
  const bool general = !sides.opposite.empty() || !cut.U.empty();
  const std::string tag = "k" + std::to_string(nv) + "_";

  ExtendedCutBlock blk;
  blk.cut = cut;
  auto add_scaled_y = [&](LinearTerms* t, const IndexSet& s, double sign) {
    for (int i : s) t->emplace_back(row.y_vars[i], sign * std::abs(row.f[i]));
  };
  auto add_x = [&](LinearTerms* t, const IndexSet& s, double sign) {
    for (int i : s) t->emplace_back(row.x_vars[i], sign);
  };
  // Adds a ratio term num^2 / den <= split with fresh num/den variables
  // tied to the given expressions: num - expr = const, den - expr = const.
  auto ratio_term = [&](const std::string& name, LinearTerms num_expr,
                        double num_const, LinearTerms den_expr,
                        double den_const) {
    const int w = model->AddVar(tag + "n" + name, -kInfinity, kInfinity);
    const int d = model->AddVar(tag + "d" + name, 0.0, kInfinity);
    const int s = model->AddVar(tag + "s" + name, 0.0, kInfinity);
    num_expr.emplace_back(w, -1.0);
    model->AddRow(std::move(num_expr), Sense::kEq, -num_const);
    den_expr.emplace_back(d, -1.0);
    model->AddRow(std::move(den_expr), Sense::kEq, -den_const);
    blk.cones.push_back(static_cast<int>(model->cones.size()));
    model->AddRsoc(s, d, {w});
    blk.split_vars.push_back(s);
  };

  for (int i : cut.R) {
    const std::string id = std::to_string(i);
    blk.mu.push_back(model->AddVar(tag + "mu" + id, 0.0, kInfinity));
    if (general) {
      blk.lambda.push_back(model->AddVar(tag + "lam" + id, 0.0, kInfinity));
    }
  }
  if (general) {
    blk.lambda0 = model->AddVar(tag + "lam0", 0.0, kInfinity);
    blk.mu0 = model->AddVar(tag + "mu0", 0.0, kInfinity);
    blk.zeta = model->AddVar(tag + "zeta", 0.0, kInfinity);
  }
  // mu_i <= x_i and mu0 <= x(U).
  for (std::size_t k = 0; k < cut.R.size(); ++k) {
    model->AddRow({{blk.mu[k], 1.0}, {row.x_vars[cut.R[k]], -1.0}}, Sense::kLe,
                  0.0);
  }
  if (general) {
    LinearTerms t = {{blk.mu0, 1.0}};
    add_x(&t, cut.U, -1.0);
    model->AddRow(std::move(t), Sense::kLe, 0.0);
  }

  // L term: (y(L) - lam0)^2 / (1 - x(R) - x(U) + mu(R) + mu0).
  {
    LinearTerms num;
    add_scaled_y(&num, cut.L, 1.0);
    if (general) num.emplace_back(blk.lambda0, -1.0);
    LinearTerms den;
    add_x(&den, cut.R, -1.0);
    add_x(&den, cut.U, -1.0);
    for (int v : blk.mu) den.emplace_back(v, 1.0);
    if (general) den.emplace_back(blk.mu0, 1.0);
    ratio_term("L", std::move(num), 0.0, std::move(den), 1.0);
  }
  // R terms: (y_i - lam_i)^2 / (x_i - mu_i).
  for (std::size_t k = 0; k < cut.R.size(); ++k) {
    const int i = cut.R[k];
    LinearTerms num = {{row.y_vars[i], std::abs(row.f[i])}};
    if (general) num.emplace_back(blk.lambda[k], -1.0);
    LinearTerms den = {{row.x_vars[i], 1.0}, {blk.mu[k], -1.0}};
    ratio_term("R" + std::to_string(i), std::move(num), 0.0, std::move(den),
               0.0);
  }
  // U term: (y(U) - y(opp) + lam0 + lam(R) + zeta)^2 / (x(U) - mu0).
  if (general) {
    LinearTerms num;
    add_scaled_y(&num, cut.U, 1.0);
    add_scaled_y(&num, sides.opposite, -1.0);
    num.emplace_back(blk.lambda0, 1.0);
    for (int v : blk.lambda) num.emplace_back(v, 1.0);
    num.emplace_back(blk.zeta, 1.0);
    LinearTerms den;
    add_x(&den, cut.U, 1.0);
    den.emplace_back(blk.mu0, -1.0);
    ratio_term("U", std::move(num), 0.0, std::move(den), 0.0);
  }
  // t >= sum of the split parts.
  LinearTerms epi = {{row.t_var, 1.0}};
  for (int s : blk.split_vars) epi.emplace_back(s, -1.0);
  model->AddRow(std::move(epi), Sense::kGe, 0.0);
  return blk;
}

double EvalExtendedMin(std::span<const double> x, std::span<const double> y,
                       const LiftedCut& cut, const Partition& p,
                       EvalMode mode) {
  if (static_cast<int>(x.size()) != p.n || static_cast<int>(y.size()) != p.n) {
    throw InputError("point and partition sizes differ");
  }
  for (int i = 0; i < p.n; ++i) {
    if (!(x[i] >= -kTol && x[i] <= 1.0 + kTol) || !(y[i] >= -kTol)) {
      throw InputError("point outside bounds at index " + std::to_string(i));
    }
  }
  CheckCutShape(cut, p);
  if (mode == EvalMode::kAuto && CutConditionsHold(x, y, cut, p)) {
    return EvalLiftedRhs(x, y, cut, p);
  }
  return NumericMin(x, y, cut, p);
}

}  // namespace rankone
