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

#include "rankone/relaxation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rankone/cqm_format.h"

namespace rankone {
namespace {

constexpr double kFeasTol = 1e-9;
constexpr int kMaxPresolvePasses = 100;

double Slack(double rhs) { return kFeasTol * std::max(1.0, std::abs(rhs)); }

class Presolver {
 public:
  explicit Presolver(const ConicModel& model)
      : model_(model),
        lo_(model.lower),
        hi_(model.upper),
        fixed_(model.num_vars(), 0),
        value_(model.num_vars(), 0.0),
        row_alive_(model.rows.size(), 1),
        cone_alive_(model.cones.size(), 1) {}

  // Returns false with a reason when the model is proven infeasible.
  bool Run() {
    for (int pass = 0; pass < kMaxPresolvePasses; ++pass) {
      changed_ = false;
      if (!FixVariables()) return false;
      for (std::size_t r = 0; r < model_.rows.size(); ++r) {
        if (row_alive_[r] && !ReduceRow(r)) return false;
      }
      for (std::size_t k = 0; k < model_.cones.size(); ++k) {
        if (cone_alive_[k] && !ReduceCone(k)) return false;
      }
      if (!changed_) return FixVariables();
    }
    return FixVariables();
  }

  CompiledModel Build() const;
  const std::string& reason() const { return reason_; }

 private:
  bool Infeasible(std::string why) {
    reason_ = std::move(why);
    return false;
  }

  bool FixVariables() {
    for (int i = 0; i < model_.num_vars(); ++i) {
      if (fixed_[i]) continue;
      if (lo_[i] > hi_[i] + Slack(hi_[i])) {
        return Infeasible("empty bounds on " + model_.names[i]);
      }
      if (std::isfinite(lo_[i]) && std::isfinite(hi_[i]) &&
          hi_[i] - lo_[i] <= 1e-12 * std::max(1.0, std::abs(lo_[i]))) {
        fixed_[i] = 1;
        value_[i] = lo_[i] == hi_[i] ? lo_[i] : 0.5 * (lo_[i] + hi_[i]);
        changed_ = true;
      }
    }
    return true;
  }

  void TightenUpper(int j, double b) {
    if (b < hi_[j]) {
      hi_[j] = b < lo_[j] && b >= lo_[j] - Slack(lo_[j]) ? lo_[j] : b;
      changed_ = true;
    }
  }
  void TightenLower(int j, double b) {
    if (b > lo_[j]) {
      lo_[j] = b > hi_[j] && b <= hi_[j] + Slack(hi_[j]) ? hi_[j] : b;
      changed_ = true;
    }
  }

  bool ReduceRow(std::size_t r) {
    const LinearRow& row = model_.rows[r];
    double constant = 0.0;
    std::map<int, double> free;
    for (const auto& [j, a] : row.terms) {
      if (fixed_[j]) {
        constant += a * value_[j];
      } else {
        free[j] += a;
      }
    }
    for (auto it = free.begin(); it != free.end();) {
      it = it->second == 0.0 ? free.erase(it) : std::next(it);
    }
    const double rhs = row.rhs - constant;
    const bool le = row.sense != Sense::kGe, ge = row.sense != Sense::kLe;
    const std::string where = "LIN record " + std::to_string(r);
    if (free.empty()) {
      if ((le && 0.0 > rhs + Slack(row.rhs)) ||
          (ge && 0.0 < rhs - Slack(row.rhs))) {
        return Infeasible(where + " violated by fixed values");
      }
      row_alive_[r] = 0;
      changed_ = true;
      return true;
    }
    // Activity range from the current bounds.
    double amin = 0.0, amax = 0.0;
    for (const auto& [j, a] : free) {
      amin += a > 0 ? a * lo_[j] : a * hi_[j];
      amax += a > 0 ? a * hi_[j] : a * lo_[j];
    }
    if ((le && amin > rhs + Slack(row.rhs)) ||
        (ge && amax < rhs - Slack(row.rhs))) {
      return Infeasible(where + " cannot be satisfied within bounds");
    }
    if (free.size() == 1) {
      const auto [j, a] = *free.begin();
      const double b = rhs / a;
      if ((le && a > 0) || (ge && a < 0)) TightenUpper(j, b);
      if ((ge && a > 0) || (le && a < 0)) TightenLower(j, b);
      row_alive_[r] = 0;
      changed_ = true;
    }
    return true;
  }

  bool ReduceCone(std::size_t k) {
    const RsocBlock& c = model_.cones[k];
    const std::string where = "RSOC record " + std::to_string(k);
    const bool zero_side = (fixed_[c.u] && std::abs(value_[c.u]) <= 1e-12) ||
                           (fixed_[c.v] && std::abs(value_[c.v]) <= 1e-12);
    if (zero_side) {
      // w'w <= 0 forces every w entry to zero.
      for (int j : c.w) {
        if (fixed_[j]) {
          if (std::abs(value_[j]) > 1e-9) {
            return Infeasible(where + " has a zero side and nonzero w");
          }
        } else {
          if (lo_[j] > Slack(0.0) || hi_[j] < -Slack(0.0)) {
            return Infeasible(where +
                              " has a zero side and w bounded away from 0");
          }
          lo_[j] = hi_[j] = 0.0;
        }
      }
      cone_alive_[k] = 0;
      changed_ = true;
      return true;
    }
    bool all_fixed = fixed_[c.u] && fixed_[c.v];
    for (int j : c.w) all_fixed = all_fixed && fixed_[j];
    if (all_fixed) {
      double ww = 0.0;
      for (int j : c.w) ww += value_[j] * value_[j];
      const double uv = value_[c.u] * value_[c.v];
      if (ww > uv + Slack(uv))
        return Infeasible(where + " violated by fixed values");
      cone_alive_[k] = 0;
      changed_ = true;
    }
    return true;
  }

  const ConicModel& model_;
  std::vector<double> lo_, hi_;
  std::vector<char> fixed_;
  std::vector<double> value_;
  std::vector<char> row_alive_, cone_alive_;
  bool changed_ = false;
  std::string reason_;
};

// Affine expression over program columns.
struct Affine {
  double constant = 0.0;
  std::map<int, double> terms;
};

CompiledModel Presolver::Build() const {
  CompiledModel out;
  const int n = model_.num_vars();
  out.column_of.assign(n, -1);
  out.fixed_value.assign(n, 0.0);
  int cols = 0;
  for (int i = 0; i < n; ++i) {
    if (fixed_[i]) {
      out.fixed_value[i] = value_[i];
    } else {
      out.column_of[i] = cols++;
    }
  }
  ConeProgram& prog = out.program;
  prog.num_vars = cols;
  prog.c.assign(cols, 0.0);
  prog.c0 = model_.objective_constant;
  for (int i = 0; i < n; ++i) {
    if (fixed_[i]) {
      prog.c0 += model_.objective[i] * value_[i];
    } else {
      prog.c[out.column_of[i]] = model_.objective[i];
    }
  }
  prog.a.cols = cols;
  prog.g.cols = cols;

  auto affine_of = [&](const LinearTerms& terms) {
    Affine e;
    for (const auto& [j, a] : terms) {
      if (fixed_[j]) {
        e.constant += a * value_[j];
      } else {
        e.terms[out.column_of[j]] += a;
      }
    }
    return e;
  };
  // Appends the cone row h - G x = e.
  auto add_g = [&](const Affine& e) {
    std::vector<std::pair<int, double>> row;
    for (const auto& [j, a] : e.terms) {
      if (a != 0.0) row.emplace_back(j, -a);
    }
    prog.g.AddRow(row);
    prog.h.push_back(e.constant);
  };

  // Nonnegative rows: bounds first, then inequalities.
  for (int i = 0; i < n; ++i) {
    if (fixed_[i]) continue;
    const int col = out.column_of[i];
    if (std::isfinite(lo_[i])) add_g({-lo_[i], {{col, 1.0}}});
    if (std::isfinite(hi_[i])) add_g({hi_[i], {{col, -1.0}}});
  }
  for (std::size_t r = 0; r < model_.rows.size(); ++r) {
    if (!row_alive_[r]) continue;
    const LinearRow& row = model_.rows[r];
    Affine e = affine_of(row.terms);
    if (row.sense == Sense::kEq) {
      std::vector<std::pair<int, double>> arow;
      for (const auto& [j, a] : e.terms) {
        if (a != 0.0) arow.emplace_back(j, a);
      }
      prog.a.AddRow(arow);
      prog.b.push_back(row.rhs - e.constant);
      continue;
    }
    // Le: rhs - a'x >= 0; Ge: a'x - rhs >= 0.
    const double sign = row.sense == Sense::kLe ? -1.0 : 1.0;
    Affine slack;
    slack.constant = sign * (e.constant - row.rhs);
    for (const auto& [j, a] : e.terms) slack.terms[j] = sign * a;
    add_g(slack);
  }
  prog.num_nonneg = prog.g.rows();
  for (std::size_t k = 0; k < model_.cones.size(); ++k) {
    if (!cone_alive_[k]) continue;
    const RsocBlock& c = model_.cones[k];
    const Affine u = affine_of({{c.u, 1.0}});
    const Affine v = affine_of({{c.v, 1.0}});
    Affine s0, s1;
    s0.constant = 0.5 * (u.constant + v.constant);
    s1.constant = 0.5 * (u.constant - v.constant);
    for (const auto& [j, a] : u.terms) {
      s0.terms[j] += 0.5 * a;
      s1.terms[j] += 0.5 * a;
    }
    for (const auto& [j, a] : v.terms) {
      s0.terms[j] += 0.5 * a;
      s1.terms[j] -= 0.5 * a;
    }
    add_g(s0);
    add_g(s1);
    for (int j : c.w) add_g(affine_of({{j, 1.0}}));
    prog.soc_dims.push_back(2 + static_cast<int>(c.w.size()));
  }
  return out;
}

SolveResult SolveAssignment(const ConicModel& base, unsigned long long mask,
                            double tol) {
  ConicModel model = base;
  for (std::size_t k = 0; k < base.binaries.size(); ++k) {
    const int j = base.binaries[k];
    const double v = (mask >> k & 1ULL) ? 1.0 : 0.0;
    if (v < model.lower[j] || v > model.upper[j]) {
      SolveResult r;
      r.status = SolveStatus::kInfeasible;
      return r;
    }
    model.lower[j] = model.upper[j] = v;
  }
  return SolveRelaxation(model, tol);
}

void CheckBinaryCount(const ConicModel& model, int max_binaries) {
  if (max_binaries > 30) throw CapacityError("max_binaries above 30");
  if (static_cast<int>(model.binaries.size()) > max_binaries) {
    throw CapacityError("model has " + std::to_string(model.binaries.size()) +
                        " binaries, limit is " + std::to_string(max_binaries));
  }
}

// Picks the lowest-objective optimal assignment (lowest index on ties) and
// re-solves it for the primal vector.
SolveResult Reduce(const ConicModel& model, const std::vector<SolveStatus>& st,
                   const std::vector<double>& obj, double tol) {
  long long best = -1;
  bool any_limit = false, any_unbounded = false;
  for (std::size_t a = 0; a < st.size(); ++a) {
    if (st[a] == SolveStatus::kIterationLimit) any_limit = true;
    if (st[a] == SolveStatus::kUnbounded) any_unbounded = true;
    if (st[a] != SolveStatus::kOptimal) continue;
    if (best < 0 || obj[a] < obj[best]) best = static_cast<long long>(a);
  }
  SolveResult out;
  if (best < 0) {
    out.status = any_unbounded ? SolveStatus::kUnbounded
                 : any_limit   ? SolveStatus::kIterationLimit
                               : SolveStatus::kInfeasible;
    return out;
  }
  out = SolveAssignment(model, static_cast<unsigned long long>(best), tol);
  if (any_unbounded) out.status = SolveStatus::kUnbounded;
  if (any_limit) out.status = SolveStatus::kIterationLimit;
  return out;
}

}  // namespace

const char* StatusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
  }
  return "Unknown";
}

CompiledModel CompileModel(const ConicModel& model) {
  model.Validate();
  Presolver pre(model);
  if (!pre.Run()) {
    CompiledModel out;
    out.infeasible = true;
    out.reason = pre.reason();
    return out;
  }
  return pre.Build();
}

SolveResult SolveRelaxation(const ConicModel& model, double tol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const CompiledModel cm = CompileModel(model);
  SolveResult out;
  if (cm.infeasible) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  const int n = model.num_vars();
  out.primal = cm.fixed_value;
  if (cm.program.num_vars == 0) {
    out.status = SolveStatus::kOptimal;
    out.objective = cm.program.c0;
    return out;
  }
  IpmOptions opts;
  opts.feastol = tol;
  opts.abstol = tol;
  opts.reltol = tol;
  const IpmResult r = SolveConeProgram(cm.program, opts);
  out.iterations = r.iterations;
  out.kkt = {r.pres, r.dres, r.relgap};
  switch (r.status) {
    case IpmStatus::kOptimal:
      out.status = SolveStatus::kOptimal;
      break;
    case IpmStatus::kPrimalInfeasible:
      out.status = SolveStatus::kInfeasible;
      break;
    case IpmStatus::kDualInfeasible:
      out.status = SolveStatus::kUnbounded;
      break;
    case IpmStatus::kIterationLimit:
      out.status = SolveStatus::kIterationLimit;
      break;
  }
  if (out.status == SolveStatus::kInfeasible) {
    out.primal.clear();
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (cm.column_of[i] >= 0) out.primal[i] = r.x[cm.column_of[i]];
  }
  out.objective = out.status == SolveStatus::kUnbounded ? -kInfinity : r.pcost;
  return out;
}

SolveResult SolveMipBruteforce(const ConicModel& model, int max_binaries,
                               double tol) {
  CheckBinaryCount(model, max_binaries);
  model.Validate();
  const long long count = 1LL << model.binaries.size();
  std::vector<SolveStatus> st(count);
  std::vector<double> obj(count, kInfinity);
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long a = 0; a < count; ++a) {
    try {
      const SolveResult r = SolveAssignment(model, a, tol);
      st[a] = r.status;
      obj[a] = r.objective;
    } catch (const std::exception& e) {
      errors[a] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw SolverError("brute-force subproblem failed: " + e);
  }
  return Reduce(model, st, obj, tol);
}

SolveResult SolveMipBruteforceSerial(const ConicModel& model, int max_binaries,
                                     double tol) {
  CheckBinaryCount(model, max_binaries);
  model.Validate();
  const long long count = 1LL << model.binaries.size();
  std::vector<SolveStatus> st(count);
  std::vector<double> obj(count, kInfinity);
  for (long long a = 0; a < count; ++a) {
    const SolveResult r = SolveAssignment(model, a, tol);
    st[a] = r.status;
    obj[a] = r.objective;
  }
  return Reduce(model, st, obj, tol);
}

std::string FormatSolution(const ConicModel& model, const SolveResult& result) {
  std::ostringstream os;
  os << "# status=" << StatusName(result.status) << "\n";
  os << "# objective=" << FormatReal(result.objective) << "\n";
  os << "# primal_inf=" << FormatReal(result.kkt.primal_inf)
     << " dual_inf=" << FormatReal(result.kkt.dual_inf)
     << " gap=" << FormatReal(result.kkt.gap) << "\n";
  if (result.primal.size() == static_cast<std::size_t>(model.num_vars())) {
    for (int i = 0; i < model.num_vars(); ++i) {
      os << model.names[i] << "=" << FormatReal(result.primal[i]) << "\n";
    }
  }
  return os.str();
}

}  // namespace rankone
