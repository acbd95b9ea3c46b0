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

#include "rankone/oracle_suites.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <vector>

#include "rankone/core_types.h"
#include "rankone/discrete_hull.h"
#include "rankone/extended_cut.h"
#include "rankone/lifted_cuts.h"
#include "rankone/lp_oracle.h"
#include "rankone/random.h"
#include "rankone/set_function.h"

namespace rankone {
namespace {

void Check(OracleReport* rep, double error, double tol,
           const std::string& what) {
  ++rep->checks;
  if (std::isnan(error)) error = kInfinity;
  rep->max_error = std::max(rep->max_error, error);
  if (error > tol) {
    ++rep->violations;
    if (rep->first_violation.empty()) rep->first_violation = what;
  }
}

std::string Describe(const std::string& label, long long trial,
                     std::span<const double> x, std::span<const double> y,
                     const Partition& p) {
  std::ostringstream os;
  os.precision(17);
  os << label << " trial " << trial << " minus=" << FormatSet(p.minus)
     << " x=[";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "] y=[";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << "]";
  return os.str();
}

Partition RandomSigns(StreamRng& rng, int n) {
  IndexSet minus;
  for (int i = 0; i < n; ++i) {
    if (rng.Bit()) minus.push_back(i);
  }
  return Partition::FromMinus(n, minus);
}

void CheckArgs(int max_n, int trials, int limit) {
  if (max_n < 1 || max_n > limit) {
    throw InputError("n must be in [1, " + std::to_string(limit) + "]");
  }
  if (trials < 0) throw InputError("trials must be nonnegative");
}

template <class Trial>
OracleReport Sweep(const std::string& name, long long count, Exec exec,
                   Trial trial) {
  std::vector<OracleReport> parts(count);
  if (exec == Exec::kParallel) {
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < count; ++k) {
      try {
        parts[k] = trial(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (long long k = 0; k < count; ++k) parts[k] = trial(k);
  }
  OracleReport out;
  out.suite = name;
  for (const OracleReport& part : parts) out.Merge(part);
  return out;
}

// min sum_S lambda_S g(S) over the simplex with coverage x, all 2^n columns.
double ExhaustiveEnvelope(std::span<const double> x,
                          std::span<const double> table) {
  const int n = static_cast<int>(x.size());
  const int cols = 1 << n;
  lp_oracle::DenseMatrix a(n + 1, std::vector<double>(cols, 0.0));
  std::vector<double> b(n + 1);
  std::vector<double> c(table.begin(), table.end());
  for (int s = 0; s < cols; ++s) {
    a[0][s] = 1.0;
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) a[i + 1][s] = 1.0;
    }
  }
  b[0] = 1.0;
  for (int i = 0; i < n; ++i) b[i + 1] = x[i];
  const auto sol = lp_oracle::SimplexStandardForm(a, b, c);
  return sol ? sol->value : std::nan("");
}

std::vector<LiftedCut> AllTemplates(CutSign sign, const IndexSet& side) {
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

}  // namespace

void OracleReport::Merge(const OracleReport& other) {
  checks += other.checks;
  violations += other.violations;
  max_error = std::max(max_error, other.max_error);
  if (first_violation.empty()) first_violation = other.first_violation;
}

OracleReport DualitySuite(int max_n, int trials, std::uint64_t seed,
                          Exec exec) {
  CheckArgs(max_n, trials, 16);
  return Sweep("duality", trials, exec, [&](long long k) {
    StreamRng rng(seed, k);
    const int n = rng.UniformInt(1, max_n);
    std::vector<double> x(n), alpha(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.Uniform(0.0, 1.0);
      alpha[i] = rng.Uniform(0.0, 3.0);
    }
    const Partition p = Partition::AllPlus(n);
    const AlphaVector av = MakeAlpha(alpha, p);
    const DualityReport dr = VerifyStrongDuality(x, alpha);
    double facet = -kInfinity;
    for (const LinearIneq& f : SortedFacets(av, p)) {
      facet = std::max(facet, f.Rhs(x));
    }
    const double lp = ExhaustiveEnvelope(x, GTable(av, p));
    const std::string what = Describe("duality", k, x, alpha, p);
    OracleReport rep;
    Check(&rep, std::abs(dr.primal_obj - lp), 1e-8, what + " primal");
    Check(&rep, std::abs(dr.dual_obj - lp), 1e-8, what + " dual");
    Check(&rep, std::abs(facet - lp), 1e-8, what + " facets");
    Check(&rep, dr.cs_violations.empty() ? 0.0 : kInfinity, 0.0,
          what + " complementary slackness");
    return rep;
  });
}

OracleReport HullSuite(int max_n, int trials, std::uint64_t seed, Exec exec) {
  CheckArgs(max_n, trials, 12);
  return Sweep("hull", trials, exec, [&](long long k) {
    StreamRng rng(seed, k);
    const int n = rng.UniformInt(1, max_n);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.Uniform(0.02, 1.0);
      y[i] = rng.Uniform(0.0, 1.0);
    }
    OracleReport rep;
    for (const Partition& p : {RandomSigns(rng, n), Partition::AllPlus(n)}) {
      const double closed = HullValue(x, y, p);
      const double oracle = HullValueOracle(x, y, p);
      const double scale = std::max(std::abs(oracle), 1e-12);
      Check(&rep, std::abs(closed - oracle) / scale, 1e-3,
            Describe("hull", k, x, y, p));
    }
    return rep;
  });
}

OracleReport ConvexCombinationSuite(int max_n, int trials, std::uint64_t seed,
                                    Exec exec) {
  CheckArgs(max_n, trials, 30);
  return Sweep("convex-combination", trials, exec, [&](long long k) {
    StreamRng rng(seed, k);
    const int n = rng.UniformInt(1, max_n);
    const Partition p =
        k % 2 == 0 ? Partition::AllPlus(n) : RandomSigns(rng, n);
    const int points = rng.UniformInt(1, 5);
    std::vector<double> w(points);
    double total = 0.0;
    for (double& v : w) total += (v = rng.Uniform(0.0, 1.0) + 1e-3);
    FractionalPoint pt{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       0.0};
    for (int j = 0; j < points; ++j) {
      std::vector<double> y(n, 0.0);
      for (int i = 0; i < n; ++i) {
        if (rng.Bit()) {
          pt.x[i] += w[j] / total;
          y[i] = rng.Uniform(0.0, 2.0);
          pt.y[i] += w[j] / total * y[i];
        }
      }
      pt.t += w[j] / total * BaseValue(y, p);
    }
    for (double& v : pt.x) v = std::min(v, 1.0);
    const SeparationResult r = Separate(pt, p);
    OracleReport rep;
    Check(&rep, (r.rhs_value - pt.t) / std::max(1.0, pt.t), 1e-6,
          Describe("convex-combination", k, pt.x, pt.y, p));
    return rep;
  });
}

OracleReport TemplateSuite(int max_n, int trials, std::uint64_t seed,
                           Exec exec) {
  CheckArgs(max_n, trials, 12);
  return Sweep("template", trials, exec, [&](long long k) {
    StreamRng rng(seed, k);
    OracleReport rep;
    // Redraw until the separation conditions hold at a finite value.
    for (int attempt = 0; attempt < 200; ++attempt) {
      const int n = rng.UniformInt(1, max_n);
      const Partition p =
          k % 2 == 0 ? Partition::AllPlus(n) : RandomSigns(rng, n);
      std::vector<double> x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.Uniform(0.02, 1.0);
        y[i] = rng.Uniform(0.0, 1.0);
      }
      const auto cut = FindLUGeneral(x, y, p);
      if (!cut || !CutConditionsHold(x, y, *cut, p)) continue;
      const double closed = EvalLiftedRhs(x, y, *cut, p);
      if (!std::isfinite(closed)) continue;
      const double numeric = EvalExtendedMin(x, y, *cut, p, EvalMode::kNumeric);
      Check(&rep, std::abs(numeric - closed) / std::max(1.0, closed), 1e-5,
            Describe("template", k, x, y, p) + " " + cut->DebugString());
      break;
    }
    return rep;
  });
}

OracleReport ValiditySuite(int max_n, int draws, std::uint64_t seed,
                           Exec exec) {
  CheckArgs(max_n, draws, 6);
  struct Unit {
    int n;
    unsigned minus;
    CutSign sign;
    unsigned support;
  };
  std::vector<Unit> units;
  for (int n = 1; n <= max_n; ++n) {
    for (unsigned minus = 0; minus < (1u << n); ++minus) {
      for (CutSign sign : {CutSign::kPlus, CutSign::kMinus}) {
        for (unsigned z = 0; z < (1u << n); ++z) {
          units.push_back({n, minus, sign, z});
        }
      }
    }
  }
  return Sweep(
      "validity", static_cast<long long>(units.size()), exec, [&](long long k) {
        const Unit& u = units[k];
        StreamRng rng(seed, k);
        const Partition p = Partition::FromMinus(u.n, MaskToSet(u.minus, u.n));
        const std::vector<LiftedCut> cuts =
            AllTemplates(u.sign, SidesFor(u.sign, p).side);
        OracleReport rep;
        for (int draw = 0; draw < draws; ++draw) {
          std::vector<double> x(u.n, 0.0), y(u.n, 0.0);
          for (int i = 0; i < u.n; ++i) {
            if (u.support >> i & 1u) {
              x[i] = 1.0;
              y[i] = rng.Uniform(0.0, 2.0);
            }
          }
          const double base = BaseValue(y, p);
          for (const LiftedCut& cut : cuts) {
            double v = 0.0;
            try {
              v = EvalExtendedMin(x, y, cut, p);
            } catch (const SolverError& e) {
              throw SolverError(std::string(e.what()) + " at " +
                                Describe("validity", k, x, y, p));
            }
            Check(&rep, (v - base) / std::max(1.0, base), 1e-6,
                  Describe("validity", k, x, y, p) + " " + cut.DebugString());
          }
        }
        return rep;
      });
}

bool IsSuiteName(const std::string& name) {
  return name == "hull" || name == "duality" || name == "validity";
}

OracleReport RunNamedSuite(const std::string& name, int max_n, int trials,
                           std::uint64_t seed, Exec exec) {
  if (name == "duality") return DualitySuite(max_n, trials, seed, exec);
  if (name == "hull") {
    OracleReport rep = HullSuite(max_n, trials, seed, exec);
    rep.Merge(ConvexCombinationSuite(max_n, trials, seed, exec));
    return rep;
  }
  if (name == "validity") {
    OracleReport rep = TemplateSuite(max_n, trials, seed, exec);
    rep.Merge(ValiditySuite(max_n, std::max(1, trials / 10), seed, exec));
    rep.suite = name;
    return rep;
  }
  throw InputError("unknown suite '" + name + "'");
}

}  // namespace rankone
