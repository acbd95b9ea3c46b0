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

#include <algorithm>
#include <cmath>

namespace rankone {
namespace {

bool ValidName(const std::string& name) {
  if (name.empty()) return false;
  for (char ch : name) {
    if (ch <= ' ' || ch == 0x7f || ch == '=' || ch == '#') return false;
  }
  return true;
}

std::string VarRef(int i) { return "variable " + std::to_string(i); }

}  // namespace

int ConicModel::AddVar(std::string name, double lo, double hi, double obj) {
  names.push_back(std::move(name));
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(obj);
  return num_vars() - 1;
}

void ConicModel::AddRow(LinearTerms terms, Sense sense, double rhs) {
  rows.push_back({std::move(terms), sense, rhs});
}

void ConicModel::AddRsoc(int u, int v, std::vector<int> w) {
  cones.push_back({u, v, std::move(w)});
}

void ConicModel::MarkBinary(int var) {
  if (var < 0 || var >= num_vars())
    throw InputError(VarRef(var) + " out of range");
  auto it = std::lower_bound(binaries.begin(), binaries.end(), var);
  if (it == binaries.end() || *it != var) binaries.insert(it, var);
  lower[var] = std::max(lower[var], 0.0);
  upper[var] = std::min(upper[var], 1.0);
}

bool ConicModel::IsBinary(int var) const {
  return std::binary_search(binaries.begin(), binaries.end(), var);
}

int ConicModel::FindVar(std::string_view name) const {
  for (int i = 0; i < num_vars(); ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

void ConicModel::Validate() const {
  const int n = num_vars();
  if (static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n ||
      static_cast<int>(objective.size()) != n) {
    throw InputError("model vectors disagree on the variable count");
  }
  for (int i = 0; i < n; ++i) {
    if (!ValidName(names[i])) {
      throw InputError(VarRef(i) + ": invalid name '" + names[i] + "'");
    }
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] == kInfinity ||
        upper[i] == -kInfinity || lower[i] > upper[i]) {
      throw InputError(VarRef(i) + ": invalid bounds");
    }
    if (!std::isfinite(objective[i])) {
      throw InputError(VarRef(i) + ": objective coefficient not finite");
    }
  }
  if (!std::isfinite(objective_constant)) {
    throw InputError("objective constant not finite");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "LIN record " + std::to_string(r);
    if (!std::isfinite(rows[r].rhs))
      throw InputError(where + ": rhs not finite");
    for (const auto& [j, a] : rows[r].terms) {
      if (j < 0 || j >= n) throw InputError(where + ": index out of range");
      if (!std::isfinite(a))
        throw InputError(where + ": coefficient not finite");
    }
  }
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const std::string where = "RSOC record " + std::to_string(k);
    const RsocBlock& c = cones[k];
    for (int j : {c.u, c.v}) {
      if (j < 0 || j >= n) throw InputError(where + ": index out of range");
      if (lower[j] < 0.0) {
        throw InputError(where +
                         ": u/v variable needs a nonnegative lower bound");
      }
    }
    for (int j : c.w) {
      if (j < 0 || j >= n) throw InputError(where + ": index out of range");
    }
  }
  for (std::size_t k = 0; k < binaries.size(); ++k) {
    const int j = binaries[k];
    if (j < 0 || j >= n) throw InputError("BIN record: index out of range");
    if (k > 0 && binaries[k - 1] >= j) {
      throw InputError("BIN record: indices must be sorted and unique");
    }
  }
}

double EvalObjective(const ConicModel& model, const std::vector<double>& x) {
  double v = model.objective_constant;
  for (int i = 0; i < model.num_vars(); ++i) v += model.objective[i] * x[i];
  return v;
}

double MaxViolation(const ConicModel& model, const std::vector<double>& x) {
  double worst = 0.0;
  for (int i = 0; i < model.num_vars(); ++i) {
    worst = std::max({worst, model.lower[i] - x[i], x[i] - model.upper[i]});
  }
  for (const LinearRow& row : model.rows) {
    double act = 0.0;
    for (const auto& [j, a] : row.terms) act += a * x[j];
    const double d = act - row.rhs;
    if (row.sense == Sense::kLe) worst = std::max(worst, d);
    if (row.sense == Sense::kGe) worst = std::max(worst, -d);
    if (row.sense == Sense::kEq) worst = std::max(worst, std::abs(d));
  }
  for (const RsocBlock& c : model.cones) {
    double ww = 0.0;
    for (int j : c.w) ww += x[j] * x[j];
    const double u = x[c.u], v = x[c.v];
    // Distance-like measure: |(2w, u - v)| - (u + v).
    worst =
        std::max(worst, (std::sqrt(4 * ww + (u - v) * (u - v)) - (u + v)) / 2);
  }
  return worst;
}

}  // namespace rankone
