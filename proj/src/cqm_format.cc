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

#include "rankone/cqm_format.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace rankone {
namespace {

char SenseChar(Sense s) {
  switch (s) {
    case Sense::kLe:
      return 'L';
    case Sense::kEq:
      return 'E';
    case Sense::kGe:
      return 'G';
  }
  return '?';
}

// Tokenized non-comment lines with their 1-based source line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      std::vector<std::string_view> tokens;
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
      }
      if (!tokens.empty() && tokens[0][0] != '#') {
        lines_.push_back({number, std::move(tokens)});
      }
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  bool Done() const { return next_ >= lines_.size(); }

  const std::vector<std::string_view>& Next() {
    if (Done()) {
      current_ = lines_.empty() ? 1 : lines_.back().number + 1;
      Fail("unexpected end of input");
    }
    current_ = lines_[next_].number;
    return lines_[next_++].tokens;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(current_) + ": " + msg);
  }

  void Expect(const std::vector<std::string_view>& tokens, std::size_t count) {
    if (tokens.size() != count) {
      Fail("expected " + std::to_string(count) + " fields, got " +
           std::to_string(tokens.size()));
    }
  }

  long long Int(std::string_view tok) {
    long long v = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      Fail("invalid integer '" + std::string(tok) + "'");
    }
    return v;
  }

  int Count(std::string_view tok) {
    const long long v = Int(tok);
    if (v < 0 || v > 100000000)
      Fail("invalid count '" + std::string(tok) + "'");
    return static_cast<int>(v);
  }

  double Real(std::string_view tok) {
    if (tok == "inf") return kInfinity;
    if (tok == "-inf") return -kInfinity;
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || std::isnan(v)) {
      Fail("invalid number '" + std::string(tok) + "'");
    }
    return v;
  }

  // Header line "<KEYWORD> <fields...>".
  const std::vector<std::string_view>& Header(std::string_view keyword,
                                              std::size_t count) {
    const auto& tokens = Next();
    if (tokens[0] != keyword) {
      Fail("expected section " + std::string(keyword) + ", got '" +
           std::string(tokens[0]) + "'");
    }
    Expect(tokens, count);
    return tokens;
  }

 private:
  struct Line {
    int number;
    std::vector<std::string_view> tokens;
  };
  std::vector<Line> lines_;
  std::size_t next_ = 0;
  int current_ = 1;
};

}  // namespace

std::string FormatReal(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string ExportModel(const ConicModel& model) {
  model.Validate();
  std::ostringstream os;
  const int n = model.num_vars();
  os << "VERSION 1\n";
  os << "VARS " << n << "\n";
  for (const std::string& name : model.names) os << name << "\n";
  os << "BOUNDS " << n << "\n";
  for (int i = 0; i < n; ++i) {
    os << FormatReal(model.lower[i]) << " " << FormatReal(model.upper[i])
       << "\n";
  }
  os << "BIN " << model.binaries.size() << "\n";
  for (int j : model.binaries) os << j << "\n";
  std::vector<int> nz;
  for (int i = 0; i < n; ++i) {
    if (model.objective[i] != 0.0 || std::signbit(model.objective[i])) {
      nz.push_back(i);
    }
  }
  os << "OBJ " << nz.size() << " " << FormatReal(model.objective_constant)
     << "\n";
  for (int i : nz) os << i << " " << FormatReal(model.objective[i]) << "\n";
  os << "LIN " << model.rows.size() << "\n";
  for (const LinearRow& row : model.rows) {
    os << SenseChar(row.sense) << " " << FormatReal(row.rhs) << " "
       << row.terms.size();
    for (const auto& [j, a] : row.terms) os << " " << j << " " << FormatReal(a);
    os << "\n";
  }
  os << "RSOC " << model.cones.size() << "\n";
  for (const RsocBlock& c : model.cones) {
    os << c.u << " " << c.v << " " << c.w.size();
    for (int j : c.w) os << " " << j;
    os << "\n";
  }
  os << "END\n";
  return os.str();
}

ConicModel ImportModel(std::string_view text) {
  LineReader in(text);
  ConicModel model;
  {
    const auto& t = in.Header("VERSION", 2);
    if (t[1] != "1") in.Fail("unsupported version '" + std::string(t[1]) + "'");
  }
  const int n = in.Count(in.Header("VARS", 2)[1]);
  for (int i = 0; i < n; ++i) {
    const auto& t = in.Next();
    in.Expect(t, 1);
    model.AddVar(std::string(t[0]), 0.0, 0.0);
  }
  if (in.Count(in.Header("BOUNDS", 2)[1]) != n) {
    in.Fail("BOUNDS count differs from VARS");
  }
  for (int i = 0; i < n; ++i) {
    const auto& t = in.Next();
    in.Expect(t, 2);
    model.lower[i] = in.Real(t[0]);
    model.upper[i] = in.Real(t[1]);
  }
  const int k = in.Count(in.Header("BIN", 2)[1]);
  for (int i = 0; i < k; ++i) {
    const auto& t = in.Next();
    in.Expect(t, 1);
    model.binaries.push_back(static_cast<int>(in.Int(t[0])));
  }
  {
    const auto& t = in.Header("OBJ", 3);
    const int nnz = in.Count(t[1]);
    model.objective_constant = in.Real(t[2]);
    for (int i = 0; i < nnz; ++i) {
      const auto& e = in.Next();
      in.Expect(e, 2);
      const long long j = in.Int(e[0]);
      if (j < 0 || j >= n) {
        throw InputError("OBJ record " + std::to_string(i) +
                         ": index out of range");
      }
      model.objective[j] = in.Real(e[1]);
    }
  }
  const int m = in.Count(in.Header("LIN", 2)[1]);
  for (int r = 0; r < m; ++r) {
    const auto& t = in.Next();
    if (t.size() < 3) in.Fail("LIN record needs sense, rhs and count");
    LinearRow row;
    if (t[0] == "L") {
      row.sense = Sense::kLe;
    } else if (t[0] == "E") {
      row.sense = Sense::kEq;
    } else if (t[0] == "G") {
      row.sense = Sense::kGe;
    } else {
      in.Fail("invalid sense '" + std::string(t[0]) + "'");
    }
    row.rhs = in.Real(t[1]);
    const int nnz = in.Count(t[2]);
    in.Expect(t, 3 + 2 * static_cast<std::size_t>(nnz));
    for (int e = 0; e < nnz; ++e) {
      row.terms.emplace_back(static_cast<int>(in.Int(t[3 + 2 * e])),
                             in.Real(t[4 + 2 * e]));
    }
    model.rows.push_back(std::move(row));
  }
  const int c = in.Count(in.Header("RSOC", 2)[1]);
  for (int r = 0; r < c; ++r) {
    const auto& t = in.Next();
    if (t.size() < 3) in.Fail("RSOC record needs u, v and count");
    RsocBlock block;
    block.u = static_cast<int>(in.Int(t[0]));
    block.v = static_cast<int>(in.Int(t[1]));
    const int kw = in.Count(t[2]);
    in.Expect(t, 3 + static_cast<std::size_t>(kw));
    for (int e = 0; e < kw; ++e) {
      block.w.push_back(static_cast<int>(in.Int(t[3 + e])));
    }
    model.cones.push_back(std::move(block));
  }
  in.Header("END", 1);
  if (!in.Done()) {
    in.Next();
    in.Fail("content after END");
  }
  model.Validate();
  return model;
}

}  // namespace rankone
