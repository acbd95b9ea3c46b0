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

// Text format for ConicModel (.cqm). One record per line:
//
//   VERSION 1
//   VARS <n>          then n lines: <name>
//   BOUNDS <n>        then n lines: <lower> <upper>
//   BIN <k>           then k lines: <index>
//   OBJ <nnz> <constant>
//                     then nnz lines: <index> <coef>
//   LIN <m>           then m lines: <L|E|G> <rhs> <nnz> {<index> <coef>}
//   RSOC <c>          then c lines: <u> <v> <k> {<w index>}
//   END
//
// Reals use the shortest round-trip form with inf/-inf tokens; blank lines and
// lines starting with '#' are ignored on import.

#ifndef RANKONE_CQM_FORMAT_H_
#define RANKONE_CQM_FORMAT_H_

#include <string>
#include <string_view>

#include "rankone/conic_model.h"

namespace rankone {

std::string ExportModel(const ConicModel& model);

// Throws InputError with "line N:" for syntax errors and the record
// identity for semantic ones.
ConicModel ImportModel(std::string_view text);

// Shortest round-trip-safe formatting used by every text output.
std::string FormatReal(double v);

}  // namespace rankone

#endif  // RANKONE_CQM_FORMAT_H_
