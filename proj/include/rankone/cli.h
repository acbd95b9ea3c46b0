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

// Command-line front end. RunCli parses arguments without the program name
// and writes to the given streams, so tests drive it in process.
//
// Exit codes: 0 success, 1 usage, 2 input, 3 solver, 4 oracle violation.

#ifndef RANKONE_CLI_H_
#define RANKONE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace rankone {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitOracle = 4;

// Color only on a terminal and only when NO_COLOR is unset or empty.
bool ColorEnabled(const char* no_color_env, bool is_tty);

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, bool color = false);

}  // namespace rankone

#endif  // RANKONE_CLI_H_
