// Copyright 2026 The Varfix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef VARFIX_TOOLS_CLI_H_
#define VARFIX_TOOLS_CLI_H_

#include <ostream>

namespace varfix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitAllErrored = 3;
inline constexpr int kExitDiverged = 4;

// Entry point of the `varfix` executable; output goes to the given streams
// so tests can run it in-process.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace varfix

#endif  // VARFIX_TOOLS_CLI_H_
