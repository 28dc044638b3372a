/*
 * Copyright 2026 The jcop Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef JCOP_CLI_CLI_H_
#define JCOP_CLI_CLI_H_

#include <ostream>

namespace jcop {

// Process exit codes of the `jcop` tool.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;  // Parse, build or type error.
inline constexpr int kAbort = 2;
inline constexpr int kDiverged = 3;
inline constexpr int kUsage = 4;
}  // namespace exit_code

// Entry point of the `jcop` tool:
//   jcop parse FILE
//   jcop check FILE
//   jcop run FILE [--fuel N] [--trace]
//   jcop trace FILE [--fuel N]
//   jcop fuzz --seed S --count N [--fuel N] [--budget B] [--threads T]
//             [--mutants]
// Every command accepts --format human|json-lines.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace jcop

#endif  // JCOP_CLI_CLI_H_
