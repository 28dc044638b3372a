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

#ifndef JCOP_SOUNDNESS_GENERATOR_H_
#define JCOP_SOUNDNESS_GENERATOR_H_

#include <cstdint>
#include <random>
#include <string>

#include "jcop/syntax/ast.h"

namespace jcop {

// Random well-typed program. A budget of 1 or less yields no classes and an
// empty `main`; larger budgets scale the number of statements in `main`.
//
// Generated programs stay inside the fragment on which the checker's
// verdict is a guarantee at run time:
//   - every object has all its fields written before anything reads them;
//   - each local name belongs to one scope, so a callee never overwrites a
//     caller's variable on the shared stack;
//   - `this` is used only before the first call of a body, because the
//     callee's binding of `this` outlives the call;
//   - a procedure named m_k calls, supers and proceeds only to names m_j
//     with j < k, so there is no recursion;
//   - loops count a private counter object up to a small bound;
//   - stored integers are reduced modulo 1000 so arithmetic stays in range.
Program generate_program(std::uint64_t seed, int budget);

// Kinds of single ill-typed edits applied by mutate_program.
enum class MutationKind {
  kNone,
  kUnknownProcedure,
  kUnknownField,
  kDowncast,
};

const char* to_string(MutationKind kind);

struct Mutant {
  Program program;
  MutationKind kind = MutationKind::kNone;
};

// Applies one ill-typed edit to `program`'s `main`, chosen by `seed`. Returns
// kind kNone when `main` offers no place for any edit.
Mutant mutate_program(const Program& program, std::uint64_t seed);

}  // namespace jcop

#endif  // JCOP_SOUNDNESS_GENERATOR_H_
