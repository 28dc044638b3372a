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

#ifndef JCOP_SOUNDNESS_RESPECTS_H_
#define JCOP_SOUNDNESS_RESPECTS_H_

#include <string>
#include <string_view>

#include "jcop/classtable/class_table.h"
#include "jcop/interp/state.h"
#include "jcop/typecheck/typecheck.h"

namespace jcop {

// Names of the conformance clauses.
namespace clause {
// Every active layer is in Lᵗ.
inline constexpr std::string_view kActiveLayers = "active-layers";
// Γ(o) = int ⇒ s(o) ∈ ℤ.
inline constexpr std::string_view kIntLocal = "int-local";
// Γ(o) = ref C ⇒ s(o) is a cell whose class is below C.
inline constexpr std::string_view kRefLocal = "ref-local";
// Γ((D, v)) = int ⇒ I(v) ∈ ℤ, for every cell of a class below D.
inline constexpr std::string_view kIntField = "int-field";
// Γ((D, v)) = ref E ⇒ I(v) is a cell whose class is below E.
inline constexpr std::string_view kRefField = "ref-field";
}  // namespace clause

struct ConformanceOptions {
  // Require the cell class to equal C instead of merely lying below it.
  bool exact_class = false;
  // Treat ⊥-valued fields as not yet initialized instead of as violations.
  bool bottom_fields_exempt = true;
};

struct ConformanceResult {
  bool holds = true;
  // Empty when the state conforms.
  std::string clause;
  // Offending variable, field or layer.
  std::string witness;
};

// (s, h, L^s) ∼ (Γ, Lᵗ). Locals absent from the stack are not checked.
ConformanceResult respects(const State& state, const Context& context,
                           const ClassTable& table,
                           const ConformanceOptions& options = {});

// Γ′: Γ without `this` and without names that only ever occur as
// procedure parameters.
Context without_call_bindings(const Context& context);

}  // namespace jcop

#endif  // JCOP_SOUNDNESS_RESPECTS_H_
