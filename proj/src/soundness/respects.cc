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

#include "jcop/soundness/respects.h"

namespace jcop {

namespace {

ConformanceResult violation(std::string_view clause, std::string witness) {
  return ConformanceResult{false, std::string(clause), std::move(witness)};
}

// Whether `v` is an address whose cell class fits `cls`.
bool refers_to(const Value& v, const std::string& cls, const Heap& heap,
               const ClassTable& table, bool exact) {
  const Addr* a = std::get_if<Addr>(&v);
  if (a == nullptr) return false;
  auto it = heap.find(*a);
  if (it == heap.end()) return false;
  return exact ? it->second.class_name == cls
               : table.is_subclass(it->second.class_name, cls);
}

}  // namespace

ConformanceResult respects(const State& state, const Context& context,
                           const ClassTable& table,
                           const ConformanceOptions& options) {
  for (const std::string& l : state.active.names()) {
    if (!context.layers.count(l)) return violation(clause::kActiveLayers, l);
  }
  for (const auto& [name, type] : context.locals) {
    auto it = state.stack.find(name);
    if (it == state.stack.end()) continue;
    if (type.is_int()) {
      if (!is_int(it->second)) return violation(clause::kIntLocal, name);
    } else if (type.is_ref_to_class()) {
      if (!refers_to(it->second, type.referenced_class(), state.heap, table,
                     options.exact_class)) {
        return violation(clause::kRefLocal, name);
      }
    }
  }
  for (const auto& [addr, cell] : state.heap) {
    for (const auto& [field, value] : cell.fields) {
      if (options.bottom_fields_exempt && is_bottom(value)) continue;
      std::optional<std::string> owner =
          table.class_of_var(cell.class_name, field);
      const Type* type = owner ? context.field(*owner, field) : nullptr;
      if (type == nullptr) continue;
      std::string witness = "#" + std::to_string(addr.index) + "." + field;
      if (type->is_int()) {
        if (!is_int(value)) return violation(clause::kIntField, witness);
      } else if (type->is_ref_to_class()) {
        if (!refers_to(value, type->referenced_class(), state.heap, table,
                       options.exact_class)) {
          return violation(clause::kRefField, witness);
        }
      }
    }
  }
  return {};
}

Context without_call_bindings(const Context& context) {
  Context out = context;
  out.locals.erase(kThis);
  for (const std::string& p : context.param_only) out.locals.erase(p);
  return out;
}

}  // namespace jcop
