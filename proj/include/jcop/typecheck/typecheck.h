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

#ifndef JCOP_TYPECHECK_TYPECHECK_H_
#define JCOP_TYPECHECK_TYPECHECK_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jcop/classtable/class_table.h"
#include "jcop/syntax/ast.h"

namespace jcop {

// Rule names carried by diagnostics.
namespace trule {
inline constexpr std::string_view kLiteral = "n^t";
inline constexpr std::string_view kThis = "this^t";
inline constexpr std::string_view kLocal = "o^t";
inline constexpr std::string_view kCast = "cast^t";
inline constexpr std::string_view kField = "e.v^t";
inline constexpr std::string_view kArith = "iop^t";
inline constexpr std::string_view kCompare = "cop^t";
inline constexpr std::string_view kBool = "bop^t";
inline constexpr std::string_view kFieldAssign = ":=_e^t";
inline constexpr std::string_view kCall = ":=_{o.f}^t";
inline constexpr std::string_view kLayeredCall = ":=_{l.o.f}^t";
inline constexpr std::string_view kSuper = "sup^t";
inline constexpr std::string_view kProceed = "pro^t";
inline constexpr std::string_view kNew = "new^t";
inline constexpr std::string_view kIf = "if^t";
inline constexpr std::string_view kWhile = "while^t";
inline constexpr std::string_view kClassFun = "C.f^t";
inline constexpr std::string_view kLayerFun = "C.f.l^t";
inline constexpr std::string_view kContext = "context";
}  // namespace trule

// Diagnostic kinds.
namespace tkind {
inline constexpr std::string_view kVariableNotFound = "variable-not-found";
inline constexpr std::string_view kFieldNotFound = "field-not-found";
inline constexpr std::string_view kProcedureNotFound = "procedure-not-found";
inline constexpr std::string_view kCastError = "cast-error";
inline constexpr std::string_view kTypeMismatch = "type-mismatch";
inline constexpr std::string_view kOverrideMismatch = "override-mismatch";
inline constexpr std::string_view kNoCommonBound = "no-common-bound";
inline constexpr std::string_view kLayerInconsistent = "layer-inconsistent";
inline constexpr std::string_view kUnsupportedType = "unsupported-type";
inline constexpr std::string_view kLocalTypeConflict = "local-type-conflict";
}  // namespace tkind

struct Diagnostic {
  std::string rule;
  std::string kind;
  SourceSpan span;
  std::string message;
};

// `file:line:col: [rule] message`
std::string render_diagnostic(const Diagnostic& d, std::string_view file);

struct TypeReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

// (Γ, Lᵗ). Γ is program-wide: a local name has a single type across `main`
// and every procedure, since all of them share one runtime stack.
struct Context {
  std::map<std::string, Type> locals;
  std::map<std::pair<std::string, std::string>, Type> fields;
  std::set<std::string> layers;
  // Names declared only as procedure parameters, never as locals.
  std::set<std::string> param_only;

  const Type* local(const std::string& name) const;
  const Type* field(const std::string& cls, const std::string& name) const;
};

// Γ entry for a declared type: int stays int, class C becomes ref C. Bool
// and the function/ref forms have no Γ entry.
std::optional<Type> context_type(const Type& declared);

// Builds Γ from field, local and parameter declarations and sets Lᵗ to every
// declared layer. Unsupported or conflicting declarations are reported to
// `diagnostics` when given and left out of Γ.
Context build_context(const ClassTable& table,
                      std::vector<Diagnostic>* diagnostics = nullptr);

// Static type of every expression node that typed successfully.
using ExprTypes = std::unordered_map<const Expr*, Type>;

// Names visible to a body and the class of `this`, if any.
struct Scope {
  std::optional<std::string> enclosing_class;
  std::set<std::string> names;
};

class TypeChecker {
 public:
  TypeChecker(const ClassTable& table, const Context& context,
              ExprTypes* annotations = nullptr);

  // Scope of `main`.
  Scope main_scope() const;
  // Scope of a procedure body of class `cls`.
  Scope fun_scope(const std::string& cls, const FunDecl& fun) const;

  // Γ ⊨ e : τ. On failure appends a diagnostic and returns nullopt.
  std::optional<Type> type_expr(const Scope& scope, const Expr& e,
                                std::vector<Diagnostic>& out) const;
  bool type_bexpr(const Scope& scope, const BExpr& b,
                  std::vector<Diagnostic>& out) const;

  // (Γ, Lᵗ) ⊨ (C, f) : τ₁ → τ₂, including the body and override checks.
  std::optional<Type> type_class_fun(const std::string& cls,
                                     const std::string& fun,
                                     std::vector<Diagnostic>& out) const;
  // (Γ, Lᵗ) ⊨ (C, f, l) : τ₁ → τ₂.
  std::optional<Type> type_layer_fun(const std::string& cls,
                                     const std::string& layer,
                                     std::vector<Diagnostic>& out) const;

  // (Γ, Lᵗ) ⊨ S : WF. A null statement is well formed.
  bool wf_stmt(const Scope& scope, const StmtPtr& stmt,
               std::vector<Diagnostic>& out) const;

  // τ₁ → τ₂ from the parameter annotation and the return expression alone.
  std::optional<Type> signature(const std::string& cls,
                                const FunDecl& fun) const;

  // ≤ with class subtyping lifted through ref.
  bool assignable(const Type& from, const Type& to) const;

  // Common signature of the layer variants of `fun` over every class below
  // `cls`. Reports procedure-not-found or no-common-bound under `rule`.
  std::optional<Type> layer_bound(const std::string& cls,
                                  const std::string& fun, std::string_view rule,
                                  SourceSpan span,
                                  std::vector<Diagnostic>& out) const;

 private:
  std::optional<Type> receiver_class(const Scope& scope,
                                     const std::string& receiver,
                                     std::string_view rule, SourceSpan span,
                                     std::vector<Diagnostic>& out) const;
  bool check_target(const Scope& scope, const std::string& target,
                    const Type& result, std::string_view rule, SourceSpan span,
                    std::vector<Diagnostic>& out) const;
  bool check_arg(const Scope& scope, const Expr& arg, const Type& param,
                 std::string_view rule, SourceSpan span,
                 std::vector<Diagnostic>& out) const;
  std::optional<Type> check_body(const std::string& cls, const FunDecl& fun,
                                 std::string_view rule,
                                 std::vector<Diagnostic>& out) const;

  const ClassTable& table_;
  const Context& context_;
  ExprTypes* annotations_;
};

// Checks every class procedure, every layer procedure and `main`.
// Diagnostics are sorted by source position.
TypeReport check_program(const ClassTable& table,
                         ExprTypes* annotations = nullptr);

}  // namespace jcop

#endif  // JCOP_TYPECHECK_TYPECHECK_H_
