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

#ifndef JCOP_INTERP_INTERPRETER_H_
#define JCOP_INTERP_INTERPRETER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jcop/classtable/class_table.h"
#include "jcop/interp/state.h"
#include "jcop/syntax/ast.h"

namespace jcop {

// Rule names, as used in traces, abort reasons and coverage counters.
namespace rule {
inline constexpr std::string_view kFieldAssign = ":=_e^s";
inline constexpr std::string_view kCall = ":=_{o.f}^s";
inline constexpr std::string_view kLayeredCall = ":=_{l.o.f}^s";
inline constexpr std::string_view kSuper = "sup^s";
inline constexpr std::string_view kProceed = "pro^s";
inline constexpr std::string_view kNew = "new^s";
inline constexpr std::string_view kSeq = "seq^s";
inline constexpr std::string_view kIf = "if^s";
inline constexpr std::string_view kWhileFalse = "while_1^s";
inline constexpr std::string_view kWhileTrue = "while_2^s";
// A while guard that is neither true nor false matches no while rule.
inline constexpr std::string_view kWhile = "while^s";

inline constexpr std::string_view kLiteral = "n^s";
inline constexpr std::string_view kThisRead = "this^s";
inline constexpr std::string_view kLocalRead = "o^s";
inline constexpr std::string_view kArith = "iop^s";
inline constexpr std::string_view kCastFail = "cast_1^s";
inline constexpr std::string_view kCastPass = "cast_2^s";
inline constexpr std::string_view kFieldRead = "inst_1^s";
inline constexpr std::string_view kFieldMissing = "inst_2^s";

// Every statement rule that can conclude a derivation.
inline constexpr std::string_view kStatementRules[] = {
    kFieldAssign, kCall, kLayeredCall, kSuper, kProceed,
    kNew,         kSeq,  kIf,          kWhileFalse, kWhileTrue};
}  // namespace rule

// One heap effect performed directly by a rule application.
struct HeapChange {
  Addr addr;
  // Empty for an allocation.
  std::string field;
  Value value;
  // Set for an allocation.
  std::string allocated_class;
};

class ExecObserver {
 public:
  virtual ~ExecObserver() = default;

  // Called when a statement rule concludes; `after` is the resulting state.
  virtual void on_rule(std::string_view /*rule*/, const Stmt& /*stmt*/,
                       const State& /*after*/,
                       const std::vector<HeapChange>& /*delta*/) {}
  // Called for every evaluated expression node, innermost first.
  virtual void on_expr(std::string_view /*rule*/, const Expr& /*expr*/,
                       const Value& /*value*/) {}
};

struct ExecOptions {
  std::uint64_t fuel = 100000;
  // Nested procedure bodies deeper than this end the run as Diverged.
  std::size_t max_call_depth = 2000;
  ExecObserver* observer = nullptr;
};

// ⟦e⟧(s, h). Total: failures yield ⊥.
Value eval_expr(const Expr& e, const Stack& s, const Heap& h,
                const ClassTable& table, ExecObserver* observer = nullptr);

// ⟦b⟧(s, h).
Truth eval_bexpr(const BExpr& b, const Stack& s, const Heap& h,
                 const ClassTable& table, ExecObserver* observer = nullptr);

// Big-step execution of `stmt` from `start`. A null statement is the empty
// statement and yields `start` unchanged.
Outcome exec_stmt(const StmtPtr& stmt, State start, const ClassTable& table,
                  const ExecOptions& options = {});

// Runs `main` from the empty state.
Outcome run_program(const ClassTable& table, const ExecOptions& options = {});

}  // namespace jcop

#endif  // JCOP_INTERP_INTERPRETER_H_
