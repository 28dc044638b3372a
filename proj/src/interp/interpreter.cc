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

#include "jcop/interp/interpreter.h"

#include <limits>
#include <utility>

#include "jcop/syntax/parser.h"

namespace jcop {

std::string to_string(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* a = std::get_if<Addr>(&v)) return "#" + std::to_string(a->index);
  return "⊥";
}

namespace {

// "⊥ (from cast_1^s)" etc., for abort reasons.
std::string describe(const Value& v) {
  if (const auto* b = std::get_if<Bottom>(&v)) {
    return b->origin.empty() ? "⊥" : "⊥ (from " + b->origin + ")";
  }
  return to_string(v);
}

std::optional<std::int64_t> apply_arith(ArithOp op, std::int64_t a,
                                        std::int64_t b) {
  std::int64_t r = 0;
  switch (op) {
    case ArithOp::kAdd:
      if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ArithOp::kSub:
      if (__builtin_sub_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ArithOp::kMul:
      if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
      return r;
    case ArithOp::kDiv:
      if (b == 0) return std::nullopt;
      if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
        return std::nullopt;
      }
      return a / b;
    case ArithOp::kMod:
      if (b == 0) return std::nullopt;
      if (b == -1) return 0;
      return a % b;
  }
  return std::nullopt;
}

bool compare(CompareOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case CompareOp::kLt: return a < b;
    case CompareOp::kLe: return a <= b;
    case CompareOp::kGt: return a > b;
    case CompareOp::kGe: return a >= b;
    case CompareOp::kEq: return a == b;
    case CompareOp::kNe: return a != b;
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const Stack& s, const Heap& h, const ClassTable& table,
            ExecObserver* observer)
      : s_(s), h_(h), table_(table), observer_(observer) {}

  Value eval(const Expr& e) {
    std::string_view rule_name;
    Value v = std::visit(
        [&](const auto& x) -> Value {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            rule_name = rule::kLiteral;
            return x.value;
          } else if constexpr (std::is_same_v<T, ThisExpr>) {
            rule_name = rule::kThisRead;
            return read_local(kThis);
          } else if constexpr (std::is_same_v<T, LocalExpr>) {
            rule_name = rule::kLocalRead;
            return read_local(x.name);
          } else if constexpr (std::is_same_v<T, CastExpr>) {
            Value inner = eval(*x.operand);
            if (const ObjectCell* cell = deref(inner)) {
              if (!table_.is_subclass(cell->class_name, x.class_name)) {
                rule_name = rule::kCastFail;
                return Bottom{std::string(rule::kCastFail)};
              }
            }
            rule_name = rule::kCastPass;
            return inner;
          } else if constexpr (std::is_same_v<T, FieldExpr>) {
            Value obj = eval(*x.object);
            if (const ObjectCell* cell = deref(obj)) {
              if (table_.class_of_var(cell->class_name, x.field)) {
                auto it = cell->fields.find(x.field);
                if (it != cell->fields.end()) {
                  rule_name = rule::kFieldRead;
                  return it->second;
                }
              }
            }
            rule_name = rule::kFieldMissing;
            if (is_bottom(obj)) return obj;
            return Bottom{std::string(rule::kFieldMissing)};
          } else {
            rule_name = rule::kArith;
            Value l = eval(*x.lhs);
            Value r = eval(*x.rhs);
            if (is_bottom(l)) return l;
            if (is_bottom(r)) return r;
            if (is_int(l) && is_int(r)) {
              if (auto res = apply_arith(x.op, std::get<std::int64_t>(l),
                                         std::get<std::int64_t>(r))) {
                return *res;
              }
            }
            return Bottom{std::string(rule::kArith)};
          }
        },
        e.node);
    if (observer_) observer_->on_expr(rule_name, e, v);
    return v;
  }

  Truth eval(const BExpr& b) {
    return std::visit(
        [&](const auto& x) -> Truth {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, BoolLit>) {
            return x.value ? Truth::kTrue : Truth::kFalse;
          } else if constexpr (std::is_same_v<T, CompareExpr>) {
            Value l = eval(*x.lhs);
            Value r = eval(*x.rhs);
            if (!is_int(l) || !is_int(r)) {
              if (bottom_cause_.empty()) {
                bottom_cause_ = "operand " + describe(is_int(l) ? r : l);
              }
              return Truth::kBottom;
            }
            return compare(x.op, std::get<std::int64_t>(l),
                           std::get<std::int64_t>(r))
                       ? Truth::kTrue
                       : Truth::kFalse;
          } else {
            Truth l = eval(*x.lhs);
            Truth r = eval(*x.rhs);
            if (l == Truth::kBottom || r == Truth::kBottom) return Truth::kBottom;
            bool lv = l == Truth::kTrue;
            bool rv = r == Truth::kTrue;
            bool res = x.op == BoolOp::kAnd ? (lv && rv) : (lv || rv);
            return res ? Truth::kTrue : Truth::kFalse;
          }
        },
        b.node);
  }

  // First comparison operand that was not an integer, described.
  const std::string& bottom_cause() const { return bottom_cause_; }

 private:
  Value read_local(const std::string& name) const {
    auto it = s_.find(name);
    if (it == s_.end()) {
      std::string_view r = name == kThis ? rule::kThisRead : rule::kLocalRead;
      return Bottom{std::string(r) + ": unbound " + name};
    }
    return it->second;
  }

  const ObjectCell* deref(const Value& v) const {
    if (const auto* a = std::get_if<Addr>(&v)) {
      auto it = h_.find(*a);
      if (it != h_.end()) return &it->second;
    }
    return nullptr;
  }

  const Stack& s_;
  const Heap& h_;
  const ClassTable& table_;
  ExecObserver* observer_;
  std::string bottom_cause_;
};

struct AbortSignal {
  Abort abort;
};
struct OutOfFuel {
  bool depth_exceeded;
};

class Executor {
 public:
  Executor(const ClassTable& table, const ExecOptions& options)
      : table_(table), opts_(options) {}

  std::uint64_t fuel_used() const { return fuel_used_; }

  void exec(const StmtPtr& stmt, State& st) {
    if (!stmt) return;
    std::visit([&](const auto& x) { step(*stmt, x, st); }, stmt->node);
  }

 private:
  void spend() {
    if (fuel_used_ >= opts_.fuel) throw OutOfFuel{false};
    ++fuel_used_;
  }

  [[noreturn]] void abort(std::string_view rule_name, std::string reason) {
    throw AbortSignal{Abort{std::string(rule_name), std::move(reason)}};
  }

  void done(std::string_view rule_name, const Stmt& stmt, const State& st,
            const std::vector<HeapChange>& delta = {}) {
    if (opts_.observer) opts_.observer->on_rule(rule_name, stmt, st, delta);
  }

  Value eval(const ExprPtr& e, const State& st) {
    return Evaluator(st.stack, st.heap, table_, opts_.observer).eval(*e);
  }

  Truth eval(const BExprPtr& b, const State& st, std::string* cause) {
    Evaluator ev(st.stack, st.heap, table_, opts_.observer);
    Truth t = ev.eval(*b);
    *cause = ev.bottom_cause();
    return t;
  }

  static Value read(const State& st, const std::string& name) {
    auto it = st.stack.find(name);
    if (it == st.stack.end()) return Bottom{"unbound " + name};
    return it->second;
  }

  // The cell an object-valued receiver points to, or an abort of `rule`.
  const ObjectCell& receiver_cell(std::string_view rule_name, const State& st,
                                  const std::string& name, const Value& v) {
    if (const auto* a = std::get_if<Addr>(&v)) {
      auto it = st.heap.find(*a);
      if (it != st.heap.end()) return it->second;
    }
    abort(rule_name, "receiver '" + name + "' is " + describe(v) +
                         ", not an object");
  }

  // Runs a procedure body one level deeper.
  void run_body(const StmtPtr& body, State& st) {
    if (++depth_ > opts_.max_call_depth) throw OutOfFuel{true};
    exec(body, st);
    --depth_;
  }

  void step(const Stmt& stmt, const FieldAssign& x, State& st) {
    spend();
    Value target = eval(x.object, st);
    const auto* addr = std::get_if<Addr>(&target);
    auto cell = addr ? st.heap.find(*addr) : st.heap.end();
    if (cell == st.heap.end()) {
      abort(rule::kFieldAssign,
            "target of field write '." + x.field + "' is " + describe(target) +
                ", not an object");
    }
    if (!table_.class_of_var(cell->second.class_name, x.field)) {
      abort(rule::kFieldAssign, "field-not-found: class '" +
                                    cell->second.class_name +
                                    "' has no field '" + x.field + "'");
    }
    Value value = eval(x.value, st);
    cell->second.fields[x.field] = value;
    done(rule::kFieldAssign, stmt, st, {{*addr, x.field, value, ""}});
  }

  void step(const Stmt& stmt, const CallStmt& x, State& st) {
    spend();
    Value recv = read(st, x.receiver);
    const ObjectCell& cell = receiver_cell(rule::kCall, st, x.receiver, recv);
    auto owner = table_.super_lookup(cell.class_name, x.fun);
    if (!owner) {
      abort(rule::kCall, "procedure-not-found: class '" + cell.class_name +
                             "' has no procedure '" + x.fun + "'");
    }
    const FunDecl& f = *table_.fun(*owner, x.fun);
    Value arg = eval(x.arg, st);
    st.stack[kThis] = recv;
    st.stack[f.param] = arg;
    run_body(f.body, st);
    st.stack[x.target] = eval(f.ret, st);
    done(rule::kCall, stmt, st);
  }

  // Sequential chaining shared by layered calls and proceed: body i sees
  // o₁ bound to the previous return value.
  template <typename ThisSource>
  void run_chain(const std::string& cls, const std::vector<std::string>& layers,
                 const std::string& target, const ExprPtr& arg,
                 ThisSource this_value, State& st) {
    for (size_t i = 0; i < layers.size(); ++i) {
      const FunDecl& f = table_.layer(cls, layers[i])->fun;
      Value prev;
      if (i > 0) {
        const FunDecl& before = table_.layer(cls, layers[i - 1])->fun;
        prev = eval(before.ret, st);
      }
      Value self = this_value(st);
      Value argv = eval(arg, st);
      if (i > 0) st.stack[target] = prev;
      st.stack[kThis] = self;
      st.stack[f.param] = argv;
      run_body(f.body, st);
    }
    const FunDecl& last = table_.layer(cls, layers.back())->fun;
    st.stack[target] = eval(last.ret, st);
  }

  void step(const Stmt& stmt, const LayeredCall& x, State& st) {
    spend();
    ActiveLayers activated = apply_layer_expr(x.layers, st.active);
    Value recv = read(st, x.receiver);
    const std::string cls =
        receiver_cell(rule::kLayeredCall, st, x.receiver, recv).class_name;
    // Selected layers keep the order of the activated list, head first.
    std::vector<std::string> selected;
    for (const std::string& l : activated.names()) {
      const LayerDecl* decl = table_.layer(cls, l);
      if (decl && decl->fun.name == x.fun) selected.push_back(l);
    }
    st.active = std::move(activated);
    if (!selected.empty()) {
      const std::string& recv_name = x.receiver;
      run_chain(cls, selected, x.target, x.arg,
                [&recv_name](const State& s) { return read(s, recv_name); },
                st);
    }
    done(rule::kLayeredCall, stmt, st);
  }

  void step(const Stmt& stmt, const ProceedCall& x, State& st) {
    spend();
    Value recv = read(st, x.receiver);
    const std::string cls =
        receiver_cell(rule::kProceed, st, x.receiver, recv).class_name;
    std::vector<std::string> selected = table_.clslyrs(cls, x.fun, st.active);
    if (!selected.empty()) {
      // Every body in the chain binds `this` to the receiver as it was
      // before the statement ran.
      run_chain(cls, selected, x.target, x.arg,
                [recv](const State&) { return recv; }, st);
    }
    done(rule::kProceed, stmt, st);
  }

  void step(const Stmt& stmt, const SuperCall& x, State& st) {
    spend();
    Value self = read(st, kThis);
    const ObjectCell& cell = receiver_cell(rule::kSuper, st, kThis, self);
    auto parent = table_.parent(cell.class_name);
    if (!parent) {
      abort(rule::kSuper,
            "class '" + cell.class_name + "' has no direct superclass");
    }
    auto owner = table_.super_lookup(*parent, x.fun);
    if (!owner) {
      abort(rule::kSuper, "procedure-not-found: no ancestor of '" +
                              cell.class_name + "' defines '" + x.fun + "'");
    }
    const FunDecl& f = *table_.fun(*owner, x.fun);
    st.stack[f.param] = eval(x.arg, st);
    run_body(f.body, st);
    st.stack[x.target] = eval(f.ret, st);
    done(rule::kSuper, stmt, st);
  }

  void step(const Stmt& stmt, const NewStmt& x, State& st) {
    spend();
    Addr a{st.heap.size()};
    while (st.heap.count(a)) ++a.index;
    ObjectCell cell{x.class_name, a.index, {}};
    for (const std::string& f : table_.info(x.class_name).all_fields) {
      cell.fields.emplace(f, Bottom{std::string(rule::kNew)});
    }
    st.heap.emplace(a, std::move(cell));
    st.stack[x.target] = a;
    done(rule::kNew, stmt, st, {{a, "", a, x.class_name}});
  }

  void step(const Stmt& stmt, const SeqStmt& x, State& st) {
    spend();
    exec(x.first, st);
    exec(x.second, st);
    done(rule::kSeq, stmt, st);
  }

  void step(const Stmt& stmt, const IfStmt& x, State& st) {
    spend();
    std::string cause;
    Truth t = eval(x.cond, st, &cause);
    if (t == Truth::kBottom) {
      abort(rule::kIf, "guard '" + pretty_print(x.cond) +
                           "' evaluated to ⊥: " + cause);
    }
    exec(t == Truth::kTrue ? x.then_branch : x.else_branch, st);
    done(rule::kIf, stmt, st);
  }

  void step(const Stmt& stmt, const WhileStmt& x, State& st) {
    while (true) {
      spend();
      std::string cause;
      Truth t = eval(x.cond, st, &cause);
      if (t == Truth::kBottom) {
        abort(rule::kWhile, "guard '" + pretty_print(x.cond) +
                                "' evaluated to ⊥: " + cause);
      }
      if (t == Truth::kFalse) {
        done(rule::kWhileFalse, stmt, st);
        return;
      }
      exec(x.body, st);
      done(rule::kWhileTrue, stmt, st);
    }
  }

  const ClassTable& table_;
  const ExecOptions& opts_;
  std::uint64_t fuel_used_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

Value eval_expr(const Expr& e, const Stack& s, const Heap& h,
                const ClassTable& table, ExecObserver* observer) {
  return Evaluator(s, h, table, observer).eval(e);
}

Truth eval_bexpr(const BExpr& b, const Stack& s, const Heap& h,
                 const ClassTable& table, ExecObserver* observer) {
  return Evaluator(s, h, table, observer).eval(b);
}

Outcome exec_stmt(const StmtPtr& stmt, State start, const ClassTable& table,
                  const ExecOptions& options) {
  Executor ex(table, options);
  try {
    ex.exec(stmt, start);
  } catch (const AbortSignal& signal) {
    return Outcome{signal.abort, ex.fuel_used()};
  } catch (const OutOfFuel& oof) {
    return Outcome{Diverged{oof.depth_exceeded}, ex.fuel_used()};
  }
  return Outcome{Final{std::move(start)}, ex.fuel_used()};
}

Outcome run_program(const ClassTable& table, const ExecOptions& options) {
  return exec_stmt(table.program().main_body, State{}, table, options);
}

}  // namespace jcop
