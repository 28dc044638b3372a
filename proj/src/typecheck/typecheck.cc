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

#include "jcop/typecheck/typecheck.h"

#include <algorithm>
#include <tuple>
#include <type_traits>

#include "jcop/syntax/parser.h"

namespace jcop {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void report(std::vector<Diagnostic>& out, std::string_view rule,
            std::string_view kind, SourceSpan span, std::string message) {
  out.push_back(Diagnostic{std::string(rule), std::string(kind), span,
                           std::move(message)});
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

std::string render_diagnostic(const Diagnostic& d, std::string_view file) {
  return std::string(file) + ":" + std::to_string(d.span.line) + ":" +
         std::to_string(d.span.column) + ": [" + d.rule + "] " + d.kind +
         ": " + d.message;
}

const Type* Context::local(const std::string& name) const {
  auto it = locals.find(name);
  return it == locals.end() ? nullptr : &it->second;
}

const Type* Context::field(const std::string& cls,
                           const std::string& name) const {
  auto it = fields.find({cls, name});
  return it == fields.end() ? nullptr : &it->second;
}

std::optional<Type> context_type(const Type& declared) {
  switch (declared.kind()) {
    case Type::Kind::kInt:
      return Type::Int();
    case Type::Kind::kClass:
      return Type::Ref(declared);
    default:
      return std::nullopt;
  }
}

Context build_context(const ClassTable& table,
                      std::vector<Diagnostic>* diagnostics) {
  Context ctx;
  std::vector<Diagnostic> sink;
  std::vector<Diagnostic>& out = diagnostics ? *diagnostics : sink;
  std::set<std::string> declared_locals;
  std::set<std::string> conflicted;

  auto add_local = [&](const std::string& name, const Type& declared,
                       SourceSpan span, bool is_param) {
    if (!is_param) declared_locals.insert(name);
    std::optional<Type> t = context_type(declared);
    if (!t) {
      report(out, trule::kContext, tkind::kUnsupportedType, span,
             "local " + quote(name) + " has type " + declared.to_string() +
                 ", which no variable may hold");
      return;
    }
    if (conflicted.count(name)) return;
    auto [it, inserted] = ctx.locals.emplace(name, *t);
    if (!inserted && !(it->second == *t)) {
      report(out, trule::kContext, tkind::kLocalTypeConflict, span,
             "local " + quote(name) + " is declared as " + t->to_string() +
                 " here and as " + it->second.to_string() + " elsewhere");
      conflicted.insert(name);
      ctx.locals.erase(it);
    }
  };
  auto add_fun = [&](const FunDecl& f) {
    add_local(f.param, f.param_type, f.span, /*is_param=*/true);
    for (const VarDecl& v : f.locals) add_local(v.name, v.type, v.span, false);
  };

  const Program& p = table.program();
  for (const ClassDecl& c : p.classes) {
    for (const VarDecl& v : c.fields) {
      std::optional<Type> t = context_type(v.type);
      if (!t) {
        report(out, trule::kContext, tkind::kUnsupportedType, v.span,
               "field " + quote(c.name + "." + v.name) + " has type " +
                   v.type.to_string() + ", which no field may hold");
        continue;
      }
      ctx.fields.emplace(std::make_pair(c.name, v.name), *t);
    }
    for (const FunDecl& f : c.funs) add_fun(f);
    for (const LayerDecl& l : c.layers) add_fun(l.fun);
  }
  for (const VarDecl& v : p.main_locals) add_local(v.name, v.type, v.span, false);

  for (const auto& [name, t] : ctx.locals) {
    if (!declared_locals.count(name)) ctx.param_only.insert(name);
  }
  ctx.layers = table.layer_names();
  return ctx;
}

TypeChecker::TypeChecker(const ClassTable& table, const Context& context,
                         ExprTypes* annotations)
    : table_(table), context_(context), annotations_(annotations) {}

Scope TypeChecker::main_scope() const {
  Scope scope;
  for (const VarDecl& v : table_.program().main_locals) {
    scope.names.insert(v.name);
  }
  return scope;
}

Scope TypeChecker::fun_scope(const std::string& cls, const FunDecl& fun) const {
  Scope scope;
  scope.enclosing_class = cls;
  scope.names.insert(fun.param);
  for (const VarDecl& v : fun.locals) scope.names.insert(v.name);
  return scope;
}

bool TypeChecker::assignable(const Type& from, const Type& to) const {
  if (from.is_ref_to_class() && to.is_ref_to_class()) {
    return table_.is_subclass(from.referenced_class(), to.referenced_class());
  }
  return table_.subtype(from, to);
}

std::optional<Type> TypeChecker::type_expr(const Scope& scope, const Expr& e,
                                           std::vector<Diagnostic>& out) const {
  std::optional<Type> result = std::visit(
      Overloaded{
          [&](const IntLit&) -> std::optional<Type> { return Type::Int(); },
          [&](const ThisExpr&) -> std::optional<Type> {
            if (!scope.enclosing_class) {
              report(out, trule::kThis, tkind::kVariableNotFound, e.span,
                     "'this' is not available outside a procedure body");
              return std::nullopt;
            }
            return Type::Ref(Type::Class(*scope.enclosing_class));
          },
          [&](const LocalExpr& x) -> std::optional<Type> {
            const Type* t = context_.local(x.name);
            if (!scope.names.count(x.name) || t == nullptr) {
              report(out, trule::kLocal, tkind::kVariableNotFound, e.span,
                     "no variable " + quote(x.name) + " in scope");
              return std::nullopt;
            }
            return *t;
          },
          [&](const CastExpr& x) -> std::optional<Type> {
            std::optional<Type> inner = type_expr(scope, *x.operand, out);
            if (!inner) return std::nullopt;
            if (inner->is_int()) return Type::Int();
            Type target = Type::Ref(Type::Class(x.class_name));
            if (inner->is_ref_to_class() && assignable(*inner, target)) {
              return target;
            }
            report(out, trule::kCast, tkind::kCastError, e.span,
                   "cannot cast " + inner->to_string() + " to " +
                       x.class_name + "; only upcasts are allowed");
            return std::nullopt;
          },
          [&](const FieldExpr& x) -> std::optional<Type> {
            std::optional<Type> obj = type_expr(scope, *x.object, out);
            if (!obj) return std::nullopt;
            if (!obj->is_ref_to_class()) {
              report(out, trule::kField, tkind::kTypeMismatch, e.span,
                     "field " + quote(x.field) + " read from a value of type " +
                         obj->to_string());
              return std::nullopt;
            }
            const std::string& cls = obj->referenced_class();
            std::optional<std::string> owner = table_.class_of_var(cls, x.field);
            const Type* t = owner ? context_.field(*owner, x.field) : nullptr;
            if (!owner || t == nullptr) {
              report(out, trule::kField, tkind::kFieldNotFound, e.span,
                     "class " + cls + " has no field " + quote(x.field));
              return std::nullopt;
            }
            return *t;
          },
          [&](const ArithExpr& x) -> std::optional<Type> {
            std::optional<Type> l = type_expr(scope, *x.lhs, out);
            std::optional<Type> r = type_expr(scope, *x.rhs, out);
            if (!l || !r) return std::nullopt;
            if (!l->is_int() || !r->is_int()) {
              report(out, trule::kArith, tkind::kTypeMismatch, e.span,
                     std::string("operator ") + to_string(x.op) +
                         " needs int operands, got " + l->to_string() +
                         " and " + r->to_string());
              return std::nullopt;
            }
            return Type::Int();
          },
      },
      e.node);
  if (result && annotations_) annotations_->insert_or_assign(&e, *result);
  return result;
}

bool TypeChecker::type_bexpr(const Scope& scope, const BExpr& b,
                             std::vector<Diagnostic>& out) const {
  return std::visit(
      Overloaded{
          [&](const BoolLit&) { return true; },
          [&](const CompareExpr& x) {
            std::optional<Type> l = type_expr(scope, *x.lhs, out);
            std::optional<Type> r = type_expr(scope, *x.rhs, out);
            if (!l || !r) return false;
            if (!l->is_int() || !r->is_int()) {
              report(out, trule::kCompare, tkind::kTypeMismatch, b.span,
                     std::string("comparison ") + to_string(x.op) +
                         " needs int operands, got " + l->to_string() +
                         " and " + r->to_string());
              return false;
            }
            return true;
          },
          [&](const BoolBinExpr& x) {
            bool l = type_bexpr(scope, *x.lhs, out);
            bool r = type_bexpr(scope, *x.rhs, out);
            return l && r;
          },
      },
      b.node);
}

std::optional<Type> TypeChecker::signature(const std::string& cls,
                                           const FunDecl& fun) const {
  std::optional<Type> param = context_type(fun.param_type);
  if (!param) return std::nullopt;
  TypeChecker quiet(table_, context_);
  std::vector<Diagnostic> ignored;
  std::optional<Type> ret = quiet.type_expr(fun_scope(cls, fun), *fun.ret, ignored);
  if (!ret) return std::nullopt;
  return Type::Fun(*param, *ret);
}

std::optional<Type> TypeChecker::check_body(const std::string& cls,
                                            const FunDecl& fun,
                                            std::string_view rule,
                                            std::vector<Diagnostic>& out) const {
  Scope scope = fun_scope(cls, fun);
  std::optional<Type> param = context_type(fun.param_type);
  if (!param) {
    report(out, rule, tkind::kUnsupportedType, fun.span,
           "parameter " + quote(fun.param) + " of " + cls + "." + fun.name +
               " has type " + fun.param_type.to_string());
  }
  bool body_ok = wf_stmt(scope, fun.body, out);
  std::optional<Type> ret = type_expr(scope, *fun.ret, out);
  if (!param || !ret || !body_ok) return std::nullopt;
  return Type::Fun(*param, *ret);
}

std::optional<Type> TypeChecker::type_class_fun(
    const std::string& cls, const std::string& fun,
    std::vector<Diagnostic>& out) const {
  const FunDecl* decl = table_.fun(cls, fun);
  if (decl == nullptr) {
    report(out, trule::kClassFun, tkind::kProcedureNotFound, {},
           "class " + cls + " declares no procedure " + quote(fun));
    return std::nullopt;
  }
  std::optional<Type> sig = check_body(cls, *decl, trule::kClassFun, out);
  if (!sig) return std::nullopt;
  // Overrides keep the parameter type and may narrow the result.
  bool ok = true;
  for (std::optional<std::string> anc = table_.parent(cls); anc;
       anc = table_.parent(*anc)) {
    const FunDecl* base = table_.fun(*anc, fun);
    if (base == nullptr) continue;
    std::optional<Type> base_sig = signature(*anc, *base);
    if (!base_sig) continue;
    if (!(base_sig->first() == sig->first()) ||
        !assignable(sig->second(), base_sig->second())) {
      report(out, trule::kClassFun, tkind::kOverrideMismatch, decl->span,
             cls + "." + fun + " : " + sig->to_string() +
                 " does not override " + *anc + "." + fun + " : " +
                 base_sig->to_string());
      ok = false;
    }
  }
  return ok ? sig : std::nullopt;
}

std::optional<Type> TypeChecker::type_layer_fun(
    const std::string& cls, const std::string& layer,
    std::vector<Diagnostic>& out) const {
  const LayerDecl* decl = table_.layer(cls, layer);
  if (decl == nullptr) {
    report(out, trule::kLayerFun, tkind::kProcedureNotFound, {},
           "class " + cls + " declares no layer " + quote(layer));
    return std::nullopt;
  }
  return check_body(cls, decl->fun, trule::kLayerFun, out);
}

std::optional<Type> TypeChecker::layer_bound(
    const std::string& cls, const std::string& fun, std::string_view rule,
    SourceSpan span, std::vector<Diagnostic>& out) const {
  std::vector<std::pair<std::string, Type>> variants;
  bool untyped = false;
  for (const std::string& d : table_.class_names()) {
    if (!table_.is_subclass(d, cls)) continue;
    const ClassTable::ClassInfo& info = table_.info(d);
    for (const std::string& l : info.layer_order) {
      if (!context_.layers.count(l)) continue;
      const FunDecl& f = info.layers.at(l)->fun;
      if (f.name != fun) continue;
      std::optional<Type> sig = signature(d, f);
      if (!sig) {
        untyped = true;
        continue;
      }
      variants.emplace_back(d + "." + l, *sig);
    }
  }
  if (variants.empty()) {
    if (untyped) return std::nullopt;  // Reported where the variant is checked.
    report(out, rule, tkind::kProcedureNotFound, span,
           "no layer of " + cls + " or its subclasses defines " + quote(fun));
    return std::nullopt;
  }
  const Type& param = variants.front().second.first();
  for (const auto& [where, sig] : variants) {
    if (!(sig.first() == param)) {
      report(out, rule, tkind::kNoCommonBound, span,
             "layer variants of " + quote(fun) + " disagree on the parameter: " +
                 variants.front().first + " takes " + param.to_string() +
                 ", " + where + " takes " + sig.first().to_string());
      return std::nullopt;
    }
  }
  // Least upper bound of the results.
  const Type& first_ret = variants.front().second.second();
  std::optional<Type> bound;
  if (first_ret.is_int()) {
    bound = Type::Int();
  } else {
    for (std::optional<std::string> c = first_ret.referenced_class(); c;
         c = table_.parent(*c)) {
      Type candidate = Type::Ref(Type::Class(*c));
      bool covers = std::all_of(variants.begin(), variants.end(),
                                [&](const auto& v) {
                                  return assignable(v.second.second(), candidate);
                                });
      if (covers) {
        bound = candidate;
        break;
      }
    }
  }
  if (bound) {
    for (const auto& [where, sig] : variants) {
      if (!assignable(sig.second(), *bound)) {
        bound.reset();
        break;
      }
    }
  }
  if (!bound) {
    std::string results;
    for (const auto& [where, sig] : variants) {
      results += (results.empty() ? "" : ", ") + where + " returns " +
                 sig.second().to_string();
    }
    report(out, rule, tkind::kNoCommonBound, span,
           "layer variants of " + quote(fun) + " have no common result type (" +
               results + ")");
    return std::nullopt;
  }
  return Type::Fun(param, *bound);
}

std::optional<Type> TypeChecker::receiver_class(
    const Scope& scope, const std::string& receiver, std::string_view rule,
    SourceSpan span, std::vector<Diagnostic>& out) const {
  std::optional<Type> t;
  if (receiver == kThis) {
    if (scope.enclosing_class) t = Type::Ref(Type::Class(*scope.enclosing_class));
  } else if (scope.names.count(receiver) && context_.local(receiver)) {
    t = *context_.local(receiver);
  }
  if (!t) {
    report(out, rule, tkind::kVariableNotFound, span,
           "no variable " + quote(receiver) + " in scope");
    return std::nullopt;
  }
  if (!t->is_ref_to_class()) {
    report(out, rule, tkind::kTypeMismatch, span,
           "receiver " + quote(receiver) + " has type " + t->to_string() +
               ", not a class type");
    return std::nullopt;
  }
  return t;
}

bool TypeChecker::check_target(const Scope& scope, const std::string& target,
                               const Type& result, std::string_view rule,
                               SourceSpan span,
                               std::vector<Diagnostic>& out) const {
  const Type* t = context_.local(target);
  if (!scope.names.count(target) || t == nullptr) {
    report(out, rule, tkind::kVariableNotFound, span,
           "no variable " + quote(target) + " in scope");
    return false;
  }
  if (!assignable(result, *t)) {
    report(out, rule, tkind::kTypeMismatch, span,
           "cannot store " + result.to_string() + " in " + quote(target) +
               " of type " + t->to_string());
    return false;
  }
  return true;
}

bool TypeChecker::check_arg(const Scope& scope, const Expr& arg,
                            const Type& param, std::string_view rule,
                            SourceSpan span,
                            std::vector<Diagnostic>& out) const {
  std::optional<Type> t = type_expr(scope, arg, out);
  if (!t) return false;
  if (!assignable(*t, param)) {
    report(out, rule, tkind::kTypeMismatch, span,
           "argument of type " + t->to_string() + " where " +
               param.to_string() + " is expected");
    return false;
  }
  return true;
}

bool TypeChecker::wf_stmt(const Scope& scope, const StmtPtr& stmt,
                          std::vector<Diagnostic>& out) const {
  if (!stmt) return true;
  const SourceSpan span = stmt->span;
  return std::visit(
      Overloaded{
          [&](const FieldAssign& x) {
            std::optional<Type> obj = type_expr(scope, *x.object, out);
            std::optional<Type> val = type_expr(scope, *x.value, out);
            if (!obj || !val) return false;
            if (!obj->is_ref_to_class()) {
              report(out, trule::kFieldAssign, tkind::kTypeMismatch, span,
                     "field " + quote(x.field) + " written on a value of type " +
                         obj->to_string());
              return false;
            }
            const std::string& cls = obj->referenced_class();
            std::optional<std::string> owner = table_.class_of_var(cls, x.field);
            const Type* ft = owner ? context_.field(*owner, x.field) : nullptr;
            if (!owner || ft == nullptr) {
              report(out, trule::kFieldAssign, tkind::kFieldNotFound, span,
                     "class " + cls + " has no field " + quote(x.field));
              return false;
            }
            if (!assignable(*val, *ft)) {
              report(out, trule::kFieldAssign, tkind::kTypeMismatch, span,
                     "cannot store " + val->to_string() + " in field " +
                         *owner + "." + x.field + " of type " + ft->to_string());
              return false;
            }
            return true;
          },
          [&](const CallStmt& x) {
            std::optional<Type> recv =
                receiver_class(scope, x.receiver, trule::kCall, span, out);
            if (!recv) return false;
            const std::string& cls = recv->referenced_class();
            std::optional<std::string> definer = table_.super_lookup(cls, x.fun);
            if (!definer) {
              report(out, trule::kCall, tkind::kProcedureNotFound, span,
                     "class " + cls + " has no procedure " + quote(x.fun));
              return false;
            }
            std::optional<Type> sig =
                signature(*definer, *table_.fun(*definer, x.fun));
            if (!sig) return false;  // Reported at the definition.
            bool arg_ok = check_arg(scope, *x.arg, sig->first(), trule::kCall,
                                    span, out);
            bool target_ok = check_target(scope, x.target, sig->second(),
                                          trule::kCall, span, out);
            return arg_ok && target_ok;
          },
          [&](const LayeredCall& x) {
            std::optional<Type> recv = receiver_class(
                scope, x.receiver, trule::kLayeredCall, span, out);
            // layer(le, Lᵗ) = Lᵗ, compared as sets.
            ActiveLayers all(std::vector<std::string>(context_.layers.begin(),
                                                      context_.layers.end()));
            ActiveLayers after = apply_layer_expr(x.layers, all);
            std::set<std::string> after_set(after.names().begin(),
                                            after.names().end());
            bool consistent = after_set == context_.layers;
            if (!consistent) {
              report(out, trule::kLayeredCall, tkind::kLayerInconsistent, span,
                     "layer expression " + pretty_print(x.layers) +
                         " changes the set of available layers");
            }
            if (!recv) return false;
            std::optional<Type> sig =
                layer_bound(recv->referenced_class(), x.fun,
                            trule::kLayeredCall, span, out);
            if (!sig) return false;
            bool arg_ok = check_arg(scope, *x.arg, sig->first(),
                                    trule::kLayeredCall, span, out);
            bool target_ok = check_target(scope, x.target, sig->second(),
                                          trule::kLayeredCall, span, out);
            return consistent && arg_ok && target_ok;
          },
          [&](const SuperCall& x) {
            if (!scope.enclosing_class) {
              report(out, trule::kSuper, tkind::kProcedureNotFound, span,
                     "super call outside a procedure body");
              return false;
            }
            const std::string& cls = *scope.enclosing_class;
            std::optional<std::string> parent = table_.parent(cls);
            std::optional<std::string> definer =
                parent ? table_.super_lookup(*parent, x.fun) : std::nullopt;
            if (!definer) {
              report(out, trule::kSuper, tkind::kProcedureNotFound, span,
                     "no superclass of " + cls + " defines " + quote(x.fun));
              return false;
            }
            std::optional<Type> sig =
                signature(*definer, *table_.fun(*definer, x.fun));
            if (!sig) return false;
            bool arg_ok = check_arg(scope, *x.arg, sig->first(), trule::kSuper,
                                    span, out);
            bool target_ok = check_target(scope, x.target, sig->second(),
                                          trule::kSuper, span, out);
            return arg_ok && target_ok;
          },
          [&](const ProceedCall& x) {
            std::optional<Type> recv =
                receiver_class(scope, x.receiver, trule::kProceed, span, out);
            if (!recv) return false;
            std::optional<Type> sig = layer_bound(
                recv->referenced_class(), x.fun, trule::kProceed, span, out);
            if (!sig) return false;
            bool arg_ok = check_arg(scope, *x.arg, sig->first(),
                                    trule::kProceed, span, out);
            bool target_ok = check_target(scope, x.target, sig->second(),
                                          trule::kProceed, span, out);
            return arg_ok && target_ok;
          },
          [&](const NewStmt& x) {
            return check_target(scope, x.target,
                                Type::Ref(Type::Class(x.class_name)),
                                trule::kNew, span, out);
          },
          [&](const SeqStmt& x) {
            bool a = wf_stmt(scope, x.first, out);
            bool b = wf_stmt(scope, x.second, out);
            return a && b;
          },
          [&](const IfStmt& x) {
            bool c = type_bexpr(scope, *x.cond, out);
            bool t = wf_stmt(scope, x.then_branch, out);
            bool e = wf_stmt(scope, x.else_branch, out);
            return c && t && e;
          },
          [&](const WhileStmt& x) {
            bool c = type_bexpr(scope, *x.cond, out);
            bool b = wf_stmt(scope, x.body, out);
            return c && b;
          },
      },
      stmt->node);
}

TypeReport check_program(const ClassTable& table, ExprTypes* annotations) {
  TypeReport report;
  Context ctx = build_context(table, &report.diagnostics);
  TypeChecker checker(table, ctx, annotations);
  for (const std::string& cls : table.class_names()) {
    const ClassDecl& decl = *table.info(cls).decl;
    for (const FunDecl& f : decl.funs) {
      checker.type_class_fun(cls, f.name, report.diagnostics);
    }
    for (const LayerDecl& l : decl.layers) {
      checker.type_layer_fun(cls, l.name, report.diagnostics);
    }
  }
  checker.wf_stmt(checker.main_scope(), table.program().main_body,
                  report.diagnostics);
  std::stable_sort(report.diagnostics.begin(), report.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.span.line, a.span.column) <
                            std::tie(b.span.line, b.span.column);
                   });
  return report;
}

}  // namespace jcop
