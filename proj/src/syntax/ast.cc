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

#include "jcop/syntax/ast.h"

#include <sstream>
#include <utility>

namespace jcop {

std::string SourceSpan::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

Type Type::Int() { return Type(Kind::kInt); }
Type Type::Bool() { return Type(Kind::kBool); }

Type Type::Class(std::string name) {
  Type t(Kind::kClass);
  t.class_name_ = std::move(name);
  return t;
}

Type Type::Ref(Type pointee) {
  Type t(Kind::kRef);
  t.first_ = std::make_shared<const Type>(std::move(pointee));
  return t;
}

Type Type::Fun(Type param, Type result) {
  Type t(Kind::kFun);
  t.first_ = std::make_shared<const Type>(std::move(param));
  t.second_ = std::make_shared<const Type>(std::move(result));
  return t;
}

bool Type::is_ref_to_class() const {
  return kind_ == Kind::kRef && first_->kind_ == Kind::kClass;
}

std::string Type::to_string() const {
  switch (kind_) {
    case Kind::kInt:
      return "int";
    case Kind::kBool:
      return "bool";
    case Kind::kClass:
      return class_name_;
    case Kind::kRef:
      return "ref " + first_->to_string();
    case Kind::kFun:
      return "(" + first_->to_string() + " -> " + second_->to_string() + ")";
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Type::Kind::kInt:
    case Type::Kind::kBool:
      return true;
    case Type::Kind::kClass:
      return a.class_name_ == b.class_name_;
    case Type::Kind::kRef:
      return *a.first_ == *b.first_;
    case Type::Kind::kFun:
      return *a.first_ == *b.first_ && *a.second_ == *b.second_;
  }
  return false;
}

const char* to_string(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd: return "+";
    case ArithOp::kSub: return "-";
    case ArithOp::kMul: return "*";
    case ArithOp::kDiv: return "/";
    case ArithOp::kMod: return "%";
  }
  return "?";
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kLt: return "<";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kGe: return ">=";
    case CompareOp::kEq: return "==";
    case CompareOp::kNe: return "!=";
  }
  return "?";
}

const char* to_string(BoolOp op) {
  return op == BoolOp::kAnd ? "&&" : "||";
}

ExprPtr make_int(std::int64_t value, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{IntLit{value}, span});
}
ExprPtr make_cast(std::string class_name, ExprPtr operand, SourceSpan span) {
  return std::make_shared<const Expr>(
      Expr{CastExpr{std::move(class_name), std::move(operand)}, span});
}
ExprPtr make_this(SourceSpan span) {
  return std::make_shared<const Expr>(Expr{ThisExpr{}, span});
}
ExprPtr make_local(std::string name, SourceSpan span) {
  return std::make_shared<const Expr>(Expr{LocalExpr{std::move(name)}, span});
}
ExprPtr make_field(ExprPtr object, std::string field, SourceSpan span) {
  return std::make_shared<const Expr>(
      Expr{FieldExpr{std::move(object), std::move(field)}, span});
}
ExprPtr make_arith(ExprPtr lhs, ArithOp op, ExprPtr rhs, SourceSpan span) {
  return std::make_shared<const Expr>(
      Expr{ArithExpr{std::move(lhs), op, std::move(rhs)}, span});
}

BExprPtr make_bool(bool value, SourceSpan span) {
  return std::make_shared<const BExpr>(BExpr{BoolLit{value}, span});
}
BExprPtr make_compare(ExprPtr lhs, CompareOp op, ExprPtr rhs,
                      SourceSpan span) {
  return std::make_shared<const BExpr>(
      BExpr{CompareExpr{std::move(lhs), op, std::move(rhs)}, span});
}
BExprPtr make_bool_bin(BExprPtr lhs, BoolOp op, BExprPtr rhs,
                       SourceSpan span) {
  return std::make_shared<const BExpr>(
      BExpr{BoolBinExpr{std::move(lhs), op, std::move(rhs)}, span});
}

StmtPtr make_stmt(decltype(Stmt::node) node, SourceSpan span) {
  return std::make_shared<const Stmt>(Stmt{std::move(node), span});
}

StmtPtr make_seq(const std::vector<StmtPtr>& stmts) {
  StmtPtr result;
  for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
    if (!*it) continue;
    if (!result) {
      result = *it;
    } else {
      result = make_stmt(SeqStmt{*it, result}, (*it)->span);
    }
  }
  return result;
}

std::vector<StmtPtr> flatten_seq(const StmtPtr& stmt) {
  std::vector<StmtPtr> out;
  StmtPtr cur = stmt;
  while (cur) {
    if (const auto* seq = std::get_if<SeqStmt>(&cur->node)) {
      if (seq->first) out.push_back(seq->first);
      cur = seq->second;
    } else {
      out.push_back(cur);
      break;
    }
  }
  return out;
}

namespace {

bool same_layers(const LayerExpr& a, const LayerExpr& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind || a[i].layer != b[i].layer) return false;
  }
  return true;
}

bool same_decls(const std::vector<VarDecl>& a, const std::vector<VarDecl>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(a[i].type == b[i].type)) return false;
  }
  return true;
}

bool same_fun(const FunDecl& a, const FunDecl& b) {
  return a.name == b.name && a.param == b.param &&
         a.param_type == b.param_type && same_decls(a.locals, b.locals) &&
         same_stmt(a.body, b.body) && same_expr(a.ret, b.ret);
}

}  // namespace

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          return x.class_name == y.class_name && same_expr(x.operand, y.operand);
        } else if constexpr (std::is_same_v<T, ThisExpr>) {
          return true;
        } else if constexpr (std::is_same_v<T, LocalExpr>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, FieldExpr>) {
          return x.field == y.field && same_expr(x.object, y.object);
        } else {
          return x.op == y.op && same_expr(x.lhs, y.lhs) &&
                 same_expr(x.rhs, y.rhs);
        }
      },
      a->node);
}

bool same_bexpr(const BExprPtr& a, const BExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, CompareExpr>) {
          return x.op == y.op && same_expr(x.lhs, y.lhs) &&
                 same_expr(x.rhs, y.rhs);
        } else {
          return x.op == y.op && same_bexpr(x.lhs, y.lhs) &&
                 same_bexpr(x.rhs, y.rhs);
        }
      },
      a->node);
}

bool same_stmt(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, FieldAssign>) {
          return x.field == y.field && same_expr(x.object, y.object) &&
                 same_expr(x.value, y.value);
        } else if constexpr (std::is_same_v<T, CallStmt> ||
                             std::is_same_v<T, ProceedCall>) {
          return x.target == y.target && x.receiver == y.receiver &&
                 x.fun == y.fun && same_expr(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, LayeredCall>) {
          return x.target == y.target && same_layers(x.layers, y.layers) &&
                 x.receiver == y.receiver && x.fun == y.fun &&
                 same_expr(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, SuperCall>) {
          return x.target == y.target && x.fun == y.fun &&
                 same_expr(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, NewStmt>) {
          return x.target == y.target && x.class_name == y.class_name;
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          return same_stmt(x.first, y.first) && same_stmt(x.second, y.second);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return same_bexpr(x.cond, y.cond) &&
                 same_stmt(x.then_branch, y.then_branch) &&
                 same_stmt(x.else_branch, y.else_branch);
        } else {
          return same_bexpr(x.cond, y.cond) && same_stmt(x.body, y.body);
        }
      },
      a->node);
}

bool same_program(const Program& a, const Program& b) {
  if (a.classes.size() != b.classes.size()) return false;
  for (size_t i = 0; i < a.classes.size(); ++i) {
    const ClassDecl& x = a.classes[i];
    const ClassDecl& y = b.classes[i];
    if (x.name != y.name || x.parent != y.parent ||
        !same_decls(x.fields, y.fields) || x.funs.size() != y.funs.size() ||
        x.layers.size() != y.layers.size()) {
      return false;
    }
    for (size_t j = 0; j < x.funs.size(); ++j) {
      if (!same_fun(x.funs[j], y.funs[j])) return false;
    }
    for (size_t j = 0; j < x.layers.size(); ++j) {
      if (x.layers[j].name != y.layers[j].name ||
          !same_fun(x.layers[j].fun, y.layers[j].fun)) {
        return false;
      }
    }
  }
  return same_decls(a.main_locals, b.main_locals) &&
         same_stmt(a.main_body, b.main_body);
}

namespace {

void dump(std::ostream& os, const ExprPtr& e);

void dump(std::ostream& os, const ExprPtr& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          os << x.value;
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          os << "(cast " << x.class_name << " ";
          dump(os, x.operand);
          os << ")";
        } else if constexpr (std::is_same_v<T, ThisExpr>) {
          os << "this";
        } else if constexpr (std::is_same_v<T, LocalExpr>) {
          os << x.name;
        } else if constexpr (std::is_same_v<T, FieldExpr>) {
          os << "(field ";
          dump(os, x.object);
          os << " " << x.field << ")";
        } else {
          os << "(" << to_string(x.op) << " ";
          dump(os, x.lhs);
          os << " ";
          dump(os, x.rhs);
          os << ")";
        }
      },
      e->node);
}

void dump(std::ostream& os, const BExprPtr& b) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          os << (x.value ? "true" : "false");
        } else if constexpr (std::is_same_v<T, CompareExpr>) {
          os << "(" << to_string(x.op) << " ";
          dump(os, x.lhs);
          os << " ";
          dump(os, x.rhs);
          os << ")";
        } else {
          os << "(" << to_string(x.op) << " ";
          dump(os, x.lhs);
          os << " ";
          dump(os, x.rhs);
          os << ")";
        }
      },
      b->node);
}

void dump_call_tail(std::ostream& os, const std::string& receiver,
                    const std::string& fun, const ExprPtr& arg) {
  os << " " << receiver << " " << fun << " ";
  dump(os, arg);
  os << ")";
}

void dump(std::ostream& os, const StmtPtr& s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (!s) {
    os << pad << "(skip)\n";
    return;
  }
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldAssign>) {
          os << pad << "(assign-field ";
          dump(os, x.object);
          os << " " << x.field << " ";
          dump(os, x.value);
          os << ")\n";
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          os << pad << "(call " << x.target;
          dump_call_tail(os, x.receiver, x.fun, x.arg);
          os << "\n";
        } else if constexpr (std::is_same_v<T, LayeredCall>) {
          os << pad << "(layered-call " << x.target << " [";
          for (size_t i = 0; i < x.layers.size(); ++i) {
            if (i) os << " ";
            os << (x.layers[i].kind == LayerOp::Kind::kWith ? "with "
                                                            : "without ")
               << x.layers[i].layer;
          }
          os << "]";
          dump_call_tail(os, x.receiver, x.fun, x.arg);
          os << "\n";
        } else if constexpr (std::is_same_v<T, SuperCall>) {
          os << pad << "(super-call " << x.target << " " << x.fun << " ";
          dump(os, x.arg);
          os << ")\n";
        } else if constexpr (std::is_same_v<T, ProceedCall>) {
          os << pad << "(proceed-call " << x.target;
          dump_call_tail(os, x.receiver, x.fun, x.arg);
          os << "\n";
        } else if constexpr (std::is_same_v<T, NewStmt>) {
          os << pad << "(new " << x.target << " " << x.class_name << ")\n";
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          os << pad << "(seq\n";
          dump(os, x.first, indent + 1);
          dump(os, x.second, indent + 1);
          os << pad << ")\n";
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          os << pad << "(if ";
          dump(os, x.cond);
          os << "\n";
          dump(os, x.then_branch, indent + 1);
          dump(os, x.else_branch, indent + 1);
          os << pad << ")\n";
        } else {
          os << pad << "(while ";
          dump(os, x.cond);
          os << "\n";
          dump(os, x.body, indent + 1);
          os << pad << ")\n";
        }
      },
      s->node);
}

void dump_decls(std::ostream& os, const std::vector<VarDecl>& decls,
                const std::string& pad) {
  for (const VarDecl& d : decls) {
    os << pad << "(var " << d.type.to_string() << " " << d.name << ")\n";
  }
}

void dump_fun(std::ostream& os, const FunDecl& f, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  os << pad << "(fun " << f.name << " (" << f.param_type.to_string() << " "
     << f.param << ")\n";
  dump_decls(os, f.locals, pad + "  ");
  dump(os, f.body, indent + 1);
  os << pad << "  (return ";
  dump(os, f.ret);
  os << "))\n";
}

}  // namespace

std::string dump_ast(const Program& program) {
  std::ostringstream os;
  for (const ClassDecl& c : program.classes) {
    os << "(class " << c.name;
    if (c.parent) os << " inherits " << *c.parent;
    os << "\n";
    dump_decls(os, c.fields, "  ");
    for (const FunDecl& f : c.funs) dump_fun(os, f, 1);
    for (const LayerDecl& l : c.layers) {
      os << "  (layer " << l.name << "\n";
      dump_fun(os, l.fun, 2);
      os << "  )\n";
    }
    os << ")\n";
  }
  os << "(main\n";
  dump_decls(os, program.main_locals, "  ");
  dump(os, program.main_body, 1);
  os << ")\n";
  return os.str();
}

}  // namespace jcop
