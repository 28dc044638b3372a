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

#include <sstream>

#include "jcop/syntax/parser.h"

namespace jcop {

namespace {

// Binding strength of an expression's outermost form. Higher binds tighter.
enum Prec { kAdditive = 1, kMultiplicative = 2, kUnary = 3, kPostfix = 4 };

int arith_prec(ArithOp op) {
  return op == ArithOp::kAdd || op == ArithOp::kSub ? kAdditive
                                                    : kMultiplicative;
}

int expr_prec(const Expr& e) {
  if (const auto* lit = std::get_if<IntLit>(&e.node)) {
    // A negative literal prints with a leading `-`, which cannot follow a
    // cast or precede a `.`.
    return lit->value < 0 ? kMultiplicative : kPostfix;
  }
  if (std::holds_alternative<CastExpr>(e.node)) return kUnary;
  if (const auto* a = std::get_if<ArithExpr>(&e.node)) return arith_prec(a->op);
  return kPostfix;
}

void print_expr(std::ostream& os, const ExprPtr& e, int min_prec);

void print_operand(std::ostream& os, const ExprPtr& e, int min_prec) {
  if (expr_prec(*e) < min_prec) {
    os << "(";
    print_expr(os, e, 0);
    os << ")";
  } else {
    print_expr(os, e, min_prec);
  }
}

void print_expr(std::ostream& os, const ExprPtr& e, int min_prec) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          os << x.value;
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          os << "(" << x.class_name << ")";
          print_operand(os, x.operand, kUnary);
        } else if constexpr (std::is_same_v<T, ThisExpr>) {
          os << "this";
        } else if constexpr (std::is_same_v<T, LocalExpr>) {
          os << x.name;
        } else if constexpr (std::is_same_v<T, FieldExpr>) {
          print_operand(os, x.object, kPostfix);
          os << "." << x.field;
        } else {
          int p = arith_prec(x.op);
          print_operand(os, x.lhs, p);
          os << " " << to_string(x.op) << " ";
          print_operand(os, x.rhs, p + 1);
        }
      },
      e->node);
  (void)min_prec;
}

int bexpr_prec(const BExpr& b) {
  if (const auto* bin = std::get_if<BoolBinExpr>(&b.node)) {
    return bin->op == BoolOp::kOr ? 1 : 2;
  }
  return 3;
}

void print_bexpr(std::ostream& os, const BExprPtr& b);

void print_boperand(std::ostream& os, const BExprPtr& b, int min_prec) {
  if (bexpr_prec(*b) < min_prec) {
    os << "(";
    print_bexpr(os, b);
    os << ")";
  } else {
    print_bexpr(os, b);
  }
}

void print_bexpr(std::ostream& os, const BExprPtr& b) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolLit>) {
          os << (x.value ? "true" : "false");
        } else if constexpr (std::is_same_v<T, CompareExpr>) {
          print_expr(os, x.lhs, 0);
          os << " " << to_string(x.op) << " ";
          print_expr(os, x.rhs, 0);
        } else {
          int p = x.op == BoolOp::kOr ? 1 : 2;
          print_boperand(os, x.lhs, p);
          os << " " << to_string(x.op) << " ";
          print_boperand(os, x.rhs, p + 1);
        }
      },
      b->node);
}

class StmtPrinter {
 public:
  explicit StmtPrinter(std::ostream& os) : os_(os) {}

  // Emits the statements of `s` one per line, `;`-terminated.
  void seq_lines(const StmtPtr& s, int indent) {
    for (const StmtPtr& item : flatten_seq(s)) {
      pad(indent);
      single(item, indent);
      os_ << ";\n";
    }
  }

 private:
  void pad(int indent) { os_ << std::string(static_cast<size_t>(indent) * 2, ' '); }

  void block(const StmtPtr& s, int indent) {
    if (!s) {
      os_ << "{ }";
      return;
    }
    os_ << "{\n";
    seq_lines(s, indent + 1);
    pad(indent);
    os_ << "}";
  }

  void call_tail(const std::string& recv, const std::string& fun,
                 const ExprPtr& arg) {
    os_ << recv << "." << fun << "(";
    print_expr(os_, arg, 0);
    os_ << ")";
  }

  void single(const StmtPtr& s, int indent) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, FieldAssign>) {
            print_operand(os_, x.object, kPostfix);
            os_ << "." << x.field << " := ";
            print_expr(os_, x.value, 0);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            os_ << x.target << " := ";
            call_tail(x.receiver, x.fun, x.arg);
          } else if constexpr (std::is_same_v<T, LayeredCall>) {
            os_ << x.target << " := " << pretty_print(x.layers) << " ";
            call_tail(x.receiver, x.fun, x.arg);
          } else if constexpr (std::is_same_v<T, SuperCall>) {
            os_ << x.target << " := super." << x.fun << "(";
            print_expr(os_, x.arg, 0);
            os_ << ")";
          } else if constexpr (std::is_same_v<T, ProceedCall>) {
            os_ << x.target << " := proceed ";
            call_tail(x.receiver, x.fun, x.arg);
          } else if constexpr (std::is_same_v<T, NewStmt>) {
            os_ << x.target << " := new " << x.class_name;
          } else if constexpr (std::is_same_v<T, SeqStmt>) {
            // Only reached for a left-nested sequence; braces keep the
            // grouping on reparse.
            block(s, indent);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            os_ << "if ";
            print_bexpr(os_, x.cond);
            os_ << " then ";
            block(x.then_branch, indent);
            os_ << " else ";
            block(x.else_branch, indent);
          } else {
            os_ << "while ";
            print_bexpr(os_, x.cond);
            os_ << " do ";
            block(x.body, indent);
          }
        },
        s->node);
  }

  std::ostream& os_;
};

void print_decls(std::ostream& os, const std::vector<VarDecl>& decls,
                 int indent) {
  for (const VarDecl& d : decls) {
    os << std::string(static_cast<size_t>(indent) * 2, ' ')
       << d.type.to_string() << " " << d.name << ";\n";
  }
}

void print_fun(std::ostream& os, const FunDecl& f, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  os << pad << f.name << "(" << f.param_type.to_string() << " " << f.param
     << ") {\n";
  print_decls(os, f.locals, indent + 1);
  StmtPrinter(os).seq_lines(f.body, indent + 1);
  os << pad << "  return(";
  print_expr(os, f.ret, 0);
  os << ");\n" << pad << "}\n";
}

}  // namespace

std::string pretty_print(const ExprPtr& expr) {
  std::ostringstream os;
  print_expr(os, expr, 0);
  return os.str();
}

std::string pretty_print(const BExprPtr& bexpr) {
  std::ostringstream os;
  print_bexpr(os, bexpr);
  return os.str();
}

std::string pretty_print(const LayerExpr& layers) {
  if (layers.empty()) return "[]";
  std::string out;
  for (const LayerOp& op : layers) {
    if (!out.empty()) out += " ";
    out += op.kind == LayerOp::Kind::kWith ? "with " : "without ";
    out += op.layer;
  }
  return out;
}

std::string pretty_print(const Program& program) {
  std::ostringstream os;
  for (const ClassDecl& c : program.classes) {
    os << "class " << c.name;
    if (c.parent) os << " inherits " << *c.parent;
    os << " {\n";
    print_decls(os, c.fields, 1);
    for (const FunDecl& f : c.funs) print_fun(os, f, 1);
    for (const LayerDecl& l : c.layers) {
      os << "  layer " << l.name << " {\n";
      print_fun(os, l.fun, 2);
      os << "  }\n";
    }
    os << "}\n\n";
  }
  os << "main() {\n";
  print_decls(os, program.main_locals, 1);
  StmtPrinter(os).seq_lines(program.main_body, 1);
  os << "}\n";
  return os.str();
}

}  // namespace jcop
