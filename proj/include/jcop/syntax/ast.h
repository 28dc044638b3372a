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

#ifndef JCOP_SYNTAX_AST_H_
#define JCOP_SYNTAX_AST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace jcop {

// 1-based source position. A zero line means "synthesized, no source".
struct SourceSpan {
  int line = 0;
  int column = 0;

  std::string to_string() const;
};

// The five type forms: int, bool, class names, ref τ and τ₁ → τ₂.
// Only int, bool and class names are reachable from concrete syntax; the
// checker uses Ref(Class C) for object-typed variables and Fun for
// procedure judgments.
class Type {
 public:
  enum class Kind { kInt, kBool, kClass, kRef, kFun };

  static Type Int();
  static Type Bool();
  static Type Class(std::string name);
  static Type Ref(Type pointee);
  static Type Fun(Type param, Type result);

  Kind kind() const { return kind_; }
  bool is_int() const { return kind_ == Kind::kInt; }
  bool is_ref_to_class() const;

  // Valid for kClass.
  const std::string& class_name() const { return class_name_; }
  // Valid for kRef (pointee) and kFun (param).
  const Type& first() const { return *first_; }
  // Valid for kFun (result).
  const Type& second() const { return *second_; }
  // For Ref(Class C) returns C.
  const std::string& referenced_class() const { return first_->class_name_; }

  std::string to_string() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  explicit Type(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::string class_name_;
  std::shared_ptr<const Type> first_;
  std::shared_ptr<const Type> second_;
};

enum class ArithOp { kAdd, kSub, kMul, kDiv, kMod };
enum class CompareOp { kLt, kLe, kGt, kGe, kEq, kNe };
enum class BoolOp { kAnd, kOr };

const char* to_string(ArithOp op);
const char* to_string(CompareOp op);
const char* to_string(BoolOp op);

// Name used for the receiver local `this`.
inline constexpr const char* kThis = "this";

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  std::int64_t value;
};
struct CastExpr {
  std::string class_name;
  ExprPtr operand;
};
struct ThisExpr {};
struct LocalExpr {
  std::string name;
};
struct FieldExpr {
  ExprPtr object;
  std::string field;
};
struct ArithExpr {
  ExprPtr lhs;
  ArithOp op;
  ExprPtr rhs;
};

struct Expr {
  std::variant<IntLit, CastExpr, ThisExpr, LocalExpr, FieldExpr, ArithExpr>
      node;
  SourceSpan span;
};

struct BExpr;
using BExprPtr = std::shared_ptr<const BExpr>;

struct BoolLit {
  bool value;
};
struct CompareExpr {
  ExprPtr lhs;
  CompareOp op;
  ExprPtr rhs;
};
struct BoolBinExpr {
  BExprPtr lhs;
  BoolOp op;
  BExprPtr rhs;
};

struct BExpr {
  std::variant<BoolLit, CompareExpr, BoolBinExpr> node;
  SourceSpan span;
};

// One activation or deactivation step. A layer expression is the flat
// sequence of its steps; ε is the empty sequence and `le₁ le₂` is
// concatenation.
struct LayerOp {
  enum class Kind { kWith, kWithout };
  Kind kind;
  std::string layer;
  friend bool operator==(const LayerOp&, const LayerOp&) = default;
};
using LayerExpr = std::vector<LayerOp>;

struct Stmt;
// Null means the empty statement (an empty `{}` block).
using StmtPtr = std::shared_ptr<const Stmt>;

// e₁.v := e₂
struct FieldAssign {
  ExprPtr object;
  std::string field;
  ExprPtr value;
};
// o₁ := o₂.f(e)
struct CallStmt {
  std::string target;
  std::string receiver;
  std::string fun;
  ExprPtr arg;
};
// o₁ := le o₂.f(e)
struct LayeredCall {
  std::string target;
  LayerExpr layers;
  std::string receiver;
  std::string fun;
  ExprPtr arg;
};
// o₁ := super.f(e)
struct SuperCall {
  std::string target;
  std::string fun;
  ExprPtr arg;
};
// o₁ := proceed o₂.f(e)
struct ProceedCall {
  std::string target;
  std::string receiver;
  std::string fun;
  ExprPtr arg;
};
// o := new C
struct NewStmt {
  std::string target;
  std::string class_name;
};
struct SeqStmt {
  StmtPtr first;
  StmtPtr second;
};
struct IfStmt {
  BExprPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch;
};
struct WhileStmt {
  BExprPtr cond;
  StmtPtr body;
};

struct Stmt {
  std::variant<FieldAssign, CallStmt, LayeredCall, SuperCall, ProceedCall,
               NewStmt, SeqStmt, IfStmt, WhileStmt>
      node;
  SourceSpan span;
};

struct VarDecl {
  std::string name;
  Type type = Type::Int();
  SourceSpan span;
};

struct FunDecl {
  std::string name;
  std::string param;
  Type param_type = Type::Int();
  std::vector<VarDecl> locals;
  StmtPtr body;
  ExprPtr ret;
  SourceSpan span;
};

struct LayerDecl {
  std::string name;
  FunDecl fun;
  SourceSpan span;
};

struct ClassDecl {
  std::string name;
  std::optional<std::string> parent;
  std::vector<VarDecl> fields;
  std::vector<FunDecl> funs;
  std::vector<LayerDecl> layers;
  SourceSpan span;
};

struct Program {
  std::vector<ClassDecl> classes;
  std::vector<VarDecl> main_locals;
  StmtPtr main_body;
};

// Node constructors. Spans default to "no source".
ExprPtr make_int(std::int64_t value, SourceSpan span = {});
ExprPtr make_cast(std::string class_name, ExprPtr operand, SourceSpan span = {});
ExprPtr make_this(SourceSpan span = {});
ExprPtr make_local(std::string name, SourceSpan span = {});
ExprPtr make_field(ExprPtr object, std::string field, SourceSpan span = {});
ExprPtr make_arith(ExprPtr lhs, ArithOp op, ExprPtr rhs, SourceSpan span = {});

BExprPtr make_bool(bool value, SourceSpan span = {});
BExprPtr make_compare(ExprPtr lhs, CompareOp op, ExprPtr rhs,
                      SourceSpan span = {});
BExprPtr make_bool_bin(BExprPtr lhs, BoolOp op, BExprPtr rhs,
                       SourceSpan span = {});

StmtPtr make_stmt(decltype(Stmt::node) node, SourceSpan span = {});
// Sequences a list of statements right-nested; nulls are dropped.
StmtPtr make_seq(const std::vector<StmtPtr>& stmts);
// Inverse of make_seq over the right spine of nested SeqStmt nodes.
std::vector<StmtPtr> flatten_seq(const StmtPtr& stmt);

// Structural equality; spans are ignored.
bool same_expr(const ExprPtr& a, const ExprPtr& b);
bool same_bexpr(const BExprPtr& a, const BExprPtr& b);
bool same_stmt(const StmtPtr& a, const StmtPtr& b);
bool same_program(const Program& a, const Program& b);

// Compact S-expression rendering used by `jcop parse` and test failure
// messages.
std::string dump_ast(const Program& program);

}  // namespace jcop

#endif  // JCOP_SYNTAX_AST_H_
