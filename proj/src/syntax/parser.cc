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

#include "jcop/syntax/parser.h"

#include <limits>
#include <utility>

#include "lexer.h"

namespace jcop {

namespace {

std::string join_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const std::string& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

bool before(SourceSpan a, SourceSpan b) {
  return a.line < b.line || (a.line == b.line && a.column < b.column);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program prog;
    while (peek_is("class")) prog.classes.push_back(class_decl());
    expect("main", {"'class'", "'main'"});
    expect("(");
    expect(")");
    expect("{");
    prog.main_locals = var_decls();
    prog.main_body = stmt_seq("}");
    expect("}");
    if (peek().kind != TokenKind::kEnd) fail({"end of input"});
    return prog;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }

  bool peek_is(std::string_view text, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return (t.kind == TokenKind::kKeyword || t.kind == TokenKind::kPunct) &&
           t.text == text;
  }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    throw ParseError(peek().span, std::move(expected), peek().describe());
  }

  const Token& expect(std::string_view text, std::set<std::string> expected = {}) {
    if (!peek_is(text)) {
      if (expected.empty()) expected.insert("'" + std::string(text) + "'");
      fail(std::move(expected));
    }
    return take();
  }

  std::string ident(const char* what = "identifier") {
    if (peek().kind != TokenKind::kIdent) fail({what});
    return take().text;
  }

  // int | bool | ClassName
  Type type() {
    if (peek_is("int")) {
      take();
      return Type::Int();
    }
    if (peek_is("bool")) {
      take();
      return Type::Bool();
    }
    if (peek().kind == TokenKind::kIdent) return Type::Class(take().text);
    fail({"type"});
  }

  bool at_decl_start() const {
    if (peek_is("int") || peek_is("bool")) return true;
    return peek().kind == TokenKind::kIdent &&
           peek(1).kind == TokenKind::kIdent;
  }

  // Type x (, y)* ;
  void var_decl_into(std::vector<VarDecl>& out) {
    SourceSpan span = peek().span;
    Type t = type();
    out.push_back({ident(), t, span});
    while (peek_is(",")) {
      take();
      SourceSpan s = peek().span;
      out.push_back({ident(), t, s});
    }
    expect(";", {"','", "';'"});
  }

  std::vector<VarDecl> var_decls() {
    std::vector<VarDecl> out;
    while (at_decl_start()) var_decl_into(out);
    return out;
  }

  ClassDecl class_decl() {
    ClassDecl c;
    c.span = expect("class").span;
    c.name = ident("class name");
    if (peek_is("inherits")) {
      take();
      c.parent = ident("class name");
    }
    expect("{", {"'inherits'", "'{'"});
    while (!peek_is("}")) {
      if (peek_is("layer")) {
        LayerDecl l;
        l.span = take().span;
        l.name = ident("layer name");
        expect("{");
        l.fun = fun_decl();
        expect("}");
        c.layers.push_back(std::move(l));
      } else if (at_decl_start()) {
        var_decl_into(c.fields);
      } else if (peek().kind == TokenKind::kIdent && peek_is("(", 1)) {
        c.funs.push_back(fun_decl());
      } else {
        fail({"field declaration", "function", "'layer'", "'}'"});
      }
    }
    expect("}");
    return c;
  }

  // f(T p) { decls S; return(e); }
  FunDecl fun_decl() {
    FunDecl f;
    f.span = peek().span;
    f.name = ident("function name");
    expect("(");
    f.param_type = type();
    f.param = ident("parameter name");
    expect(")");
    expect("{");
    f.locals = var_decls();
    f.body = stmt_seq("return");
    expect("return", {"';'", "'return'"});
    expect("(");
    f.ret = expr();
    expect(")");
    expect(";");
    expect("}");
    return f;
  }

  // S (; S)* ;?  up to (not including) the terminator.
  StmtPtr stmt_seq(std::string_view terminator) {
    std::vector<StmtPtr> stmts;
    while (!peek_is(terminator)) {
      stmts.push_back(stmt());
      if (peek_is(";")) {
        take();
      } else {
        // A function body separates its statement from `return` with `;`.
        if (terminator == "return") fail({"';'"});
        break;
      }
    }
    if (!peek_is(terminator)) {
      fail({"';'", "'" + std::string(terminator) + "'"});
    }
    return make_seq(stmts);
  }

  StmtPtr stmt() {
    SourceSpan span = peek().span;
    if (peek_is("{")) {
      take();
      StmtPtr inner = stmt_seq("}");
      expect("}");
      return inner;
    }
    if (peek_is("if")) {
      take();
      BExprPtr cond = bexpr();
      expect("then");
      StmtPtr t = stmt();
      expect("else");
      StmtPtr f = stmt();
      return make_stmt(IfStmt{cond, t, f}, span);
    }
    if (peek_is("while")) {
      take();
      BExprPtr cond = bexpr();
      expect("do");
      StmtPtr body = stmt();
      return make_stmt(WhileStmt{cond, body}, span);
    }
    if (peek().kind == TokenKind::kIdent && peek_is(":=", 1)) {
      std::string target = take().text;
      take();
      return assignment_rhs(std::move(target), span);
    }
    if (peek().kind == TokenKind::kIdent || peek_is("this") || peek_is("(")) {
      ExprPtr lhs = unary();
      const auto* field = std::get_if<FieldExpr>(&lhs->node);
      if (!field) {
        throw ParseError(lhs->span, {"field access on the left of ':='"},
                         "expression");
      }
      expect(":=", {"'.'", "':='"});
      ExprPtr value = expr();
      return make_stmt(FieldAssign{field->object, field->field, value}, span);
    }
    fail({"statement"});
  }

  std::string receiver() {
    if (peek_is("this")) {
      take();
      return kThis;
    }
    return ident("receiver variable");
  }

  // o₂.f(e) after the receiver-introducing tokens.
  void call_tail(std::string& recv, std::string& fun, ExprPtr& arg) {
    recv = receiver();
    expect(".");
    fun = ident("function name");
    expect("(");
    arg = expr();
    expect(")");
  }

  StmtPtr assignment_rhs(std::string target, SourceSpan span) {
    if (peek_is("new")) {
      take();
      return make_stmt(NewStmt{std::move(target), ident("class name")}, span);
    }
    if (peek_is("super")) {
      take();
      expect(".");
      std::string fun = ident("function name");
      expect("(");
      ExprPtr arg = expr();
      expect(")");
      return make_stmt(SuperCall{std::move(target), std::move(fun), arg}, span);
    }
    if (peek_is("proceed")) {
      take();
      ProceedCall call{std::move(target), "", "", nullptr};
      call_tail(call.receiver, call.fun, call.arg);
      return make_stmt(std::move(call), span);
    }
    if (peek_is("with") || peek_is("without") || peek_is("[")) {
      LayeredCall call{std::move(target), layer_expr(), "", "", nullptr};
      call_tail(call.receiver, call.fun, call.arg);
      return make_stmt(std::move(call), span);
    }
    if (peek().kind == TokenKind::kIdent || peek_is("this")) {
      CallStmt call{std::move(target), "", "", nullptr};
      call_tail(call.receiver, call.fun, call.arg);
      return make_stmt(std::move(call), span);
    }
    fail({"'new'", "'super'", "'proceed'", "'with'", "'without'", "'['",
          "receiver variable"});
  }

  // `[]` is the empty layer expression; otherwise one or more steps.
  LayerExpr layer_expr() {
    LayerExpr le;
    if (peek_is("[")) {
      take();
      expect("]");
      return le;
    }
    while (peek_is("with") || peek_is("without")) {
      LayerOp::Kind kind = take().text == "with" ? LayerOp::Kind::kWith
                                                 : LayerOp::Kind::kWithout;
      le.push_back({kind, ident("layer name")});
    }
    return le;
  }

  // ---- expressions ----

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek_is("+") || peek_is("-")) {
      SourceSpan span = peek().span;
      ArithOp op = take().text == "+" ? ArithOp::kAdd : ArithOp::kSub;
      lhs = make_arith(lhs, op, term(), span);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek_is("*") || peek_is("/") || peek_is("%")) {
      SourceSpan span = peek().span;
      const std::string& t = take().text;
      ArithOp op = t == "*" ? ArithOp::kMul
                 : t == "/" ? ArithOp::kDiv
                            : ArithOp::kMod;
      lhs = make_arith(lhs, op, unary(), span);
    }
    return lhs;
  }

  bool starts_cast_operand(size_t ahead) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::kInt || t.kind == TokenKind::kIdent ||
           (t.kind != TokenKind::kEnd && (t.text == "this" || t.text == "("));
  }

  ExprPtr unary() {
    // `(C) operand` is a cast; `(x)` followed by anything else is a
    // parenthesized local.
    if (peek_is("(") && peek(1).kind == TokenKind::kIdent && peek_is(")", 2) &&
        starts_cast_operand(3)) {
      SourceSpan span = take().span;
      std::string cls = take().text;
      take();
      return make_cast(std::move(cls), unary(), span);
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (peek_is(".")) {
      SourceSpan span = take().span;
      e = make_field(e, ident("field name"), span);
    }
    return e;
  }

  std::int64_t int_literal(bool negative) {
    const Token& t = peek();
    if (t.kind != TokenKind::kInt) fail({"integer"});
    const std::string digits = take().text;
    if (digits == "9223372036854775808") {
      if (!negative) {
        throw ParseError(t.span, {"integer literal within 64 bits"}, digits);
      }
      return std::numeric_limits<std::int64_t>::min();
    }
    std::int64_t v = std::stoll(digits);
    return negative ? -v : v;
  }

  ExprPtr primary() {
    SourceSpan span = peek().span;
    if (peek().kind == TokenKind::kInt) return make_int(int_literal(false), span);
    if (peek_is("-") && peek(1).kind == TokenKind::kInt) {
      take();
      return make_int(int_literal(true), span);
    }
    if (peek_is("this")) {
      take();
      return make_this(span);
    }
    if (peek().kind == TokenKind::kIdent) return make_local(take().text, span);
    if (peek_is("(")) {
      take();
      ExprPtr inner = expr();
      expect(")");
      return inner;
    }
    fail({"expression"});
  }

  // ---- boolean expressions ----

  BExprPtr bexpr() {
    BExprPtr lhs = band();
    while (peek_is("||")) {
      SourceSpan span = take().span;
      lhs = make_bool_bin(lhs, BoolOp::kOr, band(), span);
    }
    return lhs;
  }

  BExprPtr band() {
    BExprPtr lhs = batom();
    while (peek_is("&&")) {
      SourceSpan span = take().span;
      lhs = make_bool_bin(lhs, BoolOp::kAnd, batom(), span);
    }
    return lhs;
  }

  BExprPtr comparison() {
    SourceSpan span = peek().span;
    ExprPtr lhs = expr();
    static const std::pair<const char*, CompareOp> kOps[] = {
        {"<", CompareOp::kLt},  {"<=", CompareOp::kLe}, {">", CompareOp::kGt},
        {">=", CompareOp::kGe}, {"==", CompareOp::kEq}, {"!=", CompareOp::kNe}};
    for (const auto& [text, op] : kOps) {
      if (peek_is(text)) {
        take();
        return make_compare(lhs, op, expr(), span);
      }
    }
    fail({"comparison operator"});
  }

  BExprPtr batom() {
    SourceSpan span = peek().span;
    if (peek_is("true") || peek_is("false")) {
      return make_bool(take().text == "true", span);
    }
    if (!peek_is("(")) return comparison();
    // A leading parenthesis opens either an integer operand or a grouped
    // boolean expression; try the comparison reading first.
    const size_t saved = pos_;
    try {
      return comparison();
    } catch (const ParseError& first) {
      pos_ = saved;
      try {
        take();
        BExprPtr inner = bexpr();
        expect(")");
        return inner;
      } catch (const ParseError& second) {
        throw before(second.where(), first.where()) ? first : second;
      }
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(SourceSpan where, std::set<std::string> expected,
                       std::string found)
    : std::runtime_error(where.to_string() + ": expected " +
                         join_expected(expected) + ", found " + found),
      where_(where),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Program parse_program(std::string_view source) {
  Parser parser(tokenize(source));
  return parser.program();
}

}  // namespace jcop
