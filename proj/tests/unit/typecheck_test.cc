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

#include <string>

#include "doctest.h"
#include "jcop/soundness/generator.h"
#include "jcop/typecheck/typecheck.h"
#include "support.h"

namespace jcop {
namespace {

using testing::corpus_files;
using testing::header_value;
using testing::read_file;
using testing::table_of;

const char* const kCube = R"(
class Cube {
  int length, width, height;
  modify(int p){ this.length := 4; return(this.length); }
  layer Second_dim { modify(int p){ this.width := 5; return(this.width); } }
  layer Third_dim { modify(int p){ this.height := 6; return(this.height); } }
}
main(){ Cube o; int r; o := new Cube; r := o.modify(0); r := with Second_dim o.modify(0); }
)";

const char* const kShapes = R"(
class A { int x; A next; get(A q){ return(q.x); } self(int p){ return(this); } }
class B inherits A { int y; }
class C { int z; }
main(){ A a; B b; C c; int n; }
)";

TypeReport check(const std::string& source) {
  return check_program(table_of(source));
}

// The first diagnostic, which must exist.
Diagnostic first_error(const std::string& source) {
  TypeReport r = check(source);
  CAPTURE(source);
  REQUIRE_FALSE(r.ok());
  return r.diagnostics.front();
}

void rejected_by(const std::string& source, std::string_view rule,
                 std::string_view kind) {
  Diagnostic d = first_error(source);
  CAPTURE(d.message);
  CHECK(d.rule == rule);
  CHECK(d.kind == kind);
}

std::string shapes_main(const std::string& body) {
  std::string s = kShapes;
  s.replace(s.find("int n; }"), 8, "int n; " + body + " }");
  return s;
}

// Types an expression in the scope of `main` of kShapes.
std::optional<Type> type_in_main(const std::string& expr_text,
                                 std::vector<Diagnostic>& out) {
  static const ClassTable table = table_of(shapes_main(""));
  static const Context ctx = build_context(table);
  Program p = parse_program(shapes_main("a.x := " + expr_text + ";"));
  ExprPtr e = std::get<FieldAssign>(p.main_body->node).value;
  TypeChecker tc(table, ctx);
  return tc.type_expr(tc.main_scope(), *e, out);
}

std::optional<Type> type_in_main(const std::string& expr_text) {
  std::vector<Diagnostic> out;
  return type_in_main(expr_text, out);
}

TEST_SUITE("typecheck") {

TEST_CASE("context of the cube program") {
  ClassTable t = table_of(kCube);
  Context ctx = build_context(t);
  REQUIRE(ctx.field("Cube", "length"));
  CHECK(*ctx.field("Cube", "length") == Type::Int());
  CHECK(*ctx.local("o") == Type::Ref(Type::Class("Cube")));
  CHECK(*ctx.local("p") == Type::Int());
  CHECK(ctx.layers == std::set<std::string>{"Second_dim", "Third_dim"});
  CHECK(ctx.param_only == std::set<std::string>{"p"});
}

TEST_CASE("context of the empty program and of object fields") {
  Context empty = build_context(table_of("main(){}"));
  CHECK(empty.locals.empty());
  CHECK(empty.fields.empty());
  CHECK(empty.layers.empty());
  Context ctx = build_context(table_of("class A { B b; } class B {} main(){}"));
  CHECK(*ctx.field("A", "b") == Type::Ref(Type::Class("B")));
  CHECK(context_type(Type::Bool()) == std::nullopt);
  CHECK(context_type(Type::Class("A")) == Type::Ref(Type::Class("A")));
}

TEST_CASE("context rejects bool declarations and conflicting local types") {
  rejected_by("class A { bool f; } main(){}", trule::kContext,
              tkind::kUnsupportedType);
  rejected_by("main(){ bool b; }", trule::kContext, tkind::kUnsupportedType);
  TypeReport conflict =
      check("class A { f(int p){ return(p); } g(A p){ return(p); } } main(){}");
  CHECK_FALSE(conflict.ok());
  bool found = false;
  for (const Diagnostic& d : conflict.diagnostics) {
    found |= d.rule == trule::kContext && d.kind == tkind::kLocalTypeConflict;
  }
  CHECK(found);
  CHECK(check("class A { f(int p){ return(p); } g(int p){ return(p); } } "
              "main(){ int p; }")
            .ok());
}

TEST_CASE("expression typing: literals, locals, fields, arithmetic") {
  CHECK(type_in_main("3") == Type::Int());
  CHECK(type_in_main("a") == Type::Ref(Type::Class("A")));
  CHECK(type_in_main("b.x") == Type::Int());
  CHECK(type_in_main("b.next.next") == Type::Ref(Type::Class("A")));
  CHECK(type_in_main("a.x * (2 - n)") == Type::Int());
  std::vector<Diagnostic> out;
  CHECK_FALSE(type_in_main("a + 1", out));
  CHECK(out.at(0).rule == trule::kArith);
  out.clear();
  CHECK_FALSE(type_in_main("missing", out));
  CHECK(out.at(0).kind == tkind::kVariableNotFound);
  out.clear();
  CHECK_FALSE(type_in_main("this", out));
  CHECK(out.at(0).rule == trule::kThis);
  out.clear();
  CHECK_FALSE(type_in_main("a.y", out));
  CHECK(out.at(0).rule == trule::kField);
  CHECK(out.at(0).kind == tkind::kFieldNotFound);
  out.clear();
  CHECK_FALSE(type_in_main("n.x", out));
  CHECK(out.at(0).rule == trule::kField);
}

TEST_CASE("expression typing: casts on integers and upcasts only") {
  CHECK(type_in_main("(A)5") == Type::Int());
  CHECK(type_in_main("(A)b") == Type::Ref(Type::Class("A")));
  CHECK(type_in_main("(A)(A)b") == Type::Ref(Type::Class("A")));
  CHECK(type_in_main("((A)b).x") == Type::Int());
  std::vector<Diagnostic> out;
  CHECK_FALSE(type_in_main("(B)a", out));
  CHECK(out.at(0).rule == trule::kCast);
  CHECK(out.at(0).kind == tkind::kCastError);
  out.clear();
  CHECK_FALSE(type_in_main("(C)b", out));
  CHECK(out.at(0).kind == tkind::kCastError);
}

TEST_CASE("boolean expression typing") {
  CHECK(check(shapes_main("if true then {} else {};")).ok());
  CHECK(check(shapes_main("if (1 < 2) && (a.x < 3) then {} else {};")).ok());
  rejected_by(shapes_main("if 1 < a then {} else {};"), trule::kCompare,
              tkind::kTypeMismatch);
  rejected_by(shapes_main("while a == b do {};"), trule::kCompare,
              tkind::kTypeMismatch);
}

TEST_CASE("class procedures: signature, body and overriding") {
  ClassTable t = table_of(kCube);
  Context ctx = build_context(t);
  TypeChecker tc(t, ctx);
  std::vector<Diagnostic> out;
  CHECK(tc.type_class_fun("Cube", "modify", out) ==
        Type::Fun(Type::Int(), Type::Int()));
  CHECK(out.empty());
  rejected_by("class A { int x; f(int p){ A q; q.x := r; return(p); } } main(){}",
              trule::kLocal, tkind::kVariableNotFound);
  rejected_by("class A { f(int p){ return(p); } } "
              "class B inherits A { f(A q){ return(1); } } main(){}",
              trule::kClassFun, tkind::kOverrideMismatch);
  rejected_by("class A { f(int p){ return(p); } } class B inherits A {} "
              "class C inherits B { f(int q){ return(this); } } main(){}",
              trule::kClassFun, tkind::kOverrideMismatch);
  // Covariant results are allowed.
  CHECK(check("class A { f(int p){ return(this); } } class B inherits A { "
              "g(int q){ return(q); } f(int s){ return(this); } } main(){}")
            .ok());
}

TEST_CASE("layer procedures") {
  ClassTable t = table_of(kCube);
  Context ctx = build_context(t);
  TypeChecker tc(t, ctx);
  std::vector<Diagnostic> out;
  CHECK(tc.type_layer_fun("Cube", "Second_dim", out) ==
        Type::Fun(Type::Int(), Type::Int()));
  rejected_by("class A { int x; layer L { f(int p){ this.y := 1; return(p); } } } "
              "main(){}",
              trule::kFieldAssign, tkind::kFieldNotFound);
  CHECK(check("class A { int x; layer L { f(A q){ q.x := this.x; "
              "return(q.x); } } } main(){}")
            .ok());
}

TEST_CASE("field assignment") {
  CHECK(check(shapes_main("a.next := b;")).ok());
  rejected_by(shapes_main("b.next := c;"), trule::kFieldAssign,
              tkind::kTypeMismatch);
  rejected_by(shapes_main("a.x := a;"), trule::kFieldAssign,
              tkind::kTypeMismatch);
  rejected_by(shapes_main("a.y := 1;"), trule::kFieldAssign,
              tkind::kFieldNotFound);
  rejected_by(shapes_main("n.x := 1;"), trule::kFieldAssign,
              tkind::kTypeMismatch);
}

TEST_CASE("plain calls") {
  CHECK(check(shapes_main("n := a.get(b);")).ok());
  CHECK(check(shapes_main("a := b.self(1);")).ok());
  rejected_by(shapes_main("n := a.put(a);"), trule::kCall,
              tkind::kProcedureNotFound);
  rejected_by(shapes_main("n := c.get(a);"), trule::kCall,
              tkind::kProcedureNotFound);
  rejected_by(shapes_main("n := a.get(1);"), trule::kCall,
              tkind::kTypeMismatch);
  rejected_by(shapes_main("b := a.self(1);"), trule::kCall,
              tkind::kTypeMismatch);
  rejected_by(shapes_main("n := n.get(a);"), trule::kCall,
              tkind::kTypeMismatch);
}

TEST_CASE("monotonicity: removing a called procedure flips the verdict") {
  std::string with_get = shapes_main("n := a.get(b);");
  CHECK(check(with_get).ok());
  std::string without_get = with_get;
  without_get.erase(without_get.find("get(A q){ return(q.x); }"), 25);
  rejected_by(without_get, trule::kCall, tkind::kProcedureNotFound);
}

TEST_CASE("layered calls: common bound over every variant") {
  CHECK(check(kCube).ok());
  std::string bad = kCube;
  bad.replace(bad.find("return(this.height)"), 19, "return(this)");
  rejected_by(bad, trule::kLayeredCall, tkind::kNoCommonBound);
  // Variants in subclasses count toward the bound.
  rejected_by("class A { int x; f(int p){ return(p); } } class B inherits A { "
              "layer L { f(int p){ return(this); } } } main(){ A a; int r; "
              "a := new A; r := with L a.f(0); }",
              trule::kLayeredCall, tkind::kTypeMismatch);
  rejected_by("class A { int x; } main(){ A a; int r; a := new A; "
              "r := [] a.f(0); }",
              trule::kLayeredCall, tkind::kProcedureNotFound);
}

TEST_CASE("layered calls: the layer expression must keep every layer") {
  std::string bare = kCube;
  bare.replace(bare.find("with Second_dim o"), 17, "without Second_dim o");
  rejected_by(bare, trule::kLayeredCall, tkind::kLayerInconsistent);
  std::string paired = kCube;
  paired.replace(paired.find("with Second_dim o"), 17,
                 "without Second_dim with Second_dim o");
  CHECK(check(paired).ok());
}

TEST_CASE("super calls") {
  CHECK(check("class A { f(int p){ return(p); } } class B inherits A { "
              "g(int q){ int r; r := super.f(q); return(r); } } main(){}")
            .ok());
  rejected_by("class A { f(int p){ int r; r := super.f(p); return(r); } } main(){}",
              trule::kSuper, tkind::kProcedureNotFound);
  rejected_by("class A { f(int p){ return(p); } } main(){ int r; "
              "r := super.f(1); }",
              trule::kSuper, tkind::kProcedureNotFound);
  rejected_by("class A { f(int p){ return(p); } } class B inherits A { "
              "g(int q){ B r; r := super.f(q); return(q); } } main(){}",
              trule::kSuper, tkind::kTypeMismatch);
}

TEST_CASE("proceed calls") {
  CHECK(check("class A { int x; f(int p){ return(p); } g(int q){ int r; "
              "r := proceed this.f(q); return(r); } layer L { f(int p){ "
              "return(p); } } } main(){}")
            .ok());
  rejected_by("class A { int x; f(int p){ return(p); } } main(){ A a; int r; "
              "a := new A; r := proceed a.f(0); }",
              trule::kProceed, tkind::kProcedureNotFound);
  rejected_by("class A { int x; layer L { f(int p){ return(this); } } } "
              "main(){ A a; int r; a := new A; r := proceed a.f(0); }",
              trule::kProceed, tkind::kTypeMismatch);
}

TEST_CASE("new") {
  CHECK(check(shapes_main("a := new B;")).ok());
  rejected_by(shapes_main("b := new A;"), trule::kNew, tkind::kTypeMismatch);
  rejected_by(shapes_main("n := new A;"), trule::kNew, tkind::kTypeMismatch);
}

TEST_CASE("scopes: procedure locals are not visible in main") {
  rejected_by("class A { f(int p){ int q; return(p); } } main(){ A a; "
              "a := new A; a.x := q; }",
              trule::kLocal, tkind::kVariableNotFound);
}

TEST_CASE("check_program: cube, downcast and empty program") {
  CHECK(check(kCube).ok());
  CHECK(check("main(){}").ok());
  rejected_by(shapes_main("n := a.get((B)a);"), trule::kCast,
              tkind::kCastError);
}

TEST_CASE("diagnostics are rendered with position, rule and kind") {
  Diagnostic d = first_error(shapes_main("n := a.put(a);"));
  std::string text = render_diagnostic(d, "x.jcop");
  CHECK(text.rfind("x.jcop:5:", 0) == 0);
  CHECK(text.find("[:=_{o.f}^t] procedure-not-found: ") != std::string::npos);
}

TEST_CASE("negative corpus: each program is rejected with the expected rule") {
  auto files = corpus_files("negative");
  CHECK(files.size() >= 10);
  for (const auto& path : files) {
    std::string source = read_file(path);
    std::string expect = header_value(source, "// expect: ");
    CAPTURE(path.string());
    REQUIRE_FALSE(expect.empty());
    std::string rule = expect.substr(0, expect.find(' '));
    std::string kind = expect.substr(expect.find(' ') + 1);
    Diagnostic d = first_error(source);
    CHECK(d.rule == rule);
    CHECK(d.kind == kind);
  }
}

TEST_CASE("good corpus is accepted") {
  for (const auto& path : corpus_files("good")) {
    CAPTURE(path.string());
    TypeReport r = check(read_file(path));
    CHECK(r.ok());
    for (const Diagnostic& d : r.diagnostics) {
      MESSAGE(render_diagnostic(d, path.filename().string()));
    }
  }
}

TEST_CASE("the checker is total and deterministic on mutants") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Mutant m = mutate_program(generate_program(seed, 10), seed);
    ClassTable t = ClassTable::build(m.program);
    TypeReport a = check_program(t);
    TypeReport b = check_program(t);
    CAPTURE(seed);
    CHECK(a.diagnostics.size() == b.diagnostics.size());
    if (m.kind != MutationKind::kNone) CHECK_FALSE(a.ok());
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace jcop
