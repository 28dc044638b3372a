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

#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "jcop/classtable/class_table.h"
#include "support.h"

namespace jcop {
namespace {

using testing::table_of;

const char* const kCube = R"(
class Cube {
  int length, width, height;
  modify(int p){ this.length := 4; return(this.length); }
  layer Second_dim { modify(int p){ this.width := 5; return(this.width); } }
  layer Third_dim { modify(int p){ this.height := 6; return(this.height); } }
}
main(){}
)";

// Object ≪ A ≪ B, with a side class C ≪ Object.
const char* const kChain = R"(
class Object { int id; f(int p){ return(p); } }
class A inherits Object { int x; g(int p){ return(p); } layer L { g(int p){ return(p); } } }
class B inherits A { int y; g(int p){ return(p); } layer M { f(int p){ return(p); } } }
class C inherits Object { int z; }
main(){}
)";

LayerExpr with(const std::string& l) { return {{LayerOp::Kind::kWith, l}}; }
LayerExpr without(const std::string& l) {
  return {{LayerOp::Kind::kWithout, l}};
}
LayerExpr concat(LayerExpr a, const LayerExpr& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
ActiveLayers layers(std::vector<std::string> names) {
  return ActiveLayers(std::move(names));
}

BuildError::Kind build_error_of(const std::string& source) {
  try {
    table_of(source);
  } catch (const BuildError& e) {
    return e.kind();
  }
  FAIL("expected a build error for: " << source);
  return BuildError::Kind::kCycle;
}

TEST_SUITE("classtable") {

TEST_CASE("build records layer declaration order") {
  ClassTable t = table_of(kCube);
  const auto& info = t.info("Cube");
  CHECK(info.layer_order == std::vector<std::string>{"Second_dim", "Third_dim"});
  CHECK(info.direct_fields ==
        std::vector<std::string>{"length", "width", "height"});
  CHECK(info.funs.count("modify") == 1);
  CHECK(t.layer_names() == std::set<std::string>{"Second_dim", "Third_dim"});
}

TEST_CASE("build collects inherited fields") {
  ClassTable t = table_of(kChain);
  CHECK(t.info("B").all_fields.size() == 3);
  CHECK(t.info("C").all_fields.size() == 2);
  CHECK(t.parent("B") == "A");
  CHECK_FALSE(t.parent("Object"));
}

TEST_CASE("build errors") {
  CHECK(build_error_of("class A inherits A {} main(){}") ==
        BuildError::Kind::kCycle);
  CHECK(build_error_of("class A inherits B {} class B inherits A {} main(){}") ==
        BuildError::Kind::kCycle);
  CHECK(build_error_of("class A inherits Z {} main(){}") ==
        BuildError::Kind::kUnknownParent);
  CHECK(build_error_of("class A { int x; } class B inherits A { int x; } main(){}") ==
        BuildError::Kind::kFieldShadowing);
  CHECK(build_error_of("class A {} class A {} main(){}") ==
        BuildError::Kind::kDuplicateName);
  CHECK(build_error_of("class A { int x; A x; } main(){}") ==
        BuildError::Kind::kDuplicateName);
  CHECK(build_error_of("class A { f(int p){ return(p); } f(int q){ return(q); } } "
                       "main(){}") == BuildError::Kind::kDuplicateName);
  CHECK(build_error_of("class A { layer L { f(int p){ return(p); } } "
                       "layer L { g(int p){ return(p); } } } main(){}") ==
        BuildError::Kind::kDuplicateName);
  CHECK(build_error_of("class A { int x; f(int p){ int r; r := with Z this.f(p); "
                       "return(p); } } main(){}") ==
        BuildError::Kind::kUnknownLayer);
  CHECK(build_error_of("main(){ Z z; }") == BuildError::Kind::kUnknownClass);
  CHECK(build_error_of("main(){ int r; r := new Z; }") ==
        BuildError::Kind::kUnknownClass);
}

TEST_CASE("subtype: classes by inheritance, other types only to themselves") {
  ClassTable t = table_of(kChain);
  CHECK(t.subtype(Type::Class("A"), Type::Class("A")));
  CHECK(t.subtype(Type::Class("B"), Type::Class("Object")));
  CHECK_FALSE(t.subtype(Type::Class("Object"), Type::Class("B")));
  CHECK_FALSE(t.subtype(Type::Class("C"), Type::Class("A")));
  CHECK(t.subtype(Type::Int(), Type::Int()));
  CHECK_FALSE(t.subtype(Type::Int(), Type::Bool()));
  CHECK(t.subtype(Type::Ref(Type::Class("B")), Type::Ref(Type::Class("B"))));
  CHECK_FALSE(t.subtype(Type::Ref(Type::Class("B")), Type::Ref(Type::Class("A"))));
  Type f = Type::Fun(Type::Int(), Type::Int());
  CHECK(t.subtype(f, f));
  CHECK_FALSE(t.subtype(f, Type::Fun(Type::Int(), Type::Bool())));
}

TEST_CASE("lyr1: the empty layer expression leaves the list alone") {
  CHECK(apply_layer_expr({}, layers({"l1"})) == layers({"l1"}));
  CHECK(apply_layer_expr({}, layers({})) == layers({}));
  CHECK(apply_layer_expr({}, layers({"b", "a"})) == layers({"b", "a"}));
}

TEST_CASE("lyr2: with prepends an inactive layer") {
  CHECK(apply_layer_expr(with("l"), layers({})) == layers({"l"}));
  CHECK(apply_layer_expr(with("l"), layers({"a", "b"})) ==
        layers({"l", "a", "b"}));
}

TEST_CASE("lyr3: with on an active layer changes nothing") {
  CHECK(apply_layer_expr(with("l"), layers({"l"})) == layers({"l"}));
  CHECK(apply_layer_expr(with("b"), layers({"a", "b", "c"})) ==
        layers({"a", "b", "c"}));
}

TEST_CASE("lyr4: without removes the layer") {
  CHECK(apply_layer_expr(without("l"), layers({"l", "l2"})) == layers({"l2"}));
  CHECK(apply_layer_expr(without("b"), layers({"a", "b", "c"})) ==
        layers({"a", "c"}));
  CHECK(apply_layer_expr(without("z"), layers({"a"})) == layers({"a"}));
}

TEST_CASE("lyr5: a sequence applies its steps left to right") {
  CHECK(apply_layer_expr(concat(with("a"), without("a")), layers({})) ==
        layers({}));
  CHECK(apply_layer_expr(concat(without("a"), with("a")), layers({"b", "a"})) ==
        layers({"a", "b"}));
  CHECK(apply_layer_expr(concat(with("a"), with("b")), layers({})) ==
        layers({"b", "a"}));
}

TEST_CASE("layer expressions: idempotence and duplicate freedom") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 500; ++trial) {
    LayerExpr le;
    std::size_t n = rng() % 6;
    for (std::size_t k = 0; k < n; ++k) {
      le.push_back({rng() % 2 ? LayerOp::Kind::kWith : LayerOp::Kind::kWithout,
                    names[rng() % names.size()]});
    }
    ActiveLayers start = apply_layer_expr(le, {});
    ActiveLayers out = apply_layer_expr(le, start);
    std::set<std::string> unique(out.names().begin(), out.names().end());
    CHECK(unique.size() == out.size());
    for (const std::string& l : names) {
      CHECK(apply_layer_expr(with(l), apply_layer_expr(with(l), out)) ==
            apply_layer_expr(with(l), out));
      CHECK(apply_layer_expr(without(l), apply_layer_expr(without(l), out)) ==
            apply_layer_expr(without(l), out));
    }
  }
}

TEST_CASE("class1: a field declared directly is found in the class itself") {
  ClassTable t = table_of(kCube);
  CHECK(t.class_of_var("Cube", "width") == "Cube");
  CHECK(table_of(kChain).class_of_var("B", "y") == "B");
}

TEST_CASE("class2: an inherited field is found in the declaring ancestor") {
  ClassTable t = table_of(kChain);
  CHECK(t.class_of_var("B", "x") == "A");
  CHECK(t.class_of_var("B", "id") == "Object");
  CHECK_FALSE(t.class_of_var("A", "y"));
  CHECK_FALSE(table_of(kCube).class_of_var("Cube", "depth"));
}

TEST_CASE("super1: a class defining the procedure is its own lookup result") {
  ClassTable t = table_of(kChain);
  CHECK(t.super_lookup("A", "g") == "A");
  CHECK(t.super_lookup("B", "g") == "B");
}

TEST_CASE("super2: lookup walks to the first defining ancestor") {
  ClassTable t = table_of(kChain);
  CHECK(t.super_lookup("B", "f") == "Object");
  CHECK(t.super_lookup("C", "f") == "Object");
  CHECK_FALSE(t.super_lookup("C", "g"));
  CHECK_FALSE(t.super_lookup("Object", "h"));
}

TEST_CASE("lyrfun2: a layer hosting the procedure is appended") {
  ClassTable t = table_of(kCube);
  CHECK(t.lyrfun("Cube", "modify", "Second_dim", {}) ==
        std::vector<std::string>{"Second_dim"});
  CHECK(t.lyrfun("Cube", "modify", "Third_dim", {"Second_dim"}) ==
        std::vector<std::string>{"Second_dim", "Third_dim"});
}

TEST_CASE("lyrfun1: a layer hosting another procedure is skipped") {
  ClassTable t = table_of(kChain);
  CHECK(t.lyrfun("B", "g", "M", {}).empty());
  CHECK(t.lyrfun("A", "f", "L", {"x"}) == std::vector<std::string>{"x"});
}

TEST_CASE("clslyrs: declaration order, restricted to the active layers") {
  ClassTable t = table_of(kCube);
  CHECK(t.clslyrs("Cube", "modify", layers({"Second_dim"})) ==
        std::vector<std::string>{"Second_dim"});
  CHECK(t.clslyrs("Cube", "modify", layers({})).empty());
  CHECK(t.clslyrs("Cube", "modify", layers({"Third_dim", "Second_dim"})) ==
        std::vector<std::string>{"Second_dim", "Third_dim"});
  CHECK(t.clslyrs("Cube", "resize", layers({"Second_dim"})).empty());
  // Layers of other classes do not count.
  CHECK(table_of(kChain).clslyrs("B", "g", layers({"L", "M"})).empty());
}

// Random hierarchy of up to six classes, built directly as an AST.
struct RandomHierarchy {
  Program program;
  std::map<std::string, std::optional<std::string>> parent;
  std::map<std::string, std::set<std::string>> fields, funs;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      layer_funs;
};

RandomHierarchy random_hierarchy(std::mt19937_64& rng) {
  RandomHierarchy h;
  std::size_t n = 1 + rng() % 6;
  int field_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ClassDecl c;
    c.name = "K" + std::to_string(i);
    if (i > 0 && rng() % 3) c.parent = "K" + std::to_string(rng() % i);
    h.parent[c.name] = c.parent;
    for (std::size_t k = rng() % 3; k > 0; --k) {
      std::string f = "v" + std::to_string(field_id++);
      c.fields.push_back(VarDecl{f, Type::Int(), {}});
      h.fields[c.name].insert(f);
    }
    for (const char* f : {"f", "g", "h"}) {
      if (rng() % 2) {
        FunDecl d;
        d.name = f;
        d.param = "p";
        d.ret = make_local("p");
        c.funs.push_back(d);
        h.funs[c.name].insert(f);
      }
    }
    for (const char* l : {"L0", "L1", "L2"}) {
      if (rng() % 2) {
        LayerDecl ld;
        ld.name = l;
        ld.fun.name = rng() % 2 ? "f" : "g";
        ld.fun.param = "p";
        ld.fun.ret = make_local("p");
        h.layer_funs[c.name].emplace_back(l, ld.fun.name);
        c.layers.push_back(ld);
      }
    }
    h.program.classes.push_back(c);
  }
  return h;
}

std::vector<std::string> ancestors(const RandomHierarchy& h, std::string c) {
  std::vector<std::string> out = {c};
  while (auto p = h.parent.at(c)) {
    out.push_back(*p);
    c = *p;
  }
  return out;
}

TEST_CASE("lookups agree with a scan of the ancestor chain") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    RandomHierarchy h = random_hierarchy(rng);
    ClassTable t = ClassTable::build(h.program);
    for (const auto& [c, _] : h.parent) {
      std::vector<std::string> chain = ancestors(h, c);
      for (const auto& [d, __] : h.parent) {
        bool below = std::find(chain.begin(), chain.end(), d) != chain.end();
        CHECK(t.is_subclass(c, d) == below);
      }
      for (int id = 0; id < 20; ++id) {
        std::string v = "v" + std::to_string(id);
        std::optional<std::string> expect;
        for (const std::string& a : chain) {
          if (h.fields[a].count(v)) {
            expect = a;
            break;
          }
        }
        CHECK(t.class_of_var(c, v) == expect);
      }
      for (const char* f : {"f", "g", "h"}) {
        std::optional<std::string> expect;
        for (const std::string& a : chain) {
          if (h.funs[a].count(f)) {
            expect = a;
            break;
          }
        }
        CHECK(t.super_lookup(c, f) == expect);

        ActiveLayers active;
        for (const char* l : {"L0", "L1", "L2"}) {
          if (rng() % 2) active.activate(l);
        }
        std::vector<std::string> expect_layers;
        for (const auto& [l, hosted] : h.layer_funs[c]) {
          if (hosted == f && active.contains(l)) expect_layers.push_back(l);
        }
        std::vector<std::string> got = t.clslyrs(c, f, active);
        CHECK(got == expect_layers);
        for (const std::string& l : got) CHECK(active.contains(l));
      }
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace jcop
