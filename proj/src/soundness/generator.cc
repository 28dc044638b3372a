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

#include "jcop/soundness/generator.h"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace jcop {

namespace {

constexpr const char* kCounterClass = "Ctr";
constexpr const char* kCounterField = "n";
constexpr std::int64_t kIntRange = 1000;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(int percent) { return below(100) < static_cast<std::size_t>(percent); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// int, or ref to a class.
struct GType {
  bool is_int = true;
  std::string cls;

  Type decl() const { return is_int ? Type::Int() : Type::Class(cls); }
};

GType int_type() { return GType{}; }
GType ref_type(std::string cls) { return GType{false, std::move(cls)}; }

struct Field {
  std::string name;
  GType type;
};

struct ClassPlan {
  std::string name;
  std::optional<std::string> parent;
  std::vector<Field> fields;
  std::vector<std::size_t> funs;
  // Layer name and the index of the procedure it hosts.
  std::vector<std::pair<std::string, std::size_t>> layers;
};

struct Signature {
  std::string name;
  std::string param;
  GType param_type;
  GType result;
};

// A local or `this` holding a fully initialized object.
struct Root {
  std::string name;
  std::string cls;
};

struct Body {
  // Prefix of every local name; empty for `main`.
  std::string prefix;
  std::optional<std::string> cls;
  // Procedures m_j with j < rank may be called.
  std::size_t rank = 0;
  std::optional<std::string> param;
  GType param_type;
  std::vector<std::pair<std::string, GType>> declared;
  std::set<std::string> assigned;
  // Objects finished while an enclosing one is still being built; they may
  // point at it, so they become roots only once it is complete.
  std::vector<std::string> deferred;
  bool this_ok = false;
  bool calls_ok = false;
  bool called = false;
};

// Objects allocated but not yet fully initialized; usable only as values.
using Pending = std::vector<Root>;

class Generator {
 public:
  Generator(std::uint64_t seed, int budget) : rng_(seed), budget_(budget) {}

  Program run() {
    Program p;
    if (budget_ <= 1) return p;
    plan_classes();
    for (const ClassPlan& c : classes_) p.classes.push_back(emit_class(c));
    ClassDecl ctr;
    ctr.name = kCounterClass;
    ctr.fields.push_back(VarDecl{kCounterField, Type::Int(), {}});
    p.classes.push_back(std::move(ctr));
    emit_main(p);
    return p;
  }

 private:
  // ---- Class hierarchy ----

  void plan_classes() {
    std::size_t n_classes = 1 + rng_.below(4);
    for (std::size_t i = 0; i < n_classes; ++i) {
      ClassPlan c;
      c.name = "A" + std::to_string(i);
      if (i > 0 && rng_.chance(60)) c.parent = "A" + std::to_string(rng_.below(i));
      classes_.push_back(std::move(c));
    }
    std::size_t field_id = 0;
    for (ClassPlan& c : classes_) {
      std::size_t n_fields = rng_.below(4);
      for (std::size_t k = 0; k < n_fields; ++k) {
        GType t = rng_.chance(65) ? int_type() : ref_type(random_class());
        c.fields.push_back(Field{"x" + std::to_string(field_id++), t});
      }
    }
    std::size_t n_funs = 1 + rng_.below(4);
    for (std::size_t k = 0; k < n_funs; ++k) {
      Signature s;
      s.name = "m" + std::to_string(k);
      s.param = s.name + "_p";
      s.param_type = rng_.chance(60) ? int_type() : ref_type(random_class());
      s.result = rng_.chance(60) ? int_type() : ref_type(random_class());
      sigs_.push_back(std::move(s));
    }
    for (ClassPlan& c : classes_) {
      for (std::size_t k = 0; k < n_funs; ++k) {
        if (rng_.chance(45)) c.funs.push_back(k);
      }
      std::vector<std::string> pool = {"L0", "L1", "L2"};
      std::size_t n_layers = rng_.below(3);
      for (std::size_t k = 0; k < n_layers; ++k) {
        std::size_t at = rng_.below(pool.size());
        c.layers.emplace_back(pool[at], rng_.below(n_funs));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
      }
    }
    for (const ClassPlan& c : classes_) {
      for (const auto& l : c.layers) layer_names_.insert(l.first);
    }
  }

  std::string random_class() {
    return "A" + std::to_string(rng_.below(classes_.size()));
  }

  const ClassPlan* plan(const std::string& name) const {
    for (const ClassPlan& c : classes_) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  bool is_sub(const std::string& sub, const std::string& super) const {
    for (std::optional<std::string> c = sub; c; c = plan(*c)->parent) {
      if (*c == super) return true;
    }
    return false;
  }

  // Class followed by its ancestors.
  std::vector<std::string> chain(const std::string& cls) const {
    std::vector<std::string> out;
    for (std::optional<std::string> c = cls; c; c = plan(*c)->parent) {
      out.push_back(*c);
    }
    return out;
  }

  // Fields of the class and its ancestors, ancestors first.
  std::vector<Field> all_fields(const std::string& cls) const {
    std::vector<std::string> ch = chain(cls);
    std::vector<Field> out;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
      for (const Field& f : plan(*it)->fields) out.push_back(f);
    }
    return out;
  }

  bool defines(const std::string& cls, std::size_t fun) const {
    for (const std::string& c : chain(cls)) {
      const std::vector<std::size_t>& fs = plan(c)->funs;
      if (std::find(fs.begin(), fs.end(), fun) != fs.end()) return true;
    }
    return false;
  }

  bool has_layer_variant(const std::string& cls, std::size_t fun) const {
    for (const ClassPlan& d : classes_) {
      if (!is_sub(d.name, cls)) continue;
      for (const auto& l : d.layers) {
        if (l.second == fun) return true;
      }
    }
    return false;
  }

  // ---- Names ----

  std::string declare(Body& b, const std::string& name, GType t) {
    for (const auto& d : b.declared) {
      if (d.first == name) return name;
    }
    b.declared.emplace_back(name, t);
    return name;
  }

  std::string int_local(Body& b) {
    return declare(b, b.prefix + "i" + std::to_string(rng_.below(3)), int_type());
  }

  std::string ref_local(Body& b, const std::string& cls, std::size_t k) {
    return declare(b, b.prefix + "r" + cls + "_" + std::to_string(k),
                   ref_type(cls));
  }

  // ---- Expressions ----

  std::vector<Root> roots(const Body& b) const {
    std::vector<Root> out;
    for (const auto& [name, t] : b.declared) {
      if (!t.is_int && t.cls != kCounterClass && b.assigned.count(name)) {
        out.push_back(Root{name, t.cls});
      }
    }
    if (b.param && !b.param_type.is_int) {
      out.push_back(Root{*b.param, b.param_type.cls});
    }
    if (b.this_ok && b.cls) out.push_back(Root{kThis, *b.cls});
    return out;
  }

  static ExprPtr root_expr(const Root& r) {
    return r.name == kThis ? make_this() : make_local(r.name);
  }

  // An initialized object and its static class; may follow one ref field.
  std::optional<std::pair<ExprPtr, std::string>> object(const Body& b,
                                                        int depth) {
    std::vector<Root> rs = roots(b);
    if (rs.empty()) return std::nullopt;
    const Root& r = rng_.pick(rs);
    ExprPtr e = root_expr(r);
    std::string cls = r.cls;
    if (depth > 0 && rng_.chance(30)) {
      std::vector<Field> refs;
      for (const Field& f : all_fields(cls)) {
        if (!f.type.is_int) refs.push_back(f);
      }
      if (!refs.empty()) {
        const Field& f = rng_.pick(refs);
        e = make_field(e, f.name);
        cls = f.type.cls;
      }
    }
    return std::make_pair(e, cls);
  }

  ExprPtr literal() {
    std::int64_t v = static_cast<std::int64_t>(rng_.below(10));
    if (rng_.chance(10)) v = -v - 1;
    return make_int(v);
  }

  ExprPtr gen_int(const Body& b, int depth) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      switch (rng_.below(depth > 0 ? 7 : 4)) {
        case 0:
          return literal();
        case 1: {
          std::vector<std::string> ints;
          for (const auto& [name, t] : b.declared) {
            if (t.is_int && b.assigned.count(name)) ints.push_back(name);
          }
          if (b.param && b.param_type.is_int) ints.push_back(*b.param);
          if (ints.empty()) continue;
          return make_local(rng_.pick(ints));
        }
        case 2:
        case 3: {
          auto obj = object(b, depth);
          if (!obj) continue;
          std::vector<Field> ints;
          for (const Field& f : all_fields(obj->second)) {
            if (f.type.is_int) ints.push_back(f);
          }
          if (ints.empty()) continue;
          return make_field(obj->first, rng_.pick(ints).name);
        }
        case 4: {
          ArithOp op = rng_.chance(50) ? ArithOp::kAdd : ArithOp::kSub;
          return make_arith(gen_int(b, depth - 1), op, gen_int(b, depth - 1));
        }
        case 5: {
          static constexpr ArithOp kOps[] = {ArithOp::kMul, ArithOp::kDiv,
                                             ArithOp::kMod};
          ArithOp op = kOps[rng_.below(3)];
          return make_arith(gen_int(b, depth - 1), op,
                            make_int(1 + static_cast<std::int64_t>(rng_.below(9))));
        }
        case 6:
          return make_cast(random_class(), gen_int(b, depth - 1));
      }
    }
    return literal();
  }

  // Keeps stored integers within (-1000, 1000).
  static ExprPtr bounded(ExprPtr e) {
    bool leaf = std::holds_alternative<IntLit>(e->node) ||
                std::holds_alternative<LocalExpr>(e->node) ||
                std::holds_alternative<FieldExpr>(e->node);
    if (leaf) return e;
    return make_arith(std::move(e), ArithOp::kMod, make_int(kIntRange));
  }

  // An expression of type ref D with D ≤ `cls`.
  // With `exact`, the static type is ref `cls` itself.
  std::optional<ExprPtr> gen_ref(const Body& b, const std::string& cls,
                                 const Pending& pending = {},
                                 bool exact = false) {
    std::vector<std::pair<ExprPtr, std::string>> candidates;
    for (const Root& r : roots(b)) {
      ExprPtr e = root_expr(r);
      if (is_sub(r.cls, cls)) candidates.emplace_back(e, r.cls);
      for (const Field& f : all_fields(r.cls)) {
        if (!f.type.is_int && is_sub(f.type.cls, cls)) {
          candidates.emplace_back(make_field(e, f.name), f.type.cls);
        }
      }
    }
    for (const Root& r : pending) {
      if (is_sub(r.cls, cls)) candidates.emplace_back(make_local(r.name), r.cls);
    }
    if (candidates.empty()) return std::nullopt;
    auto [e, actual] = rng_.pick(candidates);
    if (actual != cls && exact) {
      e = make_cast(cls, e);
    } else if (actual != cls && rng_.chance(40)) {
      std::vector<std::string> ups;
      for (const std::string& c : chain(actual)) {
        if (is_sub(c, cls)) ups.push_back(c);
      }
      e = make_cast(rng_.pick(ups), e);
    }
    return e;
  }

  ExprPtr gen_value(Body& b, const GType& t, std::vector<StmtPtr>& out,
                    Pending& pending, bool exact = false) {
    if (t.is_int) return bounded(gen_int(b, 2));
    if (auto e = gen_ref(b, t.cls, pending, exact)) return *e;
    return make_object(b, t.cls, out, pending);
  }

  BExprPtr gen_bexpr(const Body& b, int depth) {
    std::size_t k = rng_.below(depth > 0 ? 10 : 8);
    if (k == 0) return make_bool(rng_.chance(50));
    if (k < 8) {
      static constexpr CompareOp kOps[] = {CompareOp::kLt, CompareOp::kLe,
                                           CompareOp::kGt, CompareOp::kGe,
                                           CompareOp::kEq, CompareOp::kNe};
      return make_compare(gen_int(b, 1), kOps[rng_.below(6)], gen_int(b, 1));
    }
    BoolOp op = rng_.chance(50) ? BoolOp::kAnd : BoolOp::kOr;
    return make_bool_bin(gen_bexpr(b, depth - 1), op, gen_bexpr(b, depth - 1));
  }

  // ---- Statements ----

  // `o := new C` followed by a write to every field of the new object.
  ExprPtr make_object(Body& b, const std::string& cls,
                      std::vector<StmtPtr>& out, Pending& pending) {
    std::string name;
    for (std::size_t k = 0;; ++k) {
      name = ref_local(b, cls, k);
      bool busy = std::any_of(pending.begin(), pending.end(),
                              [&](const Root& r) { return r.name == name; });
      if (!busy && (k > 0 || rng_.chance(70))) break;
    }
    b.assigned.erase(name);
    out.push_back(make_stmt(NewStmt{name, cls}));
    pending.push_back(Root{name, cls});
    for (const Field& f : all_fields(cls)) {
      ExprPtr value = gen_value(b, f.type, out, pending);
      out.push_back(make_stmt(FieldAssign{make_local(name), f.name, value}));
    }
    pending.pop_back();
    b.deferred.push_back(name);
    if (pending.empty()) {
      b.assigned.insert(b.deferred.begin(), b.deferred.end());
      b.deferred.clear();
    }
    return make_local(name);
  }

  bool gen_field_assign(Body& b, std::vector<StmtPtr>& out) {
    auto obj = object(b, 1);
    if (!obj) return false;
    std::vector<Field> fields = all_fields(obj->second);
    if (fields.empty()) return false;
    const Field& f = rng_.pick(fields);
    Pending pending;
    ExprPtr value = gen_value(b, f.type, out, pending);
    out.push_back(make_stmt(FieldAssign{obj->first, f.name, value}));
    return true;
  }

  bool gen_new(Body& b, std::vector<StmtPtr>& out) {
    Pending pending;
    make_object(b, random_class(), out, pending);
    return true;
  }

  // Local able to hold a result of type `t`.
  std::string result_target(Body& b, const GType& t) {
    if (t.is_int) return int_local(b);
    std::vector<std::string> ups = chain(t.cls);
    return ref_local(b, rng_.pick(ups), rng_.below(2));
  }

  bool gen_call(Body& b, std::vector<StmtPtr>& out) {
    std::vector<std::pair<Root, std::size_t>> options;
    for (const Root& r : roots(b)) {
      for (std::size_t j = 0; j < b.rank; ++j) {
        if (defines(r.cls, j)) options.emplace_back(r, j);
      }
    }
    if (options.empty()) return false;
    auto [recv, j] = rng_.pick(options);
    const Signature& s = sigs_[j];
    Pending pending;
    ExprPtr arg = gen_value(b, s.param_type, out, pending);
    std::string target = result_target(b, s.result);
    out.push_back(make_stmt(CallStmt{target, recv.name, s.name, arg}));
    b.assigned.insert(target);
    b.called = true;
    b.this_ok = false;
    return true;
  }

  LayerExpr gen_layer_expr() {
    LayerExpr le;
    if (layer_names_.empty()) return le;
    std::vector<std::string> names(layer_names_.begin(), layer_names_.end());
    std::size_t n = rng_.below(3);
    for (std::size_t k = 0; k < n; ++k) {
      const std::string& l = rng_.pick(names);
      if (rng_.chance(25)) le.push_back(LayerOp{LayerOp::Kind::kWithout, l});
      le.push_back(LayerOp{LayerOp::Kind::kWith, l});
    }
    return le;
  }

  // Layered call or proceed. Neither may mention `this`: later variants in
  // the chain see whatever `this` the previous variant left behind.
  bool gen_chain_call(Body& b, std::vector<StmtPtr>& out, bool proceed) {
    bool saved_this = b.this_ok;
    b.this_ok = false;
    std::vector<std::pair<Root, std::size_t>> options;
    for (const Root& r : roots(b)) {
      for (std::size_t j = 0; j < b.rank; ++j) {
        if (has_layer_variant(r.cls, j)) options.emplace_back(r, j);
      }
    }
    if (options.empty()) {
      b.this_ok = saved_this;
      return false;
    }
    auto [recv, j] = rng_.pick(options);
    const Signature& s = sigs_[j];
    Pending pending;
    ExprPtr arg = gen_value(b, s.param_type, out, pending);
    std::string target = result_target(b, s.result);
    if (target == recv.name) target = result_target(b, s.result);
    if (target == recv.name) {
      b.this_ok = saved_this;
      return false;
    }
    if (proceed) {
      out.push_back(make_stmt(ProceedCall{target, recv.name, s.name, arg}));
    } else {
      out.push_back(make_stmt(
          LayeredCall{target, gen_layer_expr(), recv.name, s.name, arg}));
    }
    b.called = true;
    b.this_ok = false;
    return true;
  }

  bool gen_super(Body& b, std::vector<StmtPtr>& out) {
    if (!b.cls) return false;
    std::optional<std::string> parent = plan(*b.cls)->parent;
    if (!parent) return false;
    std::vector<std::size_t> options;
    for (std::size_t j = 0; j < b.rank; ++j) {
      if (defines(*parent, j)) options.push_back(j);
    }
    if (options.empty()) return false;
    const Signature& s = sigs_[rng_.pick(options)];
    Pending pending;
    ExprPtr arg = gen_value(b, s.param_type, out, pending);
    std::string target = result_target(b, s.result);
    out.push_back(make_stmt(SuperCall{target, s.name, arg}));
    b.assigned.insert(target);
    b.called = true;
    b.this_ok = false;
    return true;
  }

  StmtPtr gen_block(Body& b, std::size_t n, int nest) {
    std::vector<StmtPtr> out;
    for (std::size_t k = 0; k < n; ++k) gen_stmt(b, out, nest);
    return make_seq(out);
  }

  bool gen_if(Body& b, std::vector<StmtPtr>& out, int nest) {
    BExprPtr cond = gen_bexpr(b, 1);
    std::set<std::string> before = b.assigned;
    bool this_before = b.this_ok;
    StmtPtr then_branch = gen_block(b, rng_.below(3), nest + 1);
    std::set<std::string> after_then = b.assigned;
    bool this_after_then = b.this_ok;
    b.assigned = before;
    b.this_ok = this_before;
    StmtPtr else_branch = gen_block(b, rng_.below(3), nest + 1);
    b.this_ok = b.this_ok && this_after_then;
    std::set<std::string> merged;
    std::set_intersection(after_then.begin(), after_then.end(),
                          b.assigned.begin(), b.assigned.end(),
                          std::inserter(merged, merged.begin()));
    b.assigned = merged;
    out.push_back(make_stmt(IfStmt{cond, then_branch, else_branch}));
    return true;
  }

  bool gen_while(Body& b, std::vector<StmtPtr>& out, int nest) {
    std::string counter = declare(b, b.prefix + "c" + std::to_string(nest),
                                  ref_type(kCounterClass));
    out.push_back(make_stmt(NewStmt{counter, kCounterClass}));
    out.push_back(make_stmt(
        FieldAssign{make_local(counter), kCounterField, make_int(0)}));
    ExprPtr count = make_field(make_local(counter), kCounterField);
    std::int64_t bound = static_cast<std::int64_t>(rng_.below(4));
    std::set<std::string> before = b.assigned;
    // A later iteration runs after the calls of an earlier one, so a body
    // either calls or uses `this`.
    bool calls_before = b.calls_ok;
    bool this_before = b.this_ok;
    if (b.calls_ok && b.this_ok) {
      if (rng_.chance(50)) {
        b.calls_ok = false;
      } else {
        b.this_ok = false;
      }
    }
    std::vector<StmtPtr> body;
    std::size_t n = 1 + rng_.below(2);
    for (std::size_t k = 0; k < n; ++k) gen_stmt(b, body, nest + 1);
    b.calls_ok = calls_before;
    b.this_ok = this_before && !b.called;
    body.push_back(make_stmt(FieldAssign{
        make_local(counter), kCounterField,
        make_arith(count, ArithOp::kAdd, make_int(1))}));
    b.assigned = before;
    out.push_back(make_stmt(WhileStmt{
        make_compare(count, CompareOp::kLt, make_int(bound)), make_seq(body)}));
    return true;
  }

  void gen_stmt(Body& b, std::vector<StmtPtr>& out, int nest) {
    for (int attempt = 0; attempt < 10; ++attempt) {
      std::size_t k = rng_.below(13);
      bool done = false;
      if (k < 3) {
        done = gen_field_assign(b, out);
      } else if (k < 4) {
        done = gen_new(b, out);
      } else if (k < 7) {
        done = b.calls_ok && gen_call(b, out);
      } else if (k < 9) {
        done = b.calls_ok && gen_chain_call(b, out, /*proceed=*/false);
      } else if (k < 10) {
        done = b.calls_ok && gen_chain_call(b, out, /*proceed=*/true);
      } else if (k < 11) {
        done = nest < 2 && gen_if(b, out, nest);
      } else {
        done = nest < 2 && gen_while(b, out, nest);
      }
      if (done) return;
    }
  }

  // ---- Declarations ----

  static std::vector<VarDecl> decls(const Body& b) {
    std::vector<VarDecl> out;
    for (const auto& [name, t] : b.declared) {
      out.push_back(VarDecl{name, t.decl(), {}});
    }
    return out;
  }

  FunDecl emit_fun(const std::string& cls, std::size_t index) {
    const Signature& s = sigs_[index];
    Body b;
    b.prefix = s.name + "_";
    b.cls = cls;
    b.rank = index;
    b.param = s.param;
    b.param_type = s.param_type;
    std::vector<StmtPtr> out;

    // Statements that may use `this`, then at most one call that may still
    // use it, then calls without it.
    b.this_ok = true;
    b.calls_ok = false;
    std::size_t n = rng_.below(3);
    for (std::size_t k = 0; k < n; ++k) gen_stmt(b, out, 0);
    if (b.rank > 0 && rng_.chance(60)) {
      b.calls_ok = true;
      std::size_t k = rng_.below(4);
      bool done = false;
      if (k == 0) done = gen_super(b, out);
      if (!done && k == 1) done = gen_chain_call(b, out, false);
      if (!done && k == 2) done = gen_chain_call(b, out, true);
      if (!done) gen_call(b, out);
    }
    b.this_ok = !b.called;
    b.calls_ok = b.rank > 0;
    n = rng_.below(3);
    for (std::size_t k = 0; k < n; ++k) gen_stmt(b, out, 0);
    b.this_ok = !b.called;

    Pending pending;
    // Every definition of a name returns exactly the same type.
    ExprPtr ret = gen_value(b, s.result, out, pending, /*exact=*/true);

    FunDecl f;
    f.name = s.name;
    f.param = s.param;
    f.param_type = s.param_type.decl();
    f.locals = decls(b);
    f.body = make_seq(out);
    f.ret = ret;
    return f;
  }

  ClassDecl emit_class(const ClassPlan& c) {
    ClassDecl d;
    d.name = c.name;
    d.parent = c.parent;
    for (const Field& f : c.fields) {
      d.fields.push_back(VarDecl{f.name, f.type.decl(), {}});
    }
    for (std::size_t k : c.funs) d.funs.push_back(emit_fun(c.name, k));
    for (const auto& [layer, k] : c.layers) {
      d.layers.push_back(LayerDecl{layer, emit_fun(c.name, k), {}});
    }
    return d;
  }

  void emit_main(Program& p) {
    Body b;
    b.rank = sigs_.size();
    b.calls_ok = true;
    std::vector<StmtPtr> out;
    // One object per class, allocated first so that every reference field
    // can point at one of them.
    for (const ClassPlan& c : classes_) {
      out.push_back(make_stmt(NewStmt{ref_local(b, c.name, 0), c.name}));
    }
    for (const ClassPlan& c : classes_) {
      std::string name = c.name;
      for (const Field& f : all_fields(c.name)) {
        ExprPtr value;
        if (f.type.is_int) {
          value = literal();
        } else {
          std::vector<std::string> fits;
          for (const ClassPlan& d : classes_) {
            if (is_sub(d.name, f.type.cls)) fits.push_back(d.name);
          }
          value = make_local("r" + rng_.pick(fits) + "_0");
        }
        out.push_back(make_stmt(
            FieldAssign{make_local("r" + name + "_0"), f.name, value}));
      }
    }
    for (const ClassPlan& c : classes_) b.assigned.insert("r" + c.name + "_0");
    for (int k = 0; k < budget_; ++k) gen_stmt(b, out, 0);
    p.main_locals = decls(b);
    p.main_body = make_seq(out);
  }

  Rng rng_;
  int budget_;
  std::vector<ClassPlan> classes_;
  std::vector<Signature> sigs_;
  std::set<std::string> layer_names_;
};

// ---- Mutation ----

struct MutationSite {
  MutationKind kind;
  std::size_t index;
};

class Mutator {
 public:
  Mutator(const Program& p, MutationKind kind, std::size_t target)
      : program_(p), kind_(kind), target_(target) {}

  // Number of sites of `kind` in `stmt`.
  std::size_t count(const StmtPtr& stmt) {
    counting_ = true;
    seen_ = 0;
    rewrite(stmt);
    return seen_;
  }

  StmtPtr apply(const StmtPtr& stmt) {
    counting_ = false;
    seen_ = 0;
    return rewrite(stmt);
  }

 private:
  bool hit() { return seen_++ == target_ && !counting_; }

  std::optional<std::string> strict_subclass(const std::string& cls) const {
    for (const ClassDecl& c : program_.classes) {
      if (c.parent && *c.parent == cls) return c.name;
    }
    return std::nullopt;
  }

  std::optional<std::string> local_class(const std::string& name) const {
    for (const VarDecl& v : program_.main_locals) {
      if (v.name == name && v.type.kind() == Type::Kind::kClass) {
        return v.type.class_name();
      }
    }
    return std::nullopt;
  }

  StmtPtr rewrite(const StmtPtr& stmt) {
    if (!stmt) return stmt;
    if (const auto* x = std::get_if<CallStmt>(&stmt->node)) {
      if (kind_ == MutationKind::kUnknownProcedure && hit()) {
        CallStmt c = *x;
        c.fun = "undefined_proc";
        return make_stmt(c, stmt->span);
      }
    } else if (const auto* x = std::get_if<FieldAssign>(&stmt->node)) {
      if (kind_ == MutationKind::kUnknownField && hit()) {
        FieldAssign f = *x;
        f.field = "undefined_field";
        return make_stmt(f, stmt->span);
      }
      if (kind_ == MutationKind::kDowncast) {
        const auto* local = std::get_if<LocalExpr>(&x->object->node);
        std::optional<std::string> cls =
            local ? local_class(local->name) : std::nullopt;
        std::optional<std::string> sub = cls ? strict_subclass(*cls) : std::nullopt;
        if (sub && hit()) {
          FieldAssign f = *x;
          f.object = make_cast(*sub, x->object);
          return make_stmt(f, stmt->span);
        }
      }
    } else if (const auto* x = std::get_if<SeqStmt>(&stmt->node)) {
      StmtPtr a = rewrite(x->first);
      StmtPtr b = rewrite(x->second);
      return make_stmt(SeqStmt{a, b}, stmt->span);
    } else if (const auto* x = std::get_if<IfStmt>(&stmt->node)) {
      StmtPtr t = rewrite(x->then_branch);
      StmtPtr e = rewrite(x->else_branch);
      return make_stmt(IfStmt{x->cond, t, e}, stmt->span);
    } else if (const auto* x = std::get_if<WhileStmt>(&stmt->node)) {
      return make_stmt(WhileStmt{x->cond, rewrite(x->body)}, stmt->span);
    }
    return stmt;
  }

  const Program& program_;
  MutationKind kind_;
  std::size_t target_;
  bool counting_ = true;
  std::size_t seen_ = 0;
};

}  // namespace

Program generate_program(std::uint64_t seed, int budget) {
  return Generator(seed, budget).run();
}

const char* to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::kNone: return "none";
    case MutationKind::kUnknownProcedure: return "unknown-procedure";
    case MutationKind::kUnknownField: return "unknown-field";
    case MutationKind::kDowncast: return "downcast";
  }
  return "?";
}

Mutant mutate_program(const Program& program, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MutationSite> sites;
  for (MutationKind kind : {MutationKind::kUnknownProcedure,
                            MutationKind::kUnknownField,
                            MutationKind::kDowncast}) {
    std::size_t n = Mutator(program, kind, 0).count(program.main_body);
    for (std::size_t i = 0; i < n; ++i) sites.push_back({kind, i});
  }
  if (sites.empty()) return Mutant{program, MutationKind::kNone};
  MutationSite site = rng.pick(sites);
  Mutant m{program, site.kind};
  m.program.main_body =
      Mutator(program, site.kind, site.index).apply(program.main_body);
  return m;
}

}  // namespace jcop
