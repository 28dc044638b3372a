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

#include "jcop/classtable/class_table.h"

#include <algorithm>
#include <functional>
#include <utility>

namespace jcop {

BuildError::BuildError(Kind kind, SourceSpan where, const std::string& message)
    : std::runtime_error(where.to_string() + ": " + to_string(kind) + ": " +
                         message),
      kind_(kind),
      where_(where) {}

const char* to_string(BuildError::Kind kind) {
  switch (kind) {
    case BuildError::Kind::kCycle: return "inheritance-cycle";
    case BuildError::Kind::kUnknownParent: return "unknown-parent";
    case BuildError::Kind::kDuplicateName: return "duplicate-name";
    case BuildError::Kind::kFieldShadowing: return "field-shadowing";
    case BuildError::Kind::kUnknownLayer: return "unknown-layer";
    case BuildError::Kind::kUnknownClass: return "unknown-class";
  }
  return "?";
}

ActiveLayers::ActiveLayers(std::vector<std::string> names) {
  for (std::string& n : names) {
    if (!contains(n)) names_.push_back(std::move(n));
  }
}

bool ActiveLayers::contains(const std::string& layer) const {
  return std::find(names_.begin(), names_.end(), layer) != names_.end();
}

void ActiveLayers::activate(const std::string& layer) {
  if (!contains(layer)) names_.insert(names_.begin(), layer);
}

void ActiveLayers::deactivate(const std::string& layer) {
  names_.erase(std::remove(names_.begin(), names_.end(), layer), names_.end());
}

ActiveLayers apply_layer_expr(const LayerExpr& le, ActiveLayers active) {
  for (const LayerOp& op : le) {
    if (op.kind == LayerOp::Kind::kWith) {
      active.activate(op.layer);
    } else {
      active.deactivate(op.layer);
    }
  }
  return active;
}

namespace {

// Visits every statement and expression reachable from `s`.
void walk(const StmtPtr& s, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr);

void walk_expr(const ExprPtr& e,
               const std::function<void(const Expr&)>& on_expr) {
  if (!e) return;
  on_expr(*e);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CastExpr>) {
          walk_expr(x.operand, on_expr);
        } else if constexpr (std::is_same_v<T, FieldExpr>) {
          walk_expr(x.object, on_expr);
        } else if constexpr (std::is_same_v<T, ArithExpr>) {
          walk_expr(x.lhs, on_expr);
          walk_expr(x.rhs, on_expr);
        }
      },
      e->node);
}

void walk_bexpr(const BExprPtr& b,
                const std::function<void(const Expr&)>& on_expr) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CompareExpr>) {
          walk_expr(x.lhs, on_expr);
          walk_expr(x.rhs, on_expr);
        } else if constexpr (std::is_same_v<T, BoolBinExpr>) {
          walk_bexpr(x.lhs, on_expr);
          walk_bexpr(x.rhs, on_expr);
        }
      },
      b->node);
}

void walk(const StmtPtr& s, const std::function<void(const Stmt&)>& on_stmt,
          const std::function<void(const Expr&)>& on_expr) {
  if (!s) return;
  on_stmt(*s);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FieldAssign>) {
          walk_expr(x.object, on_expr);
          walk_expr(x.value, on_expr);
        } else if constexpr (std::is_same_v<T, CallStmt> ||
                             std::is_same_v<T, LayeredCall> ||
                             std::is_same_v<T, SuperCall> ||
                             std::is_same_v<T, ProceedCall>) {
          walk_expr(x.arg, on_expr);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          walk(x.first, on_stmt, on_expr);
          walk(x.second, on_stmt, on_expr);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          walk_bexpr(x.cond, on_expr);
          walk(x.then_branch, on_stmt, on_expr);
          walk(x.else_branch, on_stmt, on_expr);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          walk_bexpr(x.cond, on_expr);
          walk(x.body, on_stmt, on_expr);
        }
      },
      s->node);
}

void check_unique_locals(const std::vector<const VarDecl*>& decls) {
  std::set<std::string> seen;
  for (const VarDecl* d : decls) {
    if (!seen.insert(d->name).second) {
      throw BuildError(BuildError::Kind::kDuplicateName, d->span,
                       "local '" + d->name + "' declared twice");
    }
  }
}

}  // namespace

ClassTable ClassTable::build(const Program& source) {
  ClassTable table;
  table.program_ = std::make_shared<const Program>(source);
  const Program& program = *table.program_;

  for (const ClassDecl& c : program.classes) {
    if (table.classes_.count(c.name)) {
      throw BuildError(BuildError::Kind::kDuplicateName, c.span,
                       "class '" + c.name + "' declared twice");
    }
    ClassInfo info;
    info.decl = &c;
    info.parent = c.parent;
    std::set<std::string> seen_fields;
    for (const VarDecl& f : c.fields) {
      if (!seen_fields.insert(f.name).second) {
        throw BuildError(BuildError::Kind::kDuplicateName, f.span,
                         "field '" + f.name + "' declared twice in " + c.name);
      }
      info.direct_fields.push_back(f.name);
    }
    for (const FunDecl& f : c.funs) {
      if (!info.funs.emplace(f.name, &f).second) {
        throw BuildError(BuildError::Kind::kDuplicateName, f.span,
                         "function '" + f.name + "' declared twice in " + c.name);
      }
    }
    for (const LayerDecl& l : c.layers) {
      if (!info.layers.emplace(l.name, &l).second) {
        throw BuildError(BuildError::Kind::kDuplicateName, l.span,
                         "layer '" + l.name + "' declared twice in " + c.name);
      }
      info.layer_order.push_back(l.name);
      table.layer_names_.insert(l.name);
    }
    table.classes_.emplace(c.name, std::move(info));
    table.order_.push_back(c.name);
  }

  for (const ClassDecl& c : program.classes) {
    if (c.parent && !table.classes_.count(*c.parent)) {
      throw BuildError(BuildError::Kind::kUnknownParent, c.span,
                       "class '" + c.name + "' inherits unknown class '" +
                           *c.parent + "'");
    }
  }
  for (const ClassDecl& c : program.classes) {
    std::set<std::string> chain{c.name};
    std::optional<std::string> cur = c.parent;
    while (cur) {
      if (!chain.insert(*cur).second) {
        throw BuildError(BuildError::Kind::kCycle, c.span,
                         "inheritance cycle through '" + c.name + "'");
      }
      cur = table.classes_.at(*cur).parent;
    }
  }

  // IVar_C = direct fields of C plus IVar of its parent; the sets along a
  // chain must be disjoint.
  for (const std::string& name : table.order_) {
    ClassInfo& info = table.classes_.at(name);
    std::vector<std::string> all;
    std::optional<std::string> cur = name;
    std::vector<std::string> chain;
    while (cur) {
      chain.push_back(*cur);
      cur = table.classes_.at(*cur).parent;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const ClassInfo& anc = table.classes_.at(*it);
      for (const std::string& f : anc.direct_fields) {
        if (std::find(all.begin(), all.end(), f) != all.end()) {
          throw BuildError(BuildError::Kind::kFieldShadowing,
                           info.decl->span,
                           "field '" + f + "' of '" + *it +
                               "' is already declared by an ancestor");
        }
        all.push_back(f);
      }
    }
    info.all_fields = std::move(all);
  }

  auto check_type = [&](const Type& t, SourceSpan span) {
    if (t.kind() == Type::Kind::kClass && !table.has_class(t.class_name())) {
      throw BuildError(BuildError::Kind::kUnknownClass, span,
                       "unknown class '" + t.class_name() + "'");
    }
  };
  auto check_body = [&](const StmtPtr& body, const ExprPtr& ret) {
    auto on_expr = [&](const Expr& e) {
      if (const auto* cast = std::get_if<CastExpr>(&e.node)) {
        if (!table.has_class(cast->class_name)) {
          throw BuildError(BuildError::Kind::kUnknownClass, e.span,
                           "cast to unknown class '" + cast->class_name + "'");
        }
      }
    };
    auto on_stmt = [&](const Stmt& s) {
      if (const auto* n = std::get_if<NewStmt>(&s.node)) {
        if (!table.has_class(n->class_name)) {
          throw BuildError(BuildError::Kind::kUnknownClass, s.span,
                           "new of unknown class '" + n->class_name + "'");
        }
      } else if (const auto* lc = std::get_if<LayeredCall>(&s.node)) {
        for (const LayerOp& op : lc->layers) {
          if (!table.layer_names_.count(op.layer)) {
            throw BuildError(BuildError::Kind::kUnknownLayer, s.span,
                             "unknown layer '" + op.layer + "'");
          }
        }
      }
    };
    walk(body, on_stmt, on_expr);
    walk_expr(ret, on_expr);
  };
  auto check_fun = [&](const FunDecl& f) {
    check_type(f.param_type, f.span);
    std::vector<const VarDecl*> names;
    VarDecl param{f.param, f.param_type, f.span};
    names.push_back(&param);
    for (const VarDecl& d : f.locals) {
      check_type(d.type, d.span);
      names.push_back(&d);
    }
    check_unique_locals(names);
    check_body(f.body, f.ret);
  };

  for (const ClassDecl& c : program.classes) {
    for (const VarDecl& f : c.fields) check_type(f.type, f.span);
    for (const FunDecl& f : c.funs) check_fun(f);
    for (const LayerDecl& l : c.layers) check_fun(l.fun);
  }
  std::vector<const VarDecl*> main_names;
  for (const VarDecl& d : program.main_locals) {
    check_type(d.type, d.span);
    main_names.push_back(&d);
  }
  check_unique_locals(main_names);
  check_body(program.main_body, nullptr);
  return table;
}

bool ClassTable::has_class(const std::string& name) const {
  return classes_.count(name) != 0;
}

const ClassTable::ClassInfo& ClassTable::info(const std::string& name) const {
  return classes_.at(name);
}

std::optional<std::string> ClassTable::parent(const std::string& name) const {
  auto it = classes_.find(name);
  if (it == classes_.end()) return std::nullopt;
  return it->second.parent;
}

bool ClassTable::is_subclass(const std::string& sub,
                             const std::string& super) const {
  std::optional<std::string> cur = sub;
  while (cur) {
    if (*cur == super) return true;
    cur = parent(*cur);
  }
  return false;
}

bool ClassTable::subtype(const Type& a, const Type& b) const {
  if (a.kind() == Type::Kind::kClass && b.kind() == Type::Kind::kClass) {
    return is_subclass(a.class_name(), b.class_name());
  }
  return a == b;
}

std::optional<std::string> ClassTable::class_of_var(
    const std::string& cls, const std::string& field) const {
  std::optional<std::string> cur = cls;
  while (cur) {
    auto it = classes_.find(*cur);
    if (it == classes_.end()) return std::nullopt;
    const auto& direct = it->second.direct_fields;
    if (std::find(direct.begin(), direct.end(), field) != direct.end()) {
      return cur;
    }
    cur = it->second.parent;
  }
  return std::nullopt;
}

std::optional<std::string> ClassTable::super_lookup(
    const std::string& cls, const std::string& fun) const {
  std::optional<std::string> cur = cls;
  while (cur) {
    auto it = classes_.find(*cur);
    if (it == classes_.end()) return std::nullopt;
    if (it->second.funs.count(fun)) return cur;
    cur = it->second.parent;
  }
  return std::nullopt;
}

std::vector<std::string> ClassTable::lyrfun(const std::string& cls,
                                            const std::string& fun,
                                            const std::string& layer,
                                            std::vector<std::string> acc) const {
  const LayerDecl* l = this->layer(cls, layer);
  if (l && l->fun.name == fun) acc.push_back(layer);
  return acc;
}

std::vector<std::string> ClassTable::clslyrs(const std::string& cls,
                                             const std::string& fun,
                                             const ActiveLayers& active) const {
  std::vector<std::string> hosting;
  for (const std::string& l : info(cls).layer_order) {
    hosting = lyrfun(cls, fun, l, std::move(hosting));
  }
  // L' = L_{k+1} ∩ L, keeping the declaration order of the left operand.
  std::vector<std::string> out;
  for (const std::string& l : hosting) {
    if (active.contains(l)) out.push_back(l);
  }
  return out;
}

const FunDecl* ClassTable::fun(const std::string& cls,
                               const std::string& name) const {
  auto it = classes_.find(cls);
  if (it == classes_.end()) return nullptr;
  auto f = it->second.funs.find(name);
  return f == it->second.funs.end() ? nullptr : f->second;
}

const LayerDecl* ClassTable::layer(const std::string& cls,
                                   const std::string& name) const {
  auto it = classes_.find(cls);
  if (it == classes_.end()) return nullptr;
  auto l = it->second.layers.find(name);
  return l == it->second.layers.end() ? nullptr : l->second;
}

}  // namespace jcop
