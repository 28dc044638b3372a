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

#ifndef JCOP_CLASSTABLE_CLASS_TABLE_H_
#define JCOP_CLASSTABLE_CLASS_TABLE_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "jcop/syntax/ast.h"

namespace jcop {

class BuildError : public std::runtime_error {
 public:
  enum class Kind {
    kCycle,
    kUnknownParent,
    kDuplicateName,
    kFieldShadowing,
    kUnknownLayer,
    kUnknownClass,
  };

  BuildError(Kind kind, SourceSpan where, const std::string& message);

  Kind kind() const { return kind_; }
  SourceSpan where() const { return where_; }

 private:
  Kind kind_;
  SourceSpan where_;
};

const char* to_string(BuildError::Kind kind);

// Ordered, duplicate-free list of active layer names; the most recently
// activated layer sits at the head.
class ActiveLayers {
 public:
  ActiveLayers() = default;
  explicit ActiveLayers(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  bool contains(const std::string& layer) const;
  bool empty() const { return names_.empty(); }
  size_t size() const { return names_.size(); }

  // Prepends `layer` unless already present.
  void activate(const std::string& layer);
  void deactivate(const std::string& layer);

  friend bool operator==(const ActiveLayers&, const ActiveLayers&) = default;

 private:
  std::vector<std::string> names_;
};

// layer(le, Ls): folds the steps of `le` over `active` left to right.
ActiveLayers apply_layer_expr(const LayerExpr& le, ActiveLayers active);

// Static view of a program: inheritance, fields, procedures and layers of
// every class. Immutable once built.
class ClassTable {
 public:
  struct ClassInfo {
    const ClassDecl* decl = nullptr;
    std::optional<std::string> parent;
    // Directly declared fields, in declaration order.
    std::vector<std::string> direct_fields;
    // Fields of the class and all its ancestors (IVar_C).
    std::vector<std::string> all_fields;
    // F_C: directly declared procedures.
    std::map<std::string, const FunDecl*> funs;
    // L_C: layer name to the procedure it hosts.
    std::map<std::string, const LayerDecl*> layers;
    // dom(L_C) in declaration order.
    std::vector<std::string> layer_order;
  };

  // Throws BuildError.
  static ClassTable build(const Program& program);

  const Program& program() const { return *program_; }

  bool has_class(const std::string& name) const;
  const ClassInfo& info(const std::string& name) const;
  const std::vector<std::string>& class_names() const { return order_; }
  // Layer names declared by any class.
  const std::set<std::string>& layer_names() const { return layer_names_; }

  std::optional<std::string> parent(const std::string& name) const;
  // C ≤ D: reflexive-transitive closure of the inherits relation.
  bool is_subclass(const std::string& sub, const std::string& super) const;
  // The ≤ order on types. Classes follow is_subclass; every other type form
  // is related only to itself.
  bool subtype(const Type& a, const Type& b) const;

  // Nearest class on C, parent(C), ... that directly declares the field.
  std::optional<std::string> class_of_var(const std::string& cls,
                                          const std::string& field) const;
  // Nearest class on C, parent(C), ... with `fun` in F.
  std::optional<std::string> super_lookup(const std::string& cls,
                                          const std::string& fun) const;

  // Appends `layer` to `acc` iff L_C(layer) hosts `fun`.
  std::vector<std::string> lyrfun(const std::string& cls,
                                  const std::string& fun,
                                  const std::string& layer,
                                  std::vector<std::string> acc) const;
  // Layers of C hosting `fun`, in declaration order, restricted to `active`.
  std::vector<std::string> clslyrs(const std::string& cls,
                                   const std::string& fun,
                                   const ActiveLayers& active) const;

  const FunDecl* fun(const std::string& cls, const std::string& name) const;
  const LayerDecl* layer(const std::string& cls, const std::string& name) const;

 private:
  ClassTable() = default;

  std::shared_ptr<const Program> program_;
  std::map<std::string, ClassInfo> classes_;
  std::vector<std::string> order_;
  std::set<std::string> layer_names_;
};

}  // namespace jcop

#endif  // JCOP_CLASSTABLE_CLASS_TABLE_H_
