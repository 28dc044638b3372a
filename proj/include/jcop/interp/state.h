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

#ifndef JCOP_INTERP_STATE_H_
#define JCOP_INTERP_STATE_H_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "jcop/classtable/class_table.h"

namespace jcop {

// Heap address. Allocation hands these out as consecutive naturals.
struct Addr {
  std::uint64_t index = 0;
  friend auto operator<=>(const Addr&, const Addr&) = default;
};

// ⊥, the undefined value. `origin` names the rule that produced it and is
// diagnostic only: all bottoms compare equal.
struct Bottom {
  std::string origin;
  friend bool operator==(const Bottom&, const Bottom&) { return true; }
};

using Value = std::variant<std::int64_t, Addr, Bottom>;

inline bool is_int(const Value& v) {
  return std::holds_alternative<std::int64_t>(v);
}
inline bool is_addr(const Value& v) { return std::holds_alternative<Addr>(v); }
inline bool is_bottom(const Value& v) {
  return std::holds_alternative<Bottom>(v);
}

std::string to_string(const Value& v);

// Result of a boolean expression: true, false, or ⊥.
enum class Truth { kFalse, kTrue, kBottom };

// Heap cell (C, n, I).
struct ObjectCell {
  std::string class_name;
  std::uint64_t object_id = 0;
  std::map<std::string, Value> fields;

  friend bool operator==(const ObjectCell&, const ObjectCell&) = default;
};

using Stack = std::map<std::string, Value>;
using Heap = std::map<Addr, ObjectCell>;

// (s, h, L^s)
struct State {
  Stack stack;
  Heap heap;
  ActiveLayers active;

  friend bool operator==(const State&, const State&) = default;
};

struct Final {
  State state;
};
struct Abort {
  // Name of the statement rule whose premises could not be met.
  std::string rule;
  std::string reason;
};
struct Diverged {
  // Set when the interpreter's call-depth limit, rather than fuel, ran out.
  bool depth_exceeded = false;
};

struct Outcome {
  std::variant<Final, Abort, Diverged> result;
  std::uint64_t fuel_used = 0;

  bool is_final() const { return std::holds_alternative<Final>(result); }
  bool is_abort() const { return std::holds_alternative<Abort>(result); }
  bool is_diverged() const { return std::holds_alternative<Diverged>(result); }
  const State& state() const { return std::get<Final>(result).state; }
  const Abort& abort() const { return std::get<Abort>(result); }
};

}  // namespace jcop

#endif  // JCOP_INTERP_STATE_H_
