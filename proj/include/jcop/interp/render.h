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

#ifndef JCOP_INTERP_RENDER_H_
#define JCOP_INTERP_RENDER_H_

#include <cstdint>
#include <ostream>
#include <string>

#include "jcop/interp/interpreter.h"

namespace jcop {

enum class OutputFormat { kHuman, kJsonLines };

// Final stack/heap summary (or abort/divergence report) of a run.
// Addresses print as allocation ordinals, so output is stable across runs.
std::string render_outcome(const Outcome& outcome, OutputFormat format);

// Writes one JSON object per applied statement rule:
//   {"step":N,"rule":"...","span":"L:C","stack":{...},"active":[...],
//    "heap_delta":[...]}
class TraceWriter : public ExecObserver {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}

  void on_rule(std::string_view rule, const Stmt& stmt, const State& after,
               const std::vector<HeapChange>& delta) override;

 private:
  std::ostream& out_;
  std::uint64_t step_ = 0;
};

}  // namespace jcop

#endif  // JCOP_INTERP_RENDER_H_
