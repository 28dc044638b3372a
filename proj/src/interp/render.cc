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

#include "jcop/interp/render.h"

#include <sstream>

#include "json.hpp"

namespace jcop {

namespace {

using nlohmann::json;

json value_json(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* a = std::get_if<Addr>(&v)) return "#" + std::to_string(a->index);
  return nullptr;
}

json stack_json(const Stack& s) {
  json out = json::object();
  for (const auto& [name, v] : s) out[name] = value_json(v);
  return out;
}

json active_json(const ActiveLayers& active) {
  json out = json::array();
  for (const std::string& l : active.names()) out.push_back(l);
  return out;
}

json cell_json(Addr a, const ObjectCell& cell) {
  json fields = json::object();
  for (const auto& [name, v] : cell.fields) fields[name] = value_json(v);
  return {{"addr", "#" + std::to_string(a.index)},
          {"class", cell.class_name},
          {"id", cell.object_id},
          {"fields", fields}};
}

const char* outcome_name(const Outcome& o) {
  if (o.is_final()) return "final";
  if (o.is_abort()) return "abort";
  return "diverged";
}

std::string render_json(const Outcome& o) {
  std::ostringstream os;
  json head = {{"outcome", outcome_name(o)}, {"fuel_used", o.fuel_used}};
  if (o.is_abort()) {
    head["rule"] = o.abort().rule;
    head["reason"] = o.abort().reason;
  } else if (o.is_diverged()) {
    head["depth_exceeded"] = std::get<Diverged>(o.result).depth_exceeded;
  }
  os << head.dump() << "\n";
  if (o.is_final()) {
    const State& st = o.state();
    os << json{{"stack", stack_json(st.stack)}}.dump() << "\n";
    os << json{{"active", active_json(st.active)}}.dump() << "\n";
    for (const auto& [a, cell] : st.heap) {
      os << json{{"cell", cell_json(a, cell)}}.dump() << "\n";
    }
  }
  return os.str();
}

std::string render_human(const Outcome& o) {
  std::ostringstream os;
  if (o.is_abort()) {
    os << "abort [" << o.abort().rule << "] " << o.abort().reason << "\n";
    return os.str();
  }
  if (o.is_diverged()) {
    os << "diverged after " << o.fuel_used << " steps";
    if (std::get<Diverged>(o.result).depth_exceeded) os << " (call depth limit)";
    os << "\n";
    return os.str();
  }
  const State& st = o.state();
  os << "final (" << o.fuel_used << " steps)\n";
  os << "active: [";
  for (size_t i = 0; i < st.active.names().size(); ++i) {
    os << (i ? ", " : "") << st.active.names()[i];
  }
  os << "]\nstack:\n";
  for (const auto& [name, v] : st.stack) {
    os << "  " << name << " = " << to_string(v) << "\n";
  }
  os << "heap:\n";
  for (const auto& [a, cell] : st.heap) {
    os << "  #" << a.index << " " << cell.class_name << "#" << cell.object_id
       << " {";
    bool first = true;
    for (const auto& [name, v] : cell.fields) {
      os << (first ? " " : ", ") << name << " = " << to_string(v);
      first = false;
    }
    os << (first ? "}" : " }") << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_outcome(const Outcome& outcome, OutputFormat format) {
  return format == OutputFormat::kJsonLines ? render_json(outcome)
                                            : render_human(outcome);
}

void TraceWriter::on_rule(std::string_view rule, const Stmt& stmt,
                          const State& after,
                          const std::vector<HeapChange>& delta) {
  json changes = json::array();
  for (const HeapChange& c : delta) {
    json entry = {{"addr", "#" + std::to_string(c.addr.index)}};
    if (c.field.empty()) {
      entry["new"] = c.allocated_class;
    } else {
      entry["field"] = c.field;
      entry["value"] = value_json(c.value);
    }
    changes.push_back(std::move(entry));
  }
  json record = {{"step", step_++},
                 {"rule", std::string(rule)},
                 {"span", stmt.span.to_string()},
                 {"stack", stack_json(after.stack)},
                 {"active", active_json(after.active)},
                 {"heap_delta", changes}};
  out_ << record.dump() << "\n";
}

}  // namespace jcop
