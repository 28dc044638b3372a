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

#ifndef JCOP_TESTS_SUPPORT_H_
#define JCOP_TESTS_SUPPORT_H_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "jcop/classtable/class_table.h"
#include "jcop/interp/interpreter.h"
#include "jcop/syntax/parser.h"

namespace jcop::testing {

inline std::filesystem::path corpus_dir() { return JCOP_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Every `.jcop` file under corpus/<group>, sorted by name.
inline std::vector<std::filesystem::path> corpus_files(std::string_view group) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry :
       std::filesystem::directory_iterator(corpus_dir() / group)) {
    if (entry.path().extension() == ".jcop") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Text after `prefix` on the first line of `source`, or empty.
inline std::string header_value(const std::string& source,
                                std::string_view prefix) {
  std::string first = source.substr(0, source.find('\n'));
  auto at = first.find(prefix);
  if (at == std::string::npos) return "";
  return first.substr(at + prefix.size());
}

inline ClassTable table_of(std::string_view source) {
  return ClassTable::build(parse_program(source));
}

inline Outcome run_source(std::string_view source,
                          std::uint64_t fuel = 100000) {
  ExecOptions opts;
  opts.fuel = fuel;
  return run_program(table_of(source), opts);
}

inline const ObjectCell& cell_at(const State& st, std::uint64_t index) {
  return st.heap.at(Addr{index});
}

inline std::string show(const Value& v) { return to_string(v); }

}  // namespace jcop::testing

#endif  // JCOP_TESTS_SUPPORT_H_
