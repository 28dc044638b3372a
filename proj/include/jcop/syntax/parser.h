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

#ifndef JCOP_SYNTAX_PARSER_H_
#define JCOP_SYNTAX_PARSER_H_

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jcop/syntax/ast.h"

namespace jcop {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan where, std::set<std::string> expected,
             std::string found);

  SourceSpan where() const { return where_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan where_;
  std::set<std::string> expected_;
  std::string found_;
};

// Reserved words; none of these may be used as an identifier.
bool is_reserved_word(std::string_view word);

// Parses a complete `.jcop` source text. Throws ParseError.
Program parse_program(std::string_view source);

// Renders a program back to concrete syntax. For every program `p`,
// parse_program(pretty_print(p)) is structurally equal to `p`.
std::string pretty_print(const Program& program);
std::string pretty_print(const ExprPtr& expr);
std::string pretty_print(const BExprPtr& bexpr);
std::string pretty_print(const LayerExpr& layers);

}  // namespace jcop

#endif  // JCOP_SYNTAX_PARSER_H_
