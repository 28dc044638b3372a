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

#ifndef JCOP_SRC_SYNTAX_LEXER_H_
#define JCOP_SRC_SYNTAX_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "jcop/syntax/ast.h"

namespace jcop {

enum class TokenKind {
  kIdent,
  kKeyword,
  kInt,
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind;
  // Identifier/keyword/punctuator text, or the digits of an integer.
  std::string text;
  SourceSpan span;

  std::string describe() const;
};

// Splits source text into tokens. Throws ParseError on a stray character
// or an integer literal that does not fit in 64 bits.
std::vector<Token> tokenize(std::string_view source);

}  // namespace jcop

#endif  // JCOP_SRC_SYNTAX_LEXER_H_
