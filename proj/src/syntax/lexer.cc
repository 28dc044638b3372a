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

#include "lexer.h"

#include <array>
#include <cctype>

#include "jcop/syntax/parser.h"

namespace jcop {

namespace {

constexpr std::array<std::string_view, 20> kReserved = {
    "class", "inherits", "layer", "with",   "without", "super", "proceed",
    "new",   "if",       "then",  "else",   "while",   "do",    "return",
    "this",  "main",     "int",   "bool",   "true",    "false"};

// Longest first so that `:=` wins over a lone `:`.
constexpr std::array<std::string_view, 23> kPuncts = {
    ":=", "<=", ">=", "==", "!=", "&&", "||", "{", "}", "(", ")", "[",
    "]",  ";",  ",",  ".",  "+",  "-",  "*",  "/", "%", "<", ">"};

}  // namespace

bool is_reserved_word(std::string_view word) {
  for (std::string_view r : kReserved) {
    if (r == word) return true;
  }
  return false;
}

std::string Token::describe() const {
  switch (kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kInt:
      return "integer '" + text + "'";
    case TokenKind::kIdent:
      return "identifier '" + text + "'";
    default:
      return "'" + text + "'";
  }
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceSpan span{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      TokenKind kind =
          is_reserved_word(word) ? TokenKind::kKeyword : TokenKind::kIdent;
      out.push_back({kind, std::move(word), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      std::string digits(src.substr(i, j - i));
      // 9223372036854775808 is allowed so that the most negative value can
      // be written with a leading minus; the parser range-checks the sign.
      if (digits.size() > 19 ||
          (digits.size() == 19 && digits > "9223372036854775808")) {
        throw ParseError(span, {"integer literal within 64 bits"}, digits);
      }
      out.push_back({TokenKind::kInt, std::move(digits), span});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (std::string_view p : kPuncts) {
      if (src.substr(i, p.size()) == p) {
        out.push_back({TokenKind::kPunct, std::string(p), span});
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(span, {"token"}, std::string("'") + c + "'");
    }
  }
  out.push_back({TokenKind::kEnd, "", SourceSpan{line, col}});
  return out;
}

}  // namespace jcop
