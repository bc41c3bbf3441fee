// Copyright 2026 The Varfix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VARFIX_CXX_LEXER_H_
#define VARFIX_CXX_LEXER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varfix {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kPunct,
  kDirective,    // a whole preprocessor line, continuations included
  kPlaceholder,  // `<ID_n>`, only when LexOptions::placeholders is set
};

// A token is a view into the lexed buffer, which must outlive it.
struct Token {
  TokenKind kind;
  std::size_t offset;
  std::string_view text;

  std::size_t end() const { return offset + text.size(); }
  bool Is(std::string_view s) const {
    return (kind == TokenKind::kPunct || kind == TokenKind::kKeyword) &&
           text == s;
  }
};

struct LexOptions {
  bool placeholders = false;
};

struct LexResult {
  std::vector<Token> tokens;
  // Set when the buffer is not lexically valid C++ (unterminated comment or
  // literal, stray byte). Tokens are then incomplete.
  std::optional<std::string> error;
  std::size_t error_offset = 0;
};

// Comments and whitespace are dropped. A leading UTF-8 byte order mark is
// skipped. Bytes >= 0x80 are only accepted inside comments and literals.
LexResult Lex(std::string_view source, const LexOptions& options = {});

}  // namespace varfix

#endif  // VARFIX_CXX_LEXER_H_
