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

#ifndef VARFIX_CXX_SYNTAX_H_
#define VARFIX_CXX_SYNTAX_H_

// A tolerant structural grammar for C++ translation units. It recognizes
// enough of the language to find function definitions (free functions,
// out-of-line and in-class member functions, constructors, operators,
// templates) and the names those functions declare, without resolving
// types or expanding macros.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/cxx_lexer.h"

namespace varfix {

inline constexpr std::size_t kNoMatch = static_cast<std::size_t>(-1);

// Tokens surviving preprocessor-conditional selection, with the partner
// index of every bracket.
struct TokenStream {
  std::vector<Token> tokens;
  std::vector<std::size_t> match;

  std::size_t size() const { return tokens.size(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
  // Bounds-safe comparison; false past the end.
  bool Is(std::size_t i, std::string_view s) const {
    return i < tokens.size() && tokens[i].Is(s);
  }
  bool IsIdentifier(std::size_t i) const {
    return i < tokens.size() && tokens[i].kind == TokenKind::kIdentifier;
  }
};

// Token indices of one function definition.
struct FunctionSyntax {
  std::size_t first = 0;
  std::size_t name = 0;
  std::size_t params_open = 0;
  std::size_t params_close = 0;
  std::size_t body_open = 0;
  std::size_t body_close = 0;
  std::size_t last = 0;  // closing brace, or that of the final handler
};

struct ParseOptions {
  // Accept `name(...) {...}` with no return type outside a class. Used when
  // re-parsing the text of a single constructor.
  bool allow_untyped = false;
  bool placeholders = false;
};

struct ParseResult {
  TokenStream stream;
  std::vector<FunctionSyntax> functions;  // document order
  std::optional<std::string> error;
};

// Lexes, selects the first branch of every #if group (the #else branch of
// `#if 0`), matches brackets and collects function definitions. Fails on
// lexical errors and unbalanced brackets.
ParseResult ParseFunctions(std::string_view source,
                           const ParseOptions& options = {});

// Lexes and filters without looking for functions.
std::optional<TokenStream> BuildTokenStream(std::string_view source,
                                            const LexOptions& options,
                                            std::string* error = nullptr);

// Name tokens declared by the parameter list between `open` and `close`
// (the parentheses). Unnamed parameters contribute nothing.
std::vector<std::size_t> ParameterNames(const TokenStream& ts,
                                        std::size_t open, std::size_t close);

// Name tokens introduced by local declarations between the braces of a
// function body: block-scope variables, init-statements of for/if/while/
// switch, range-for variables, catch parameters, structured bindings and
// lambda parameters.
std::vector<std::size_t> LocalDeclarationNames(const TokenStream& ts,
                                               std::size_t body_open,
                                               std::size_t body_close);

}  // namespace varfix

#endif  // VARFIX_CXX_SYNTAX_H_
