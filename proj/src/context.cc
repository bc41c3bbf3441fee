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


#include "varfix/context.h"

#include <algorithm>

#include "varfix/cxx_lexer.h"
#include "varfix/errors.h"
#include "varfix/ident.h"

namespace varfix {

std::vector<std::string> NameTokens(std::string_view name) {
  std::vector<std::string> out = SplitSubtokensUnchecked(name);
  if (out.empty()) out.push_back(AsciiLower(name));
  return out;
}

std::vector<std::string> ContextTokens(
    std::string_view text, std::string_view placeholder,
    std::vector<std::size_t>* hole_positions) {
  LexOptions lex_options;
  lex_options.placeholders = true;
  // A lexing error only truncates the token stream; the prefix is still
  // usable context.
  LexResult lexed = Lex(text, lex_options);
  std::vector<std::string> out;
  const std::size_t first_hole = text.find(placeholder);
  bool hole_seen = false;
  for (const Token& t : lexed.tokens) {
    // A placeholder inside a literal or comment has no token of its own;
    // mark the hole before the first token that follows it.
    if (!hole_seen && first_hole != std::string_view::npos &&
        t.offset > first_hole && t.kind != TokenKind::kPlaceholder) {
      if (hole_positions) hole_positions->push_back(out.size());
      out.emplace_back(kHoleToken);
      hole_seen = true;
    }
    switch (t.kind) {
      case TokenKind::kIdentifier:
        for (std::string& sub : SplitSubtokensUnchecked(t.text)) {
          out.push_back(std::move(sub));
        }
        break;
      case TokenKind::kKeyword:
      case TokenKind::kNumber:
      case TokenKind::kPunct:
        out.emplace_back(t.text);
        break;
      case TokenKind::kString:
        out.emplace_back(kStringToken);
        break;
      case TokenKind::kChar:
        out.emplace_back(kCharToken);
        break;
      case TokenKind::kDirective:
        break;
      case TokenKind::kPlaceholder:
        if (t.text == placeholder) {
          if (hole_positions) hole_positions->push_back(out.size());
          out.emplace_back(kHoleToken);
          hole_seen = true;
        } else {
          out.emplace_back(kOtherHoleToken);
        }
        break;
    }
  }
  if (!hole_seen && first_hole != std::string_view::npos) {
    if (hole_positions) hole_positions->push_back(out.size());
    out.emplace_back(kHoleToken);
  }
  return out;
}

namespace {

bool IsStatementBoundary(const std::string& tok) {
  return tok == ";" || tok == "{" || tok == "}";
}

}  // namespace

ContextWindow ExtractContextWindow(const MaskedExample& example,
                                   const WindowOptions& options) {
  const std::string& placeholder = example.placeholder();
  if (example.input_text.find(placeholder) == std::string::npos) {
    throw ContractViolation("placeholder " + placeholder +
                            " absent from example " + example.id);
  }
  std::vector<std::size_t> holes;
  std::vector<std::string> tokens =
      ContextTokens(example.input_text, placeholder, &holes);
  const std::size_t center = holes.front();
  const std::size_t w = options.width;

  ContextWindow window;
  const std::size_t left_begin = center > w ? center - w : 0;
  window.left.assign(tokens.begin() + left_begin, tokens.begin() + center);
  const std::size_t right_end = std::min(tokens.size(), center + 1 + w);
  window.right.assign(tokens.begin() + center + 1, tokens.begin() + right_end);
  window.left_missing = w - window.left.size();
  window.right_missing = w - window.right.size();

  if (options.hints) {
    const std::size_t n = std::min(holes.size(), options.hint_occurrences);
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t at = holes[h];
      std::size_t begin = at;
      while (begin > 0 && !IsStatementBoundary(tokens[begin - 1]) &&
             at - begin < options.hint_span) {
        --begin;
      }
      std::size_t end = at + 1;
      while (end < tokens.size() && !IsStatementBoundary(tokens[end]) &&
             end - at <= options.hint_span) {
        ++end;
      }
      for (std::size_t i = begin; i < end; ++i) {
        if (i != at) window.hints.push_back(tokens[i]);
      }
    }
  }
  return window;
}

std::vector<std::string> FlattenWindow(const ContextWindow& window) {
  std::vector<std::string> out;
  out.reserve(window.left.size() + 1 + window.right.size() +
              window.hints.size());
  out.insert(out.end(), window.left.begin(), window.left.end());
  out.emplace_back(kHoleToken);
  out.insert(out.end(), window.right.begin(), window.right.end());
  out.insert(out.end(), window.hints.begin(), window.hints.end());
  return out;
}

}  // namespace varfix
