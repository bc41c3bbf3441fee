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

#include "varfix/cxx_lexer.h"

#include <array>

#include "varfix/ident.h"

namespace varfix {
namespace {

// Longest first.
constexpr std::array<std::string_view, 51> kPuncts = {
    "<=>", ">>=", "<<=", "->*", "...", "::", "->", "++", "--", "<<", ">>",
    "<=",  ">=",  "==",  "!=",  "&&",  "||", "+=", "-=", "*=", "/=", "%=",
    "&=",  "|=",  "^=",  "##",  ".*",  "{",  "}",  "[",  "]",  "(",  ")",
    ";",   ":",   "?",   ".",   "+",   "-",  "*",  "/",  "%",  "^",  "&",
    "|",   "~",   "!",   "=",   "<",   ">",  ","};

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsDigitChar(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, const LexOptions& options)
      : src_(src), options_(options) {}

  LexResult Run() {
    if (src_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    while (pos_ < src_.size() && !result_.error) Step();
    return std::move(result_);
  }

 private:
  char At(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  void Fail(std::string message, std::size_t at) {
    result_.error = std::move(message);
    result_.error_offset = at;
  }

  void Emit(TokenKind kind, std::size_t start, std::size_t end) {
    result_.tokens.push_back(
        Token{kind, start, src_.substr(start, end - start)});
    line_start_ = false;
  }

  // Returns true if a line splice (backslash-newline) starts at pos_.
  bool SkipSplice() {
    if (At(pos_) != '\\') return false;
    if (At(pos_ + 1) == '\n') {
      pos_ += 2;
      return true;
    }
    if (At(pos_ + 1) == '\r' && At(pos_ + 2) == '\n') {
      pos_ += 3;
      return true;
    }
    return false;
  }

  void Step() {
    const char c = src_[pos_];
    if (c == '\n') {
      line_start_ = true;
      ++pos_;
      return;
    }
    if (IsSpace(c)) {
      ++pos_;
      return;
    }
    if (SkipSplice()) return;
    if (c == '/' && At(pos_ + 1) == '/') {
      SkipLineComment();
      return;
    }
    if (c == '/' && At(pos_ + 1) == '*') {
      SkipBlockComment();
      return;
    }
    if (c == '#' && line_start_) {
      LexDirective();
      return;
    }
    if (options_.placeholders && c == '<' && LexPlaceholder()) return;
    if (IsIdentStart(c)) {
      LexIdentifierOrPrefixedLiteral();
      return;
    }
    if (IsDigitChar(c) || (c == '.' && IsDigitChar(At(pos_ + 1)))) {
      LexNumber();
      return;
    }
    if (c == '"') {
      LexQuoted(pos_, pos_, '"', TokenKind::kString);
      return;
    }
    if (c == '\'') {
      LexQuoted(pos_, pos_, '\'', TokenKind::kChar);
      return;
    }
    for (std::string_view p : kPuncts) {
      if (src_.substr(pos_).starts_with(p)) {
        Emit(TokenKind::kPunct, pos_, pos_ + p.size());
        pos_ += p.size();
        return;
      }
    }
    Fail("unexpected character", pos_);
  }

  void SkipLineComment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (!SkipSplice()) ++pos_;
    }
  }

  void SkipBlockComment() {
    const std::size_t start = pos_;
    const std::size_t close = src_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) {
      Fail("unterminated block comment", start);
      return;
    }
    pos_ = close + 2;
  }

  void LexDirective() {
    const std::size_t start = pos_;
    char quote = 0;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (SkipSplice()) continue;
      if (c == '\n') break;
      if (quote) {
        if (c == '\\') {
          pos_ += 2;
          continue;
        }
        if (c == quote) quote = 0;
        ++pos_;
        continue;
      }
      if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '/' && At(pos_ + 1) == '*') {
        const std::size_t close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          Fail("unterminated block comment", pos_);
          return;
        }
        pos_ = close + 2;
        continue;
      } else if (c == '/' && At(pos_ + 1) == '/') {
        std::size_t end = pos_;
        while (end < src_.size() && src_[end] != '\n') ++end;
        Emit(TokenKind::kDirective, start, pos_);
        pos_ = end;
        line_start_ = true;
        return;
      }
      ++pos_;
    }
    std::size_t end = pos_;
    while (end > start && (src_[end - 1] == '\r')) --end;
    Emit(TokenKind::kDirective, start, end);
    line_start_ = true;
  }

  bool LexPlaceholder() {
    std::size_t end = src_.find('>', pos_);
    if (end == std::string_view::npos || end - pos_ > 16) return false;
    if (!Placeholder::Parse(src_.substr(pos_, end + 1 - pos_))) return false;
    Emit(TokenKind::kPlaceholder, pos_, end + 1);
    pos_ = end + 1;
    return true;
  }

  void LexIdentifierOrPrefixedLiteral() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
    const std::string_view word = src_.substr(start, pos_ - start);
    const char next = At(pos_);
    if (next == '"') {
      if (word == "R" || word == "LR" || word == "uR" || word == "UR" ||
          word == "u8R") {
        LexRawString(start);
        return;
      }
      if (word == "L" || word == "u" || word == "U" || word == "u8") {
        LexQuoted(start, pos_, '"', TokenKind::kString);
        return;
      }
    }
    if (next == '\'' &&
        (word == "L" || word == "u" || word == "U" || word == "u8")) {
      LexQuoted(start, pos_, '\'', TokenKind::kChar);
      return;
    }
    if (static_cast<unsigned char>(next) >= 0x80) {
      Fail("non-ASCII identifier", pos_);
      return;
    }
    Emit(IsKeyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier, start,
         pos_);
  }

  // `quote_at` is the position of the opening quote; `start` may precede it
  // when the literal has an encoding prefix.
  void LexQuoted(std::size_t start, std::size_t quote_at, char quote,
                 TokenKind kind) {
    std::size_t i = quote_at + 1;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '\\') {
        i += 2;
        continue;
      }
      if (c == '\n') break;
      if (c == quote) {
        pos_ = i + 1;
        // user-defined literal suffix
        while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
        Emit(kind, start, pos_);
        return;
      }
      ++i;
    }
    Fail(quote == '"' ? "unterminated string literal"
                      : "unterminated character literal",
         start);
  }

  void LexRawString(std::size_t start) {
    const std::size_t open = pos_;  // the quote
    const std::size_t paren = src_.find('(', open + 1);
    if (paren == std::string_view::npos || paren - open - 1 > 16) {
      Fail("malformed raw string literal", start);
      return;
    }
    const std::string_view delim = src_.substr(open + 1, paren - open - 1);
    for (char c : delim) {
      if (IsSpace(c) || c == ')' || c == '\\') {
        Fail("malformed raw string delimiter", start);
        return;
      }
    }
    std::string closing = ")";
    closing += delim;
    closing += '"';
    const std::size_t close = src_.find(closing, paren + 1);
    if (close == std::string_view::npos) {
      Fail("unterminated raw string literal", start);
      return;
    }
    pos_ = close + closing.size();
    while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
    Emit(TokenKind::kString, start, pos_);
  }

  void LexNumber() {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      const char prev = src_[pos_ - 1];
      if ((c == '+' || c == '-') &&
          (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P')) {
        ++pos_;
      } else if (IsIdentChar(c) || c == '.') {
        ++pos_;
      } else if (c == '\'' && IsIdentChar(At(pos_ + 1))) {
        pos_ += 2;
      } else {
        break;
      }
    }
    Emit(TokenKind::kNumber, start, pos_);
  }

  std::string_view src_;
  LexOptions options_;
  std::size_t pos_ = 0;
  bool line_start_ = true;
  LexResult result_;
};

}  // namespace

LexResult Lex(std::string_view source, const LexOptions& options) {
  return Lexer(source, options).Run();
}

}  // namespace varfix
