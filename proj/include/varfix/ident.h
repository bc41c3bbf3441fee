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

#ifndef VARFIX_IDENT_H_
#define VARFIX_IDENT_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace varfix {

// True for [A-Za-z0-9_].
constexpr bool IsIdentChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

constexpr bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

// Member of the frozen C++17 keyword list (data/cxx17_keywords.txt).
bool IsKeyword(std::string_view text);

// ASCII identifier that is not a reserved keyword.
bool IsValidIdentifier(std::string_view text);

std::string AsciiLower(std::string_view text);

// A validated C++ identifier. Construction throws ValidationError.
class Identifier {
 public:
  explicit Identifier(std::string text);

  const std::string& str() const { return text_; }
  std::size_t size() const { return text_.size(); }

  friend bool operator==(const Identifier&, const Identifier&) = default;
  friend auto operator<=>(const Identifier&, const Identifier&) = default;

 private:
  std::string text_;
};

// Lowercase subtokens of an identifier. Splits on underscores, lower->upper
// transitions, letter/digit transitions, and at the end of an uppercase run
// one character before the next lowercase letter (XMLParser -> xml, parser).
std::vector<std::string> SplitSubtokens(const Identifier& name);

// Same rule without the validity check; accepts any string over
// [A-Za-z0-9_] and ignores other bytes as separators.
std::vector<std::string> SplitSubtokensUnchecked(std::string_view text);

// Joins subtokens into a camelCase identifier whose split is the input
// again. An underscore is inserted where camel humps alone would be
// ambiguous (runs of single letters, leading digits).
std::string JoinCamel(const std::vector<std::string>& subtokens);

// `<ID_{index}>` placeholder token.
class Placeholder {
 public:
  explicit Placeholder(int index = 1);

  // Accepts exactly `<ID_n>` with n >= 1 and no leading zeros.
  static std::optional<Placeholder> Parse(std::string_view token);

  int index() const { return index_; }
  const std::string& token() const { return token_; }

 private:
  int index_;
  std::string token_;
};

struct Candidate {
  Identifier name;
  std::optional<double> gen_logprob;
  std::optional<double> rerank_score;

  explicit Candidate(Identifier n, std::optional<double> logprob = std::nullopt)
      : name(std::move(n)), gen_logprob(logprob) {}
};

}  // namespace varfix

#endif  // VARFIX_IDENT_H_
