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

#include "varfix/ident.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "varfix/errors.h"

namespace varfix {
namespace {

#include "keywords.inc"

bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

void SplitSegment(std::string_view seg, std::vector<std::string>* out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < seg.size(); ++i) {
    const char prev = seg[i - 1];
    const char cur = seg[i];
    bool boundary = false;
    if (IsDigit(prev) != IsDigit(cur)) {
      boundary = true;
    } else if (IsLower(prev) && IsUpper(cur)) {
      boundary = true;
    } else if (IsUpper(prev) && IsUpper(cur) && i + 1 < seg.size() &&
               IsLower(seg[i + 1])) {
      boundary = true;
    }
    if (boundary) {
      out->push_back(AsciiLower(seg.substr(start, i - start)));
      start = i;
    }
  }
  if (start < seg.size()) out->push_back(AsciiLower(seg.substr(start)));
}

}  // namespace

bool IsKeyword(std::string_view text) {
  return std::binary_search(kKeywords.begin(), kKeywords.end(), text);
}

bool IsValidIdentifier(std::string_view text) {
  if (text.empty() || !IsIdentStart(text.front())) return false;
  if (!std::all_of(text.begin(), text.end(), IsIdentChar)) return false;
  return !IsKeyword(text);
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (IsUpper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Identifier::Identifier(std::string text) : text_(std::move(text)) {
  if (!IsValidIdentifier(text_)) {
    throw ValidationError("invalid identifier: '" + text_ + "'");
  }
}

std::vector<std::string> SplitSubtokensUnchecked(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (!IsIdentChar(text[i]) || text[i] == '_')) ++i;
    std::size_t j = i;
    while (j < text.size() && IsIdentChar(text[j]) && text[j] != '_') ++j;
    if (j > i) SplitSegment(text.substr(i, j - i), &out);
    i = j;
  }
  return out;
}

std::vector<std::string> SplitSubtokens(const Identifier& name) {
  return SplitSubtokensUnchecked(name.str());
}

std::string JoinCamel(const std::vector<std::string>& subtokens) {
  std::string out;
  for (std::size_t k = 0; k < subtokens.size(); ++k) {
    std::string piece = AsciiLower(subtokens[k]);
    if (piece.empty()) continue;
    if (out.empty()) {
      if (IsDigit(piece.front())) out.push_back('_');
      out += piece;
      continue;
    }
    const std::string& prev = subtokens[k - 1];
    const bool prev_single_letter =
        k >= 2 && prev.size() == 1 && !IsDigit(prev.front());
    const bool both_digits = !prev.empty() && IsDigit(prev.front()) &&
                             IsDigit(piece.front());
    if ((prev_single_letter && !IsDigit(piece.front())) || both_digits) {
      out.push_back('_');
    }
    if (IsLower(piece.front())) {
      piece.front() = static_cast<char>(piece.front() - 'a' + 'A');
    }
    out += piece;
  }
  return out;
}

Placeholder::Placeholder(int index) : index_(index) {
  if (index < 1) throw ValidationError("placeholder index must be >= 1");
  token_ = "<ID_" + std::to_string(index) + ">";
}

std::optional<Placeholder> Placeholder::Parse(std::string_view token) {
  constexpr std::string_view kPrefix = "<ID_";
  if (token.size() < kPrefix.size() + 2 || !token.starts_with(kPrefix) ||
      token.back() != '>') {
    return std::nullopt;
  }
  std::string_view digits =
      token.substr(kPrefix.size(), token.size() - kPrefix.size() - 1);
  if (digits.empty() || digits.size() > 9 || digits.front() == '0') {
    return std::nullopt;
  }
  int value = 0;
  for (char c : digits) {
    if (!IsDigit(c)) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return Placeholder(value);
}

}  // namespace varfix
