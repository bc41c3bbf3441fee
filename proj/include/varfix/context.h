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


#ifndef VARFIX_CONTEXT_H_
#define VARFIX_CONTEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/miner.h"

namespace varfix {

// Reserved tokens shared by the context and name sides.
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kHoleToken = "<id>";
inline constexpr std::string_view kOtherHoleToken = "<other_id>";
inline constexpr std::string_view kStringToken = "<str>";
inline constexpr std::string_view kCharToken = "<chr>";

struct ContextWindow {
  std::vector<std::string> left;   // nearest token last
  std::vector<std::string> right;  // nearest token first
  // Tokens of the statements around the first few placeholder
  // occurrences.
  std::vector<std::string> hints;
  // Tokens missing on each side to reach W; kept instead of padding.
  std::size_t left_missing = 0;
  std::size_t right_missing = 0;
};

struct WindowOptions {
  std::size_t width = 64;  // tokens on each side
  bool hints = true;
  std::size_t hint_occurrences = 3;
  std::size_t hint_span = 12;  // tokens on each side within a statement
};

// Code tokens of a masked function: identifiers split into lowercase
// subtokens, literals collapsed to <str>/<chr>, preprocessor lines dropped,
// the example's placeholder mapped to <id>.
std::vector<std::string> ContextTokens(std::string_view text,
                                       std::string_view placeholder,
                                       std::vector<std::size_t>* hole_positions);

// Window around the first placeholder. Throws ContractViolation when the
// placeholder does not occur in the text.
ContextWindow ExtractContextWindow(const MaskedExample& example,
                                   const WindowOptions& options);

// left + <id> + right + hints, the bag the context encoder averages.
std::vector<std::string> FlattenWindow(const ContextWindow& window);

// Lowercase subtokens of a name; the whole lowercased name when it has none
// (e.g. "_").
std::vector<std::string> NameTokens(std::string_view name);

}  // namespace varfix

#endif  // VARFIX_CONTEXT_H_
