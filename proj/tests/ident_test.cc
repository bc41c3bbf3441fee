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

#include <gtest/gtest.h>

#include <random>

#include "varfix/errors.h"

namespace varfix {
namespace {

using Subtokens = std::vector<std::string>;

Subtokens Split(const std::string& s) { return SplitSubtokens(Identifier(s)); }

TEST(SplitSubtokens, CamelCase) {
  EXPECT_EQ(Split("playerListUpdateTimer"),
            (Subtokens{"player", "list", "update", "timer"}));
}

TEST(SplitSubtokens, MacroStyle) {
  EXPECT_EQ(Split("_SC_GETPW_R_SIZE_MAX"),
            (Subtokens{"sc", "getpw", "r", "size", "max"}));
}

TEST(SplitSubtokens, SingleSegment) { EXPECT_EQ(Split("i"), Subtokens{"i"}); }

TEST(SplitSubtokens, AcronymRunEndsBeforeLowercase) {
  EXPECT_EQ(Split("XMLParser"), (Subtokens{"xml", "parser"}));
  EXPECT_EQ(Split("JSONValue"), (Subtokens{"json", "value"}));
  EXPECT_EQ(Split("parseHTTP"), (Subtokens{"parse", "http"}));
}

TEST(SplitSubtokens, DigitsAreSeparate) {
  EXPECT_EQ(Split("buf2"), (Subtokens{"buf", "2"}));
  EXPECT_EQ(Split("utf8ToUtf16"), (Subtokens{"utf", "8", "to", "utf", "16"}));
}

TEST(SplitSubtokens, DropsEmptyUnderscoreSegments) {
  EXPECT_EQ(Split("__a__b__"), (Subtokens{"a", "b"}));
  EXPECT_EQ(Split("_"), Subtokens{});
}

TEST(SplitSubtokens, RejectsInvalid) {
  EXPECT_THROW(Split("2fast"), ValidationError);
}

TEST(IsValidIdentifier, Examples) {
  EXPECT_TRUE(IsValidIdentifier("jsonValue"));
  EXPECT_FALSE(IsValidIdentifier("2fast"));
  EXPECT_FALSE(IsValidIdentifier("for"));
  EXPECT_FALSE(IsValidIdentifier(""));
  EXPECT_FALSE(IsValidIdentifier("a-b"));
  EXPECT_FALSE(IsValidIdentifier("caf\xc3\xa9"));
  EXPECT_TRUE(IsValidIdentifier("_"));
  EXPECT_TRUE(IsValidIdentifier("override"));  // contextual, not reserved
  EXPECT_FALSE(IsValidIdentifier("nullptr"));
  EXPECT_FALSE(IsValidIdentifier("xor_eq"));
}

TEST(Placeholder, RenderAndParse) {
  EXPECT_EQ(Placeholder(1).token(), "<ID_1>");
  EXPECT_EQ(Placeholder(12).token(), "<ID_12>");
  EXPECT_THROW(Placeholder(0), ValidationError);
  for (int i : {1, 2, 9, 10, 345}) {
    auto parsed = Placeholder::Parse(Placeholder(i).token());
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(parsed->index(), i);
  }
  EXPECT_FALSE(Placeholder::Parse("<ID_0>"));
  EXPECT_FALSE(Placeholder::Parse("<ID_01>"));
  EXPECT_FALSE(Placeholder::Parse("<ID_>"));
  EXPECT_FALSE(Placeholder::Parse("ID_1"));
  EXPECT_FALSE(Placeholder::Parse("<ID_1x>"));
}

std::string RandomIdentifier(std::mt19937_64& rng) {
  static constexpr std::string_view kAlphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
  for (;;) {
    std::uniform_int_distribution<int> len(1, 16);
    std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(kAlphabet[pick(rng)]);
    if (IsValidIdentifier(s)) return s;
  }
}

TEST(SplitSubtokensProperty, ConcatenationAndRejoin) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::string s = RandomIdentifier(rng);
    const Subtokens parts = Split(s);
    std::string joined;
    for (const auto& p : parts) {
      ASSERT_FALSE(p.empty()) << s;
      ASSERT_EQ(p, AsciiLower(p)) << s;
      joined += p;
    }
    std::string stripped;
    for (char c : AsciiLower(s)) {
      if (c != '_') stripped.push_back(c);
    }
    ASSERT_EQ(joined, stripped) << s;
    ASSERT_EQ(SplitSubtokensUnchecked(JoinCamel(parts)), parts) << s;
    ASSERT_EQ(Split(s), parts) << s;
  }
}

}  // namespace
}  // namespace varfix
