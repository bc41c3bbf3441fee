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


#ifndef VARFIX_CANDIDATES_H_
#define VARFIX_CANDIDATES_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/ident.h"

namespace varfix {

struct MappingRejection {
  std::string key;
  std::string value;
  std::string reason;
};

struct MappingParse {
  std::map<std::string, std::string> mapping;  // placeholder -> name
  std::vector<MappingRejection> rejected;
  // Where the object sat in the completion.
  std::size_t object_offset = 0;
  std::size_t object_length = 0;
};

// The first JSON object in a completion, ignoring surrounding prose and
// code fences. Entries whose key is not a placeholder or whose value is not
// a valid identifier are dropped and reported. In strict mode the whole
// completion (up to surrounding whitespace) must be the object. Throws
// ParseError when no object is found.
MappingParse ParseJsonMapping(std::string_view completion, bool strict = false);

// Names from lines of the form "N. name" or "N) name", in order, without
// duplicates or invalid identifiers, at most five.
std::vector<Identifier> ParseNumberedCandidates(std::string_view completion);

// How the order of a candidate list was decided.
inline constexpr std::string_view kRankLogprob = "logprob";
inline constexpr std::string_view kRankSampleOrder = "sample_order";
inline constexpr std::string_view kRankReranked = "reranked";

// One line of a candidate file.
struct CandidateList {
  std::string id;
  std::vector<Candidate> candidates;
  std::string ranking;
  // Set when the generator failed for this example.
  std::optional<std::string> error;
  // Free-form details kept for the log (request mode, attempts, misses).
  std::map<std::string, std::string> info;
};

std::string BuildCandidateLine(const CandidateList& list);

// Throws ParseError on malformed JSON, invalid names or duplicate names.
CandidateList ParseCandidateLine(std::string_view line);

std::vector<CandidateList> ReadCandidateFile(const std::filesystem::path& path);
void WriteCandidateFile(const std::filesystem::path& path,
                        std::span<const CandidateList> lists);

// Keeps the first occurrence of every name.
std::vector<Candidate> DedupCandidates(std::vector<Candidate> candidates);

}  // namespace varfix

#endif  // VARFIX_CANDIDATES_H_
