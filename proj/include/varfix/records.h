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


#ifndef VARFIX_RECORDS_H_
#define VARFIX_RECORDS_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/miner.h"

namespace varfix {

// One line of JSON (no trailing newline) with keys id, input_text,
// target_text and meta, in that order.
std::string BuildJsonlRecord(const MaskedExample& example);

// Inverse of BuildJsonlRecord. Throws ParseError on malformed JSON or a
// record that breaks the example invariants.
MaskedExample ParseJsonlRecord(std::string_view line);

std::string BuildJsonl(std::span<const MaskedExample> examples);
std::vector<MaskedExample> ParseJsonl(std::string_view text);

std::vector<MaskedExample> ReadExamples(const std::filesystem::path& path);
void WriteExamples(const std::filesystem::path& path,
                   std::span<const MaskedExample> examples);

}  // namespace varfix

#endif  // VARFIX_RECORDS_H_
