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


#ifndef VARFIX_PROMPT_H_
#define VARFIX_PROMPT_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "varfix/miner.h"

namespace varfix {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

// A worked example: masked function text and the mapping the model should
// answer with.
struct Shot {
  std::string input_text;
  std::map<std::string, std::string> mapping;
};

struct PromptTemplate {
  std::string system_text;
  std::vector<Shot> shots;

  // Throws ValidationError if a shot maps a non-placeholder key, maps to an
  // invalid identifier, or its placeholder is missing from its text.
  void Validate() const;
};

// Task description with the JSON answer instruction.
const std::string& DefaultSystemText();

PromptTemplate ZeroShotTemplate();

// Reads {"system_text": ..., "shots": [{"input_text": ..., "target_text":
// {...}}, ...]}. system_text is optional and defaults to DefaultSystemText().
PromptTemplate LoadPromptTemplate(const std::filesystem::path& path);

// Compact JSON object for a mapping, e.g. {"<ID_1>":"jsonValue"}.
std::string MappingJson(const std::map<std::string, std::string>& mapping);

// System turn, then a user/assistant pair per shot, then the masked
// function as the final user turn.
std::vector<ChatMessage> BuildPrompt(const PromptTemplate& tmpl,
                                     const MaskedExample& example);

}  // namespace varfix

#endif  // VARFIX_PROMPT_H_
