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


#include "varfix/prompt.h"

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"

namespace varfix {

using Json = nlohmann::ordered_json;

const std::string& DefaultSystemText() {
  static const std::string kText =
      "You repair variable names in C++ code. In the function you are given, "
      "one parameter or local variable has been replaced at every use by a "
      "placeholder token such as <ID_1>. Choose a natural name for each "
      "placeholder that fits how the variable is used and the conventions of "
      "the surrounding code.\n"
      "Answer with a single JSON object that maps each placeholder to its "
      "name and nothing else, for example {\"<ID_1>\": \"jsonValue\"}.";
  return kText;
}

PromptTemplate ZeroShotTemplate() { return {DefaultSystemText(), {}}; }

void PromptTemplate::Validate() const {
  if (system_text.empty()) throw ValidationError("empty system text");
  for (std::size_t i = 0; i < shots.size(); ++i) {
    const Shot& shot = shots[i];
    const std::string where = "shot " + std::to_string(i + 1) + ": ";
    if (shot.mapping.empty()) throw ValidationError(where + "empty mapping");
    for (const auto& [token, name] : shot.mapping) {
      if (!Placeholder::Parse(token)) {
        throw ValidationError(where + "bad placeholder " + token);
      }
      if (!IsValidIdentifier(name)) {
        throw ValidationError(where + "bad name " + name);
      }
      if (shot.input_text.find(token) == std::string::npos) {
        throw ValidationError(where + token + " missing from input_text");
      }
    }
  }
}

PromptTemplate LoadPromptTemplate(const std::filesystem::path& path) {
  PromptTemplate tmpl;
  try {
    Json j = Json::parse(ReadFile(path));
    tmpl.system_text = j.value("system_text", DefaultSystemText());
    for (const Json& s : j.at("shots")) {
      Shot shot;
      shot.input_text = s.at("input_text").get<std::string>();
      for (const auto& [token, name] : s.at("target_text").items()) {
        shot.mapping.emplace(token, name.get<std::string>());
      }
      tmpl.shots.push_back(std::move(shot));
    }
  } catch (const Json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  tmpl.Validate();
  return tmpl;
}

std::string MappingJson(const std::map<std::string, std::string>& mapping) {
  Json j = Json::object();
  for (const auto& [token, name] : mapping) j[token] = name;
  return j.dump();
}

std::vector<ChatMessage> BuildPrompt(const PromptTemplate& tmpl,
                                     const MaskedExample& example) {
  std::vector<ChatMessage> messages;
  messages.reserve(2 + 2 * tmpl.shots.size());
  messages.push_back({"system", tmpl.system_text});
  for (const Shot& shot : tmpl.shots) {
    messages.push_back({"user", shot.input_text});
    messages.push_back({"assistant", MappingJson(shot.mapping)});
  }
  messages.push_back({"user", example.input_text});
  return messages;
}

}  // namespace varfix
