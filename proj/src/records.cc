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


#include "varfix/records.h"

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"

namespace varfix {

using Json = nlohmann::ordered_json;

namespace {

Json MetaToJson(const ExampleMeta& meta) {
  Json j;
  j["file_id"] = meta.file_id;
  j["byte_start"] = meta.byte_start;
  j["byte_end"] = meta.byte_end;
  j["kind"] = SiteKindName(meta.kind);
  j["occurrence_count"] = meta.occurrence_count;
  j["in_scope"] = meta.in_scope;
  return j;
}

ExampleMeta MetaFromJson(const Json& j) {
  ExampleMeta meta;
  if (!j.is_object()) throw ParseError("meta is not an object");
  meta.file_id = j.value("file_id", std::string());
  meta.byte_start = j.value("byte_start", std::size_t{0});
  meta.byte_end = j.value("byte_end", std::size_t{0});
  if (j.contains("kind")) {
    try {
      meta.kind = ParseSiteKind(j.at("kind").get<std::string>());
    } catch (const ValidationError& e) {
      throw ParseError(e.what());
    }
  }
  meta.occurrence_count = j.value("occurrence_count", std::size_t{0});
  if (j.contains("in_scope")) {
    meta.in_scope = j.at("in_scope").get<std::vector<std::string>>();
  }
  return meta;
}

}  // namespace

std::string BuildJsonlRecord(const MaskedExample& example) {
  Json j;
  j["id"] = example.id;
  j["input_text"] = example.input_text;
  Json target = Json::object();
  for (const auto& [token, name] : example.target_text) target[token] = name;
  j["target_text"] = std::move(target);
  j["meta"] = MetaToJson(example.meta);
  return j.dump();
}

MaskedExample ParseJsonlRecord(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  }
  MaskedExample ex;
  try {
    if (!j.is_object()) throw ParseError("record is not an object");
    ex.id = j.at("id").get<std::string>();
    ex.input_text = j.at("input_text").get<std::string>();
    const Json& target = j.at("target_text");
    if (!target.is_object() || target.empty()) {
      throw ParseError("target_text must be a non-empty object");
    }
    for (const auto& [token, name] : target.items()) {
      if (!Placeholder::Parse(token)) {
        throw ParseError("bad placeholder key: " + token);
      }
      std::string gold = name.get<std::string>();
      if (!IsValidIdentifier(gold)) {
        throw ParseError("invalid gold name: " + gold);
      }
      if (ex.input_text.find(token) == std::string::npos) {
        throw ParseError("input_text lacks " + token);
      }
      ex.target_text.emplace(token, std::move(gold));
    }
    if (j.contains("meta")) ex.meta = MetaFromJson(j.at("meta"));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("bad record: ") + e.what());
  }
  return ex;
}

std::string BuildJsonl(std::span<const MaskedExample> examples) {
  std::string out;
  for (const auto& ex : examples) {
    out += BuildJsonlRecord(ex);
    out += '\n';
  }
  return out;
}

std::vector<MaskedExample> ParseJsonl(std::string_view text) {
  std::vector<MaskedExample> out;
  std::size_t lineno = 0;
  for (const auto& line : SplitLines(text)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(ParseJsonlRecord(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<MaskedExample> ReadExamples(const std::filesystem::path& path) {
  try {
    return ParseJsonl(ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void WriteExamples(const std::filesystem::path& path,
                   std::span<const MaskedExample> examples) {
  WriteFileAtomic(path, BuildJsonl(examples));
}

}  // namespace varfix
