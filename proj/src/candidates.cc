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


#include "varfix/candidates.h"

#include <set>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"

namespace varfix {

using Json = nlohmann::ordered_json;

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// End (exclusive) of the balanced {...} starting at `open`, or npos.
std::size_t BalancedObjectEnd(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    char c = s[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

MappingParse Validate(const Json& obj, std::size_t offset, std::size_t length) {
  MappingParse out;
  out.object_offset = offset;
  out.object_length = length;
  for (const auto& [key, value] : obj.items()) {
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (!Placeholder::Parse(key)) {
      out.rejected.push_back({key, text, "key is not a placeholder"});
    } else if (!value.is_string()) {
      out.rejected.push_back({key, text, "value is not a string"});
    } else if (!IsValidIdentifier(text)) {
      out.rejected.push_back({key, text, "not a valid identifier"});
    } else {
      out.mapping.emplace(key, std::move(text));
    }
  }
  return out;
}

}  // namespace

MappingParse ParseJsonMapping(std::string_view completion, bool strict) {
  if (strict) {
    std::size_t b = 0, e = completion.size();
    while (b < e && IsSpace(completion[b])) ++b;
    while (e > b && IsSpace(completion[e - 1])) --e;
    Json obj = Json::parse(completion.substr(b, e - b), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      throw ParseError("completion is not a JSON object");
    }
    return Validate(obj, b, e - b);
  }
  for (std::size_t open = completion.find('{');
       open != std::string_view::npos; open = completion.find('{', open + 1)) {
    std::size_t end = BalancedObjectEnd(completion, open);
    if (end == std::string_view::npos) continue;
    Json obj = Json::parse(completion.substr(open, end - open), nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) continue;
    return Validate(obj, open, end - open);
  }
  throw ParseError("no JSON object in completion");
}

std::vector<Identifier> ParseNumberedCandidates(std::string_view completion) {
  std::vector<Identifier> out;
  std::set<std::string> seen;
  for (const std::string& raw : SplitLines(completion)) {
    std::string_view line = raw;
    while (!line.empty() && IsSpace(line.front())) line.remove_prefix(1);
    std::size_t digits = 0;
    while (digits < line.size() && line[digits] >= '0' && line[digits] <= '9') {
      ++digits;
    }
    if (digits == 0 || digits >= line.size()) continue;
    if (line.find_first_not_of('0') >= digits) continue;  // N = 0
    if (line[digits] != '.' && line[digits] != ')') continue;
    std::string_view rest = line.substr(digits + 1);
    if (rest.empty() || !IsSpace(rest.front())) continue;
    while (!rest.empty() && IsSpace(rest.front())) rest.remove_prefix(1);
    // Models decorate names with markdown or quotes.
    constexpr std::string_view kWrap = "`'\"*";
    while (!rest.empty() && kWrap.find(rest.front()) != std::string_view::npos) {
      rest.remove_prefix(1);
    }
    std::size_t len = 0;
    while (len < rest.size() && IsIdentChar(rest[len])) ++len;
    std::string_view name = rest.substr(0, len);
    std::string_view after = rest.substr(len);
    while (!after.empty() && kWrap.find(after.front()) != std::string_view::npos) {
      after.remove_prefix(1);
    }
    // "1. foo bar" is prose, not a name; allow trailing punctuation/notes
    // only after a separator.
    if (!after.empty() && !IsSpace(after.front()) && after.front() != ':' &&
        after.front() != ',' && after.front() != '-' && after.front() != '(') {
      continue;
    }
    if (!IsValidIdentifier(name)) continue;
    if (!seen.insert(std::string(name)).second) continue;
    out.emplace_back(std::string(name));
    if (out.size() == 5) break;
  }
  return out;
}

std::vector<Candidate> DedupCandidates(std::vector<Candidate> candidates) {
  std::vector<Candidate> out;
  std::set<std::string> seen;
  for (Candidate& c : candidates) {
    if (seen.insert(c.name.str()).second) out.push_back(std::move(c));
  }
  return out;
}

std::string BuildCandidateLine(const CandidateList& list) {
  Json j;
  j["id"] = list.id;
  Json arr = Json::array();
  for (const Candidate& c : list.candidates) {
    Json e;
    e["name"] = c.name.str();
    e["logprob"] = c.gen_logprob ? Json(*c.gen_logprob) : Json(nullptr);
    if (c.rerank_score) e["rerank_score"] = *c.rerank_score;
    arr.push_back(std::move(e));
  }
  j["candidates"] = std::move(arr);
  if (!list.ranking.empty()) j["ranking"] = list.ranking;
  if (list.error) j["error"] = *list.error;
  if (!list.info.empty()) {
    Json info = Json::object();
    for (const auto& [k, v] : list.info) info[k] = v;
    j["info"] = std::move(info);
  }
  return j.dump();
}

CandidateList ParseCandidateLine(std::string_view line) {
  CandidateList list;
  try {
    Json j = Json::parse(line);
    list.id = j.at("id").get<std::string>();
    std::set<std::string> seen;
    for (const Json& e : j.at("candidates")) {
      std::string name = e.at("name").get<std::string>();
      if (!IsValidIdentifier(name)) {
        throw ParseError("invalid candidate name '" + name + "' for " + list.id);
      }
      if (!seen.insert(name).second) {
        throw ParseError("duplicate candidate '" + name + "' for " + list.id);
      }
      Candidate c{Identifier(name)};
      if (e.contains("logprob") && !e.at("logprob").is_null()) {
        c.gen_logprob = e.at("logprob").get<double>();
      }
      if (e.contains("rerank_score") && !e.at("rerank_score").is_null()) {
        c.rerank_score = e.at("rerank_score").get<double>();
      }
      list.candidates.push_back(std::move(c));
    }
    list.ranking = j.value("ranking", std::string());
    if (j.contains("error") && !j.at("error").is_null()) {
      list.error = j.at("error").get<std::string>();
    }
    if (j.contains("info")) {
      for (const auto& [k, v] : j.at("info").items()) {
        list.info.emplace(k, v.get<std::string>());
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad candidate line: ") + e.what());
  }
  return list;
}

std::vector<CandidateList> ReadCandidateFile(const std::filesystem::path& path) {
  std::vector<CandidateList> out;
  std::size_t lineno = 0;
  for (const std::string& line : SplitLines(ReadFile(path))) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(ParseCandidateLine(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return out;
}

void WriteCandidateFile(const std::filesystem::path& path,
                        std::span<const CandidateList> lists) {
  std::string out;
  for (const CandidateList& list : lists) {
    out += BuildCandidateLine(list);
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

}  // namespace varfix
