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


#include "varfix/eval.h"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"

namespace varfix {
namespace {

using Json = nlohmann::ordered_json;

bool SameCandidate(const Candidate& a, const Candidate& b) {
  return a.name == b.name && a.gen_logprob == b.gen_logprob &&
         a.rerank_score == b.rerank_score;
}

Json OptionalNumber(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> ReadOptionalNumber(const Json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) {
    throw ParseError(std::string("field '") + key + "' is not a number");
  }
  return obj.at(key).get<double>();
}

Json ParseObject(std::string_view text, const char* what) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + " is not JSON: " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(what) + " is not an object");
  return doc;
}

template <typename T>
T Field(const Json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

int ExactMatch(const Identifier& top, std::string_view gold) {
  if (gold.empty()) throw ContractViolation("gold name is empty");
  return AsciiLower(top.str()) == AsciiLower(gold) ? 1 : 0;
}

int Top5Hit(std::span<const Candidate> candidates, std::string_view gold) {
  if (candidates.size() > 5) {
    throw ContractViolation("Top5Hit expects at most five candidates");
  }
  for (const Candidate& c : candidates) {
    if (ExactMatch(c.name, gold)) return 1;
  }
  return 0;
}

double PartialFromCosine(double cosine) {
  return std::clamp(100.0 * (cosine + 1.0) / 2.0, 0.0, 100.0);
}

double PartialMatch(const Identifier& top, std::string_view gold,
                    Embedder& embedder) {
  return PartialFromCosine(
      Cosine(embedder.Embed(top.str()), embedder.Embed(std::string(gold))));
}

std::string_view EvalStatusName(EvalStatus status) {
  switch (status) {
    case EvalStatus::kOk:
      return "ok";
    case EvalStatus::kGenerationError:
      return "generation_error";
    case EvalStatus::kParseMiss:
      return "parse_miss";
    case EvalStatus::kEmbeddingError:
      return "embedding_error";
  }
  return "ok";
}

EvalStatus ParseEvalStatus(std::string_view name) {
  for (EvalStatus s : {EvalStatus::kOk, EvalStatus::kGenerationError,
                       EvalStatus::kParseMiss, EvalStatus::kEmbeddingError}) {
    if (EvalStatusName(s) == name) return s;
  }
  throw ParseError("unknown eval status: " + std::string(name));
}

bool operator==(const EvalRecord& a, const EvalRecord& b) {
  return a.id == b.id && a.gold == b.gold && a.status == b.status &&
         a.exact == b.exact && a.top5_hit == b.top5_hit &&
         a.partial == b.partial && a.error == b.error &&
         std::equal(a.top5.begin(), a.top5.end(), b.top5.begin(), b.top5.end(),
                    SameCandidate);
}

EvalRecord ScoreExample(const MaskedExample& example, const CandidateList& list,
                        std::size_t k, const DualEncoderModel* reranker,
                        Embedder& embedder) {
  EvalRecord rec;
  rec.id = example.id;
  rec.gold = example.gold();
  if (list.error) {
    rec.status = EvalStatus::kGenerationError;
    rec.error = list.error;
    return rec;
  }
  std::vector<Candidate> ranked = list.candidates;
  if (ranked.size() > k) ranked.erase(ranked.begin() + k, ranked.end());
  if (ranked.empty()) {
    rec.status = EvalStatus::kParseMiss;
    return rec;
  }
  if (reranker) ranked = Rerank(*reranker, example, std::move(ranked));
  if (ranked.size() > 5) ranked.erase(ranked.begin() + 5, ranked.end());
  rec.top5 = std::move(ranked);
  rec.exact = ExactMatch(rec.top5.front().name, rec.gold);
  rec.top5_hit = Top5Hit(rec.top5, rec.gold);
  if (rec.exact && !rec.top5_hit) {
    throw ContractViolation("exact match without top-5 hit for " + rec.id);
  }
  try {
    rec.partial = PartialMatch(rec.top5.front().name, rec.gold, embedder);
  } catch (const TransportError& e) {
    rec.status = EvalStatus::kEmbeddingError;
    rec.error = e.what();
  }
  return rec;
}

EvalSummary Summarize(std::span<const EvalRecord> records,
                      const EvalConfigEcho& config) {
  EvalSummary s;
  s.config = config;
  s.n = records.size();
  double exact = 0.0, top5 = 0.0, partial = 0.0;
  for (const EvalRecord& r : records) {
    if (r.exact && !r.top5_hit) {
      throw ContractViolation("exact match without top-5 hit for " + r.id);
    }
    switch (r.status) {
      case EvalStatus::kOk:
        ++s.n_ok;
        exact += r.exact;
        top5 += r.top5_hit;
        partial += r.partial.value_or(0.0);
        break;
      case EvalStatus::kGenerationError:
        ++s.n_generation_error;
        break;
      case EvalStatus::kParseMiss:
        ++s.n_parse_miss;
        break;
      case EvalStatus::kEmbeddingError:
        ++s.n_embedding_error;
        break;
    }
  }
  s.n_errored = s.n - s.n_ok;
  if (s.n_ok > 0) {
    const double n = static_cast<double>(s.n_ok);
    s.exact_pct = 100.0 * exact / n;
    s.top5_pct = 100.0 * top5 / n;
    s.partial_mean = partial / n;
  }
  return s;
}

EvalResult Evaluate(std::span<const MaskedExample> examples,
                    CandidateSource& source, Embedder& embedder,
                    const EvalOptions& options) {
  if (options.k == 0) throw ValidationError("k must be positive");
  const std::vector<CandidateList> lists =
      GenerateAll(source, examples, std::max(1, options.in_flight));
  EvalResult result;
  result.records.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    result.records.push_back(ScoreExample(examples[i], lists[i], options.k,
                                          options.reranker, embedder));
  }
  result.summary = Summarize(result.records, options.config);
  return result;
}

std::string SummaryJson(const EvalSummary& s) {
  Json doc;
  doc["n"] = s.n;
  doc["n_ok"] = s.n_ok;
  doc["n_errored"] = s.n_errored;
  doc["exact_pct"] = s.exact_pct;
  doc["top5_pct"] = s.top5_pct;
  doc["partial_mean"] = s.partial_mean;
  doc["errors"] = {{"generation_error", s.n_generation_error},
                   {"parse_miss", s.n_parse_miss},
                   {"embedding_error", s.n_embedding_error}};
  doc["config"] = {{"backend", s.config.backend},
                   {"k", s.config.k},
                   {"reranker", s.config.reranker},
                   {"embedder", s.config.embedder},
                   {"embedder_dim", s.config.embedder_dim}};
  return doc.dump(2) + "\n";
}

EvalSummary ParseSummaryJson(std::string_view text) {
  const Json doc = ParseObject(text, "summary");
  EvalSummary s;
  s.n = Field<std::size_t>(doc, "n");
  s.n_ok = Field<std::size_t>(doc, "n_ok");
  s.n_errored = Field<std::size_t>(doc, "n_errored");
  s.exact_pct = Field<double>(doc, "exact_pct");
  s.top5_pct = Field<double>(doc, "top5_pct");
  s.partial_mean = Field<double>(doc, "partial_mean");
  if (doc.contains("errors")) {
    const Json& e = doc["errors"];
    s.n_generation_error = Field<std::size_t>(e, "generation_error");
    s.n_parse_miss = Field<std::size_t>(e, "parse_miss");
    s.n_embedding_error = Field<std::size_t>(e, "embedding_error");
  }
  if (!doc.contains("config")) throw ParseError("summary has no config");
  const Json& c = doc["config"];
  s.config.backend = Field<std::string>(c, "backend");
  s.config.k = Field<int>(c, "k");
  s.config.reranker = Field<bool>(c, "reranker");
  s.config.embedder = Field<std::string>(c, "embedder");
  s.config.embedder_dim = Field<std::size_t>(c, "embedder_dim");
  if (s.n != s.n_ok + s.n_errored) throw ParseError("summary counts disagree");
  return s;
}

std::string EvalRecordLine(const EvalRecord& r) {
  Json doc;
  doc["id"] = r.id;
  doc["gold"] = r.gold;
  doc["status"] = EvalStatusName(r.status);
  Json top = Json::array();
  for (const Candidate& c : r.top5) {
    top.push_back({{"name", c.name.str()},
                   {"logprob", OptionalNumber(c.gen_logprob)},
                   {"rerank_score", OptionalNumber(c.rerank_score)}});
  }
  doc["top5"] = std::move(top);
  doc["exact"] = r.exact;
  doc["top5_hit"] = r.top5_hit;
  doc["partial"] = OptionalNumber(r.partial);
  if (r.error) doc["error"] = *r.error;
  return doc.dump();
}

EvalRecord ParseEvalRecordLine(std::string_view line) {
  const Json doc = ParseObject(line, "eval record");
  EvalRecord r;
  r.id = Field<std::string>(doc, "id");
  r.gold = Field<std::string>(doc, "gold");
  r.status = ParseEvalStatus(Field<std::string>(doc, "status"));
  if (!doc.contains("top5") || !doc["top5"].is_array()) {
    throw ParseError("eval record has no top5 array");
  }
  for (const Json& e : doc["top5"]) {
    const std::string name = Field<std::string>(e, "name");
    if (!IsValidIdentifier(name)) throw ParseError("bad candidate name: " + name);
    Candidate c{Identifier(name), ReadOptionalNumber(e, "logprob")};
    c.rerank_score = ReadOptionalNumber(e, "rerank_score");
    r.top5.push_back(std::move(c));
  }
  r.exact = Field<int>(doc, "exact");
  r.top5_hit = Field<int>(doc, "top5_hit");
  r.partial = ReadOptionalNumber(doc, "partial");
  if (doc.contains("error")) r.error = Field<std::string>(doc, "error");
  return r;
}

void WriteSummary(const std::filesystem::path& path, const EvalSummary& summary) {
  WriteFileAtomic(path, SummaryJson(summary));
}

EvalSummary ReadSummary(const std::filesystem::path& path) {
  return ParseSummaryJson(ReadFile(path));
}

void WriteRecords(const std::filesystem::path& path,
                  std::span<const EvalRecord> records) {
  std::string out;
  for (const EvalRecord& r : records) {
    out += EvalRecordLine(r);
    out.push_back('\n');
  }
  WriteFileAtomic(path, out);
}

std::vector<EvalRecord> ReadRecords(const std::filesystem::path& path) {
  std::vector<EvalRecord> out;
  for (const std::string& line : SplitLines(ReadFile(path))) {
    if (line.empty()) continue;
    out.push_back(ParseEvalRecordLine(line));
  }
  return out;
}

}  // namespace varfix
