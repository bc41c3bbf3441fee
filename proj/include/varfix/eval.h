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


#ifndef VARFIX_EVAL_H_
#define VARFIX_EVAL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/dual_encoder.h"
#include "varfix/embedding.h"
#include "varfix/generator.h"
#include "varfix/ident.h"
#include "varfix/miner.h"

namespace varfix {

// ASCII case fold only.
int ExactMatch(const Identifier& top, std::string_view gold);

// `candidates` must already be truncated to at most five entries.
int Top5Hit(std::span<const Candidate> candidates, std::string_view gold);

// 100 * (cos + 1) / 2, clamped to [0, 100].
double PartialFromCosine(double cosine);
double PartialMatch(const Identifier& top, std::string_view gold,
                    Embedder& embedder);

enum class EvalStatus { kOk, kGenerationError, kParseMiss, kEmbeddingError };

std::string_view EvalStatusName(EvalStatus status);
EvalStatus ParseEvalStatus(std::string_view name);

struct EvalRecord {
  std::string id;
  std::string gold;
  EvalStatus status = EvalStatus::kOk;
  std::vector<Candidate> top5;
  int exact = 0;
  int top5_hit = 0;
  std::optional<double> partial;
  std::optional<std::string> error;
};

bool operator==(const EvalRecord& a, const EvalRecord& b);

struct EvalConfigEcho {
  std::string backend = "file";
  int k = 10;
  bool reranker = false;
  std::string embedder = "builtin";
  std::size_t embedder_dim = kBuiltinDefaultDim;

  bool operator==(const EvalConfigEcho&) const = default;
};

struct EvalSummary {
  std::size_t n = 0;
  std::size_t n_ok = 0;
  std::size_t n_errored = 0;
  std::size_t n_generation_error = 0;
  std::size_t n_parse_miss = 0;
  std::size_t n_embedding_error = 0;
  double exact_pct = 0.0;
  double top5_pct = 0.0;
  double partial_mean = 0.0;
  EvalConfigEcho config;

  bool operator==(const EvalSummary&) const = default;
};

// Per-example metrics from a candidate list. The list is cut to `k`,
// reranked when a model is given, then cut to five.
EvalRecord ScoreExample(const MaskedExample& example, const CandidateList& list,
                        std::size_t k, const DualEncoderModel* reranker,
                        Embedder& embedder);

// Means over ok records; counts reconcile (n == n_ok + n_errored).
EvalSummary Summarize(std::span<const EvalRecord> records,
                      const EvalConfigEcho& config);

struct EvalOptions {
  std::size_t k = 10;
  const DualEncoderModel* reranker = nullptr;
  int in_flight = 1;
  EvalConfigEcho config;
};

struct EvalResult {
  EvalSummary summary;
  std::vector<EvalRecord> records;
};

EvalResult Evaluate(std::span<const MaskedExample> examples,
                    CandidateSource& source, Embedder& embedder,
                    const EvalOptions& options);

std::string SummaryJson(const EvalSummary& summary);
EvalSummary ParseSummaryJson(std::string_view text);

std::string EvalRecordLine(const EvalRecord& record);
EvalRecord ParseEvalRecordLine(std::string_view line);

void WriteSummary(const std::filesystem::path& path, const EvalSummary& summary);
EvalSummary ReadSummary(const std::filesystem::path& path);
void WriteRecords(const std::filesystem::path& path,
                  std::span<const EvalRecord> records);
std::vector<EvalRecord> ReadRecords(const std::filesystem::path& path);

}  // namespace varfix

#endif  // VARFIX_EVAL_H_
