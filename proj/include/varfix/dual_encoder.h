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


#ifndef VARFIX_DUAL_ENCODER_H_
#define VARFIX_DUAL_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "varfix/context.h"
#include "varfix/ident.h"
#include "varfix/miner.h"

namespace varfix {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// Token strings to dense indices. Index 0 is <unk>, 1 is <pad>, 2 is <id>.
class Vocab {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kPad = 1;
  static constexpr int kHole = 2;

  Vocab();
  // Specials first, then every other token in byte order.
  static Vocab Build(const std::set<std::string>& tokens);
  static Vocab FromTokens(std::vector<std::string> tokens);

  int Lookup(std::string_view token) const;
  std::vector<int> Lookup(const std::vector<std::string>& tokens) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocab& a, const Vocab& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

struct ScoringConfig {
  double collision_penalty = 0.5;
  std::uint32_t length_threshold = 20;
  double length_penalty_per_char = 0.02;
  std::uint32_t window = 64;
  bool hints = true;

  void Validate() const;
  friend bool operator==(const ScoringConfig&, const ScoringConfig&) = default;
};

struct DualEncoderModel {
  std::size_t dim = 0;
  Vocab vocab;
  Matrix code_embeddings;  // |V| x D
  Matrix name_embeddings;  // |V| x D
  Matrix code_projection;  // D x D
  Matrix name_projection;  // D x D
  double log_tau = 0.0;    // tau = exp(log_tau) > 0
  ScoringConfig scoring;

  double tau() const;
  friend bool operator==(const DualEncoderModel&,
                         const DualEncoderModel&) = default;
};

// Parameters drawn uniform(-0.05, 0.05) in a fixed order from `seed`, with
// tau = 0.07.
DualEncoderModel InitModel(Vocab vocab, std::size_t dim, std::uint64_t seed,
                           const ScoringConfig& scoring = {});

// Mean of the rows, projected, L2-normalized. Throws ContractViolation on an
// empty token list.
std::vector<double> EncodeContextIds(const DualEncoderModel& model,
                                     std::span<const int> ids);
std::vector<double> EncodeContext(const DualEncoderModel& model,
                                  const std::vector<std::string>& tokens);
std::vector<double> EncodeName(const DualEncoderModel& model,
                               std::string_view name);

// cos(a, b) / tau for unit vectors.
double Score(const DualEncoderModel& model, std::span<const double> context,
             std::span<const double> name);

double AdjustedScore(double raw, std::string_view candidate,
                     const std::set<std::string>& in_scope,
                     const ScoringConfig& cfg);

WindowOptions WindowOptionsFor(const ScoringConfig& cfg);

// Candidates sorted by adjusted score, highest first; equal scores keep
// their input order. rerank_score holds the adjusted score.
std::vector<Candidate> Rerank(const DualEncoderModel& model,
                              const MaskedExample& example,
                              std::vector<Candidate> candidates);

// Token ids of one contrastive example; names[0] is the positive.
struct EncodedPair {
  std::vector<int> context;
  std::vector<std::vector<int>> names;
};

struct ModelGrads {
  Matrix code_embeddings;
  Matrix name_embeddings;
  Matrix code_projection;
  Matrix name_projection;
  double log_tau = 0.0;

  explicit ModelGrads(const DualEncoderModel& model);
  void Zero();
};

// InfoNCE loss of the positive against the negatives. When `grads` is set,
// `weight` times the exact gradient is added to it.
double InfoNceLoss(const DualEncoderModel& model, const EncodedPair& pair,
                   ModelGrads* grads = nullptr, double weight = 1.0);

// Versioned binary format with a checksum. Load never returns a partially
// read model; with `expected_dim`, a model of another width is rejected.
void SaveModel(const DualEncoderModel& model,
               const std::filesystem::path& path);
std::string SerializeModel(const DualEncoderModel& model);
DualEncoderModel DeserializeModel(std::string_view bytes,
                                  std::optional<std::size_t> expected_dim = {});
DualEncoderModel LoadModel(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_dim = {});

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace varfix

#endif  // VARFIX_DUAL_ENCODER_H_
