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


#ifndef VARFIX_EMBEDDING_H_
#define VARFIX_EMBEDDING_H_

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/generator.h"

namespace varfix {

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string kind() const = 0;
  // 0 until known for backends that learn it from the first response.
  virtual std::size_t dim() const = 0;
  // Throws TransportError when the backend cannot be reached.
  virtual std::vector<double> Embed(const std::string& text) = 0;
};

inline constexpr std::size_t kBuiltinMinDim = 64;
inline constexpr std::size_t kBuiltinDefaultDim = 256;

// "^" + case-folded subtokens joined by single spaces + "$". Runs of
// characters outside [A-Za-z0-9_] separate words.
std::string BuiltinEmbeddingText(std::string_view text);

// Counts of character trigrams of BuiltinEmbeddingText hashed (FNV-1a,
// 64 bit, then the MurmurHash3 finalizer) into `dim` buckets, L2-normalized. All-zero only for empty input
// that has no trigrams, which cannot happen because of the markers.
std::vector<double> BuiltinEmbed(std::string_view text, std::size_t dim);

class BuiltinEmbedder : public Embedder {
 public:
  explicit BuiltinEmbedder(std::size_t dim = kBuiltinDefaultDim);
  std::string kind() const override { return "builtin"; }
  std::size_t dim() const override { return dim_; }
  std::vector<double> Embed(const std::string& text) override;

 private:
  std::size_t dim_;
};

struct HttpEmbedderConfig {
  // Full URL of an OpenAI-style embeddings route, e.g.
  // http://127.0.0.1:8080/v1/embeddings.
  std::string endpoint;
  std::string model = "sentence-transformers/all-MiniLM-L6-v2";
  std::string api_key_env;
  double timeout_seconds = 60.0;
  RetryPolicy retry;
  std::function<void(double)> sleep;
};

std::string EmbeddingRequestBody(const std::string& model,
                                 const std::vector<std::string>& inputs);

// Vectors ordered by the response's "index" fields. Throws ParseError.
std::vector<std::vector<double>> ParseEmbeddingResponse(std::string_view body);

// Caches by text; safe to share between threads.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(HttpEmbedderConfig config);
  std::string kind() const override { return "http"; }
  std::size_t dim() const override;
  std::vector<double> Embed(const std::string& text) override;

 private:
  HttpEmbedderConfig config_;
  mutable std::mutex mu_;
  std::size_t dim_ = 0;
  std::map<std::string, std::vector<double>> cache_;
};

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace varfix

#endif  // VARFIX_EMBEDDING_H_
