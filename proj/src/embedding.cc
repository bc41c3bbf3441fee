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


#include "varfix/embedding.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/http.h"
#include "varfix/ident.h"

namespace varfix {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

// MurmurHash3 finalizer. Three FNV rounds leave both ends of the hash
// poorly mixed, so buckets come from the finalized value.
std::uint64_t Fmix64(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

void Normalize(std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  if (sq == 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (double& x : v) x *= inv;
}

}  // namespace

std::string BuiltinEmbeddingText(std::string_view text) {
  std::string out = "^";
  bool first = true;
  for (const std::string& sub : SplitSubtokensUnchecked(text)) {
    if (!first) out.push_back(' ');
    out += sub;
    first = false;
  }
  out.push_back('$');
  return out;
}

std::vector<double> BuiltinEmbed(std::string_view text, std::size_t dim) {
  if (dim < kBuiltinMinDim) {
    throw ValidationError("builtin embedding dim must be at least " +
                          std::to_string(kBuiltinMinDim));
  }
  const std::string s = BuiltinEmbeddingText(text);
  std::vector<double> v(dim, 0.0);
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
    std::uint64_t h = kFnvOffset;
    for (std::size_t k = i; k < i + 3; ++k) {
      h ^= static_cast<unsigned char>(s[k]);
      h *= kFnvPrime;
    }
    v[Fmix64(h) % dim] += 1.0;
  }
  Normalize(v);
  return v;
}

BuiltinEmbedder::BuiltinEmbedder(std::size_t dim) : dim_(dim) {
  if (dim < kBuiltinMinDim) {
    throw ValidationError("builtin embedding dim must be at least " +
                          std::to_string(kBuiltinMinDim));
  }
}

std::vector<double> BuiltinEmbedder::Embed(const std::string& text) {
  return BuiltinEmbed(text, dim_);
}

std::string EmbeddingRequestBody(const std::string& model,
                                 const std::vector<std::string>& inputs) {
  Json body;
  body["model"] = model;
  body["input"] = inputs;
  return body.dump();
}

std::vector<std::vector<double>> ParseEmbeddingResponse(std::string_view body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("embedding response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("data") || !doc["data"].is_array()) {
    throw ParseError("embedding response has no data array");
  }
  const Json& data = doc["data"];
  std::vector<std::vector<double>> out(data.size());
  std::vector<bool> filled(data.size(), false);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Json& item = data[i];
    if (!item.is_object() || !item.contains("embedding") ||
        !item["embedding"].is_array()) {
      throw ParseError("embedding entry without an embedding array");
    }
    std::size_t index = i;
    if (item.contains("index")) {
      if (!item["index"].is_number_unsigned()) {
        throw ParseError("embedding index is not a non-negative integer");
      }
      index = item["index"].get<std::size_t>();
    }
    if (index >= out.size() || filled[index]) {
      throw ParseError("embedding indices are not a permutation");
    }
    std::vector<double> v;
    for (const Json& x : item["embedding"]) {
      if (!x.is_number()) throw ParseError("embedding value is not a number");
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw ParseError("empty embedding");
    out[index] = std::move(v);
    filled[index] = true;
  }
  return out;
}

HttpEmbedder::HttpEmbedder(HttpEmbedderConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw ValidationError("http embedder needs an endpoint");
  }
  if (config_.retry.attempts < 1) {
    throw ValidationError("retry attempts must be at least 1");
  }
  if (!config_.sleep) {
    config_.sleep = [](double s) {
      std::this_thread::sleep_for(std::chrono::duration<double>(s));
    };
  }
}

std::size_t HttpEmbedder::dim() const {
  std::lock_guard<std::mutex> lock(mu_);
  return dim_;
}

std::vector<double> HttpEmbedder::Embed(const std::string& text) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(text);
    if (it != cache_.end()) return it->second;
  }
  const std::string body = EmbeddingRequestBody(config_.model, {text});
  double backoff = config_.retry.initial_backoff_seconds;
  std::vector<double> v;
  for (int attempt = 1;; ++attempt) {
    try {
      HttpResponse res = HttpPostJson(config_.endpoint, body,
                                      BearerFromEnv(config_.api_key_env),
                                      config_.timeout_seconds);
      auto parsed = ParseEmbeddingResponse(res.body);
      if (parsed.size() != 1) {
        throw TransportError("expected one embedding, got " +
                                 std::to_string(parsed.size()),
                             false);
      }
      v = std::move(parsed.front());
      break;
    } catch (const ParseError& e) {
      throw TransportError(e.what(), false);
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= config_.retry.attempts) throw;
    }
    config_.sleep(backoff);
    backoff *= config_.retry.multiplier;
  }
  Normalize(v);
  std::lock_guard<std::mutex> lock(mu_);
  if (dim_ == 0) dim_ = v.size();
  if (v.size() != dim_) {
    throw TransportError("embedding dim changed from " + std::to_string(dim_) +
                             " to " + std::to_string(v.size()),
                         false);
  }
  cache_.emplace(text, v);
  return v;
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ContractViolation("cosine of vectors with different sizes");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace varfix
