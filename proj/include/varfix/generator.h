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


#ifndef VARFIX_GENERATOR_H_
#define VARFIX_GENERATOR_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varfix/candidates.h"
#include "varfix/miner.h"
#include "varfix/prompt.h"

namespace varfix {

struct SamplingConfig {
  int k = 10;
  double temperature = 0.8;
  double top_p = 0.9;
  int max_tokens = 64;
  // One request with n = k instead of k requests with n = 1.
  bool single_request = false;
  bool request_logprobs = true;

  void Validate() const;
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
};

struct Completion {
  std::string text;
  std::optional<std::vector<TokenLogprob>> tokens;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // `n` completions for one prompt. Throws TransportError.
  virtual std::vector<Completion> Complete(
      const std::vector<ChatMessage>& messages, const SamplingConfig& cfg,
      int n) = 0;
};

struct HttpChatConfig {
  std::string endpoint;  // full URL of the chat-completions route
  std::string model;
  std::string api_key_env;  // name of the variable holding the token
  double timeout_seconds = 120.0;
};

// OpenAI-compatible chat-completions client.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpChatConfig config);
  std::vector<Completion> Complete(const std::vector<ChatMessage>& messages,
                                   const SamplingConfig& cfg, int n) override;

 private:
  HttpChatConfig config_;
};

std::string ChatRequestBody(const std::string& model,
                            const std::vector<ChatMessage>& messages,
                            const SamplingConfig& cfg, int n);

// Throws ParseError when the body has no choices.
std::vector<Completion> ParseChatResponse(std::string_view body);

struct RetryPolicy {
  int attempts = 3;
  double initial_backoff_seconds = 1.0;
  double multiplier = 2.0;
};

// Sum of the log-probabilities of the tokens overlapping
// [offset, offset + length) of the completion text. Empty when the backend
// reported no tokens or they do not spell out the text.
std::optional<double> SpanLogprob(const Completion& completion,
                                  std::size_t offset, std::size_t length);

class CandidateSource {
 public:
  virtual ~CandidateSource() = default;
  // Never throws for per-example failures; they come back in `error`.
  virtual CandidateList Candidates(const MaskedExample& example) = 0;
};

// Replays a candidate file.
class FileCandidateSource : public CandidateSource {
 public:
  explicit FileCandidateSource(const std::filesystem::path& path);
  explicit FileCandidateSource(std::vector<CandidateList> lists);
  CandidateList Candidates(const MaskedExample& example) override;

 private:
  std::map<std::string, CandidateList> by_id_;
};

struct GeneratorOptions {
  SamplingConfig sampling;
  RetryPolicy retry;
  bool strict_json = false;
  // Replaced in tests to avoid real sleeps.
  std::function<void(double)> sleep;
};

// Samples completions from a chat backend and turns them into a ranked,
// deduplicated list of at most k names.
class GeneratedCandidateSource : public CandidateSource {
 public:
  GeneratedCandidateSource(ChatBackend& backend, PromptTemplate tmpl,
                           GeneratorOptions options);
  CandidateList Candidates(const MaskedExample& example) override;

 private:
  std::vector<Completion> CallWithRetry(
      const std::vector<ChatMessage>& messages, int n, int& attempts_used);

  ChatBackend& backend_;
  PromptTemplate template_;
  GeneratorOptions options_;
};

// Candidates for every example with at most `in_flight` concurrent calls.
// Results are in input order.
std::vector<CandidateList> GenerateAll(CandidateSource& source,
                                       std::span<const MaskedExample> examples,
                                       int in_flight);

}  // namespace varfix

#endif  // VARFIX_GENERATOR_H_
