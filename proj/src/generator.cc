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


#include "varfix/generator.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/http.h"

namespace varfix {

using Json = nlohmann::ordered_json;

void SamplingConfig::Validate() const {
  if (k < 1 || k > 64) throw ValidationError("k must be in [1, 64]");
  if (!(temperature >= 0.0)) {
    throw ValidationError("temperature must be non-negative");
  }
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw ValidationError("top_p must be in (0, 1]");
  }
  if (max_tokens < 1) throw ValidationError("max_tokens must be positive");
}

std::string ChatRequestBody(const std::string& model,
                            const std::vector<ChatMessage>& messages,
                            const SamplingConfig& cfg, int n) {
  Json j;
  j["model"] = model;
  Json msgs = Json::array();
  for (const ChatMessage& m : messages) {
    msgs.push_back({{"role", m.role}, {"content", m.content}});
  }
  j["messages"] = std::move(msgs);
  j["temperature"] = cfg.temperature;
  j["top_p"] = cfg.top_p;
  j["n"] = n;
  j["max_tokens"] = cfg.max_tokens;
  if (cfg.request_logprobs) j["logprobs"] = true;
  return j.dump();
}

std::vector<Completion> ParseChatResponse(std::string_view body) {
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("choices") ||
      !j["choices"].is_array()) {
    throw ParseError("chat response without choices");
  }
  std::vector<Completion> out;
  for (const Json& choice : j["choices"]) {
    Completion c;
    const Json* content = nullptr;
    if (choice.contains("message") && choice["message"].is_object()) {
      content = &choice["message"]["content"];
    }
    if (content != nullptr && content->is_string()) {
      c.text = content->get<std::string>();
    }
    if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
        choice["logprobs"].contains("content") &&
        choice["logprobs"]["content"].is_array()) {
      std::vector<TokenLogprob> tokens;
      bool ok = true;
      for (const Json& t : choice["logprobs"]["content"]) {
        if (!t.contains("token") || !t["token"].is_string() ||
            !t.contains("logprob") || !t["logprob"].is_number()) {
          ok = false;
          break;
        }
        tokens.push_back({t["token"].get<std::string>(),
                          t["logprob"].get<double>()});
      }
      if (ok) c.tokens = std::move(tokens);
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) throw ParseError("chat response with zero choices");
  return out;
}

HttpChatBackend::HttpChatBackend(HttpChatConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw ValidationError("empty endpoint");
}

std::vector<Completion> HttpChatBackend::Complete(
    const std::vector<ChatMessage>& messages, const SamplingConfig& cfg,
    int n) {
  HttpResponse res = HttpPostJson(
      config_.endpoint, ChatRequestBody(config_.model, messages, cfg, n),
      BearerFromEnv(config_.api_key_env), config_.timeout_seconds);
  try {
    return ParseChatResponse(res.body);
  } catch (const ParseError& e) {
    throw TransportError(e.what());
  }
}

std::optional<double> SpanLogprob(const Completion& completion,
                                  std::size_t offset, std::size_t length) {
  if (!completion.tokens || completion.tokens->empty()) return std::nullopt;
  std::size_t pos = 0;
  double sum = 0.0;
  bool any = false;
  for (const TokenLogprob& t : *completion.tokens) {
    if (completion.text.compare(pos, t.token.size(), t.token) != 0) {
      return std::nullopt;
    }
    const std::size_t end = pos + t.token.size();
    if (end > offset && pos < offset + length) {
      sum += t.logprob;
      any = true;
    }
    pos = end;
  }
  if (pos != completion.text.size() || !any) return std::nullopt;
  return sum;
}

FileCandidateSource::FileCandidateSource(const std::filesystem::path& path)
    : FileCandidateSource(ReadCandidateFile(path)) {}

FileCandidateSource::FileCandidateSource(std::vector<CandidateList> lists) {
  for (CandidateList& list : lists) {
    if (by_id_.count(list.id) != 0) {
      throw ParseError("duplicate id in candidate file: " + list.id);
    }
    std::string id = list.id;
    by_id_.emplace(std::move(id), std::move(list));
  }
}

CandidateList FileCandidateSource::Candidates(const MaskedExample& example) {
  auto it = by_id_.find(example.id);
  if (it == by_id_.end()) {
    CandidateList missing;
    missing.id = example.id;
    missing.error = "no stored candidates for this id";
    return missing;
  }
  return it->second;
}

GeneratedCandidateSource::GeneratedCandidateSource(ChatBackend& backend,
                                                   PromptTemplate tmpl,
                                                   GeneratorOptions options)
    : backend_(backend),
      template_(std::move(tmpl)),
      options_(std::move(options)) {
  template_.Validate();
  options_.sampling.Validate();
  if (options_.retry.attempts < 1) {
    throw ValidationError("retry attempts must be positive");
  }
  if (!options_.sleep) {
    options_.sleep = [](double seconds) {
      std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    };
  }
}

std::vector<Completion> GeneratedCandidateSource::CallWithRetry(
    const std::vector<ChatMessage>& messages, int n, int& attempts_used) {
  double backoff = options_.retry.initial_backoff_seconds;
  for (int attempt = 1;; ++attempt) {
    ++attempts_used;
    try {
      return backend_.Complete(messages, options_.sampling, n);
    } catch (const TransportError& e) {
      if (!e.retryable() || attempt >= options_.retry.attempts) throw;
    }
    options_.sleep(backoff);
    backoff *= options_.retry.multiplier;
  }
}

namespace {

// Offset of `name` as the value of `token` inside the parsed object, or of
// its first quoted appearance, or of its first standalone appearance.
std::size_t LocateName(const std::string& text, const MappingParse& parsed,
                       const std::string& token, const std::string& name) {
  const std::string quoted = "\"" + name + "\"";
  std::size_t key = text.find("\"" + token + "\"", parsed.object_offset);
  if (key != std::string::npos) {
    std::size_t at = text.find(quoted, key + token.size() + 2);
    if (at != std::string::npos) return at + 1;
  }
  std::size_t at = text.find(quoted, parsed.object_offset);
  if (at != std::string::npos) return at + 1;
  auto occ = FindStandaloneOccurrences(text, name);
  return occ.empty() ? std::string::npos : occ.front();
}

}  // namespace

CandidateList GeneratedCandidateSource::Candidates(
    const MaskedExample& example) {
  CandidateList list;
  list.id = example.id;
  const SamplingConfig& cfg = options_.sampling;
  const std::vector<ChatMessage> messages = BuildPrompt(template_, example);
  std::vector<Completion> completions;
  int attempts = 0;
  try {
    if (cfg.single_request) {
      completions = CallWithRetry(messages, cfg.k, attempts);
    } else {
      for (int i = 0; i < cfg.k; ++i) {
        for (Completion& c : CallWithRetry(messages, 1, attempts)) {
          completions.push_back(std::move(c));
        }
      }
    }
  } catch (const TransportError& e) {
    list.error = e.what();
    list.info["attempts"] = std::to_string(attempts);
    return list;
  }

  const std::string& token = example.placeholder();
  std::vector<Candidate> raw;
  int unparsable = 0, rejected = 0;
  for (const Completion& c : completions) {
    try {
      MappingParse parsed = ParseJsonMapping(c.text, options_.strict_json);
      rejected += static_cast<int>(parsed.rejected.size());
      auto it = parsed.mapping.find(token);
      if (it == parsed.mapping.end()) {
        ++unparsable;
        continue;
      }
      std::optional<double> logprob;
      std::size_t at = LocateName(c.text, parsed, token, it->second);
      if (at != std::string::npos) {
        logprob = SpanLogprob(c, at, it->second.size());
      }
      raw.emplace_back(Identifier(it->second), logprob);
    } catch (const ParseError&) {
      std::vector<Identifier> numbered = ParseNumberedCandidates(c.text);
      if (numbered.empty()) ++unparsable;
      for (Identifier& name : numbered) raw.emplace_back(std::move(name));
    }
  }

  list.candidates = DedupCandidates(std::move(raw));
  const bool all_logprob =
      !list.candidates.empty() &&
      std::all_of(list.candidates.begin(), list.candidates.end(),
                  [](const Candidate& c) { return c.gen_logprob.has_value(); });
  if (all_logprob) {
    std::stable_sort(list.candidates.begin(), list.candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       return *a.gen_logprob > *b.gen_logprob;
                     });
    list.ranking = std::string(kRankLogprob);
  } else {
    list.ranking = std::string(kRankSampleOrder);
  }
  if (list.candidates.size() > static_cast<std::size_t>(cfg.k)) {
    list.candidates.erase(list.candidates.begin() + cfg.k,
                          list.candidates.end());
  }
  list.info["request_mode"] = cfg.single_request ? "n" : "repeated";
  list.info["completions"] = std::to_string(completions.size());
  list.info["attempts"] = std::to_string(attempts);
  if (unparsable > 0) list.info["unparsable"] = std::to_string(unparsable);
  if (rejected > 0) list.info["rejected_entries"] = std::to_string(rejected);
  return list;
}

std::vector<CandidateList> GenerateAll(CandidateSource& source,
                                       std::span<const MaskedExample> examples,
                                       int in_flight) {
  const std::size_t n = examples.size();
  std::vector<CandidateList> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      out[i] = source.Candidates(examples[i]);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, in_flight)), n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace varfix
