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


// Reference implementations used as independent oracles by the unit tests
// and the acceptance run. They are written from the formulas, not from the
// library code.

#ifndef VARFIX_TESTS_ORACLES_H_
#define VARFIX_TESTS_ORACLES_H_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varfix/candidates.h"
#include "varfix/dual_encoder.h"
#include "varfix/ident.h"
#include "varfix/miner.h"
#include "varfix/rng.h"

namespace varfix::oracle {

inline std::vector<double> ProjectNormalize(const std::vector<double>& m,
                                            const Matrix& p) {
  std::vector<double> y(p.cols, 0.0);
  for (std::size_t i = 0; i < p.rows; ++i) {
    for (std::size_t k = 0; k < p.cols; ++k) y[k] += m[i] * p.at(i, k);
  }
  double n = 0;
  for (double v : y) n += v * v;
  n = std::sqrt(n);
  for (double& v : y) v /= n;
  return y;
}

// -log softmax of the first name's score.
inline double NaiveInfoNce(const DualEncoderModel& m, const EncodedPair& p) {
  auto encode = [&](const Matrix& emb, const Matrix& proj,
                    const std::vector<int>& ids) {
    std::vector<double> mean(m.dim, 0.0);
    for (int id : ids) {
      for (std::size_t k = 0; k < m.dim; ++k) mean[k] += emb.at(id, k) / ids.size();
    }
    return ProjectNormalize(mean, proj);
  };
  auto c = encode(m.code_embeddings, m.code_projection, p.context);
  std::vector<double> s;
  for (const auto& n : p.names) {
    auto z = encode(m.name_embeddings, m.name_projection, n);
    double cos = 0;
    for (std::size_t k = 0; k < m.dim; ++k) cos += c[k] * z[k];
    s.push_back(cos / std::exp(m.log_tau));
  }
  double denom = 0;
  for (double x : s) denom += std::exp(x);
  return -std::log(std::exp(s[0]) / denom);
}

struct GradCheckResult {
  double max_rel = 0.0;
  double max_forward_diff = 0.0;  // library loss vs NaiveInfoNce
  std::size_t checked = 0;
};

// Random model with D=8, |V|=32, a context of 1-12 tokens and 0-8
// negatives; every parameter is compared against central differences of
// NaiveInfoNce. Relative error uses max(|a|, |n|, 1e-6) as denominator.
inline void CheckInfoNceGradients(std::uint64_t seed, GradCheckResult& out) {
  Rng rng(seed);
  const std::size_t d = 8, v = 32;
  std::vector<std::string> toks = {"<unk>", "<pad>", "<id>"};
  for (std::size_t i = 3; i < v; ++i) toks.push_back("t" + std::to_string(i));
  DualEncoderModel m = InitModel(Vocab::FromTokens(toks), d, seed);
  for (Matrix* mat : {&m.code_embeddings, &m.name_embeddings,
                      &m.code_projection, &m.name_projection}) {
    for (double& x : mat->data) x = rng.Uniform(-1.0, 1.0);
  }
  m.log_tau = rng.Uniform(std::log(0.05), 0.0);
  EncodedPair pair;
  for (std::size_t n = rng.Below(12) + 1; n > 0; --n) {
    pair.context.push_back(static_cast<int>(rng.Below(v)));
  }
  const std::size_t names = 1 + rng.Below(9);
  for (std::size_t j = 0; j < names; ++j) {
    std::vector<int> ids;
    for (std::size_t n = rng.Below(3) + 1; n > 0; --n) {
      ids.push_back(static_cast<int>(rng.Below(v)));
    }
    pair.names.push_back(ids);
  }
  ModelGrads g(m);
  const double loss = InfoNceLoss(m, pair, &g);
  out.max_forward_diff =
      std::max(out.max_forward_diff, std::abs(loss - NaiveInfoNce(m, pair)));

  const double eps = 1e-4;
  auto check = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + eps;
    const double up = NaiveInfoNce(m, pair);
    param = saved - eps;
    const double down = NaiveInfoNce(m, pair);
    param = saved;
    const double numeric = (up - down) / (2 * eps);
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    out.max_rel = std::max(out.max_rel, std::abs(analytic - numeric) / scale);
    ++out.checked;
  };
  const std::pair<Matrix*, const Matrix*> mats[] = {
      {&m.code_embeddings, &g.code_embeddings},
      {&m.name_embeddings, &g.name_embeddings},
      {&m.code_projection, &g.code_projection},
      {&m.name_projection, &g.name_projection}};
  for (const auto& [param, grad] : mats) {
    for (std::size_t i = 0; i < param->data.size(); ++i) {
      check(param->data[i], grad->data[i]);
    }
  }
  check(m.log_tau, g.log_tau);
}

// FNV-1a 64 (published test vector: "a" -> 0xaf63dc4c8601ec8c).
inline std::uint64_t Fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// FNV-1a followed by the MurmurHash3 fmix64 finalizer.
inline std::size_t TrigramBucket(const std::string& trigram, std::size_t dim) {
  std::uint64_t k = Fnv1a(trigram);
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k % dim;
}

inline std::string Fold(const std::string& s) {
  std::string out;
  for (char c : s) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

inline double TrigramCosine(const std::string& a, const std::string& b,
                            std::size_t dim) {
  auto counts = [dim](const std::string& name) {
    std::string text = "^";
    auto subs = SplitSubtokensUnchecked(name);
    for (std::size_t i = 0; i < subs.size(); ++i) text += (i ? " " : "") + subs[i];
    text += "$";
    std::map<std::size_t, double> c;
    for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
      c[TrigramBucket(text.substr(i, 3), dim)] += 1.0;
    }
    return c;
  };
  auto ca = counts(a), cb = counts(b);
  double dot = 0, na = 0, nb = 0;
  for (auto& [k, v] : ca) {
    na += v * v;
    if (cb.count(k)) dot += v * cb[k];
  }
  for (auto& [k, v] : cb) nb += v * v;
  return dot / std::sqrt(na * nb);
}

struct MetricRecord {
  std::string status;
  int exact = 0;
  int top5 = 0;
  double partial = 0.0;
};

// Metrics of one example with the builtin embedder at dim 256.
inline MetricRecord Metrics(const std::string& gold,
                            const std::vector<std::string>& cands, bool errored,
                            std::size_t k) {
  MetricRecord r;
  if (errored) {
    r.status = "generation_error";
    return r;
  }
  std::vector<std::string> list(cands.begin(),
                                cands.begin() + std::min(cands.size(), k));
  if (list.empty()) {
    r.status = "parse_miss";
    return r;
  }
  r.status = "ok";
  r.exact = Fold(list[0]) == Fold(gold);
  for (std::size_t i = 0; i < list.size() && i < 5; ++i) {
    if (Fold(list[i]) == Fold(gold)) r.top5 = 1;
  }
  double p = 100.0 * (TrigramCosine(list[0], gold, 256) + 1.0) / 2.0;
  r.partial = std::min(100.0, std::max(0.0, p));
  return r;
}

struct MetricCase {
  std::vector<MaskedExample> examples;
  std::vector<CandidateList> lists;
  std::vector<MetricRecord> expected;
};

// Random golds and candidate lists (0-12 entries, case variants and
// near misses), with about 5% generator errors.
inline MetricCase RandomMetricCase(std::size_t n, std::uint64_t seed,
                                   std::size_t k) {
  static const std::vector<std::string> pool = {
      "count", "Count", "COUNT", "cnt", "counter", "i", "I", "idx", "index",
      "jsonValue", "JSONValue", "json", "value", "val", "_module", "module",
      "timer", "buf", "buffer2", "XMLParser", "x", "n", "size", "sz", "total"};
  Rng rng(seed);
  MetricCase out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "r" + std::to_string(i);
    const std::string gold = pool[rng.Below(pool.size())];
    MaskedExample ex;
    ex.id = id;
    ex.input_text = "int <ID_1> = 0;";
    ex.target_text = {{"<ID_1>", gold}};
    out.examples.push_back(ex);
    CandidateList list;
    list.id = id;
    std::vector<std::string> names;
    for (std::size_t c = rng.Below(13); c > 0; --c) {
      names.push_back(pool[rng.Below(pool.size())]);
    }
    const bool errored = rng.Below(20) == 0;
    if (errored) list.error = "generator failed";
    for (const auto& name : names) list.candidates.emplace_back(Identifier(name));
    out.lists.push_back(list);
    out.expected.push_back(Metrics(gold, names, errored, k));
  }
  return out;
}

}  // namespace varfix::oracle

#endif  // VARFIX_TESTS_ORACLES_H_
