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


#include "varfix/trainer.h"

#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/rng.h"

namespace varfix {

std::string_view LrScheduleName(LrSchedule s) {
  return s == LrSchedule::kConstant ? "constant" : "warmup_cosine";
}

LrSchedule ParseLrSchedule(std::string_view name) {
  if (name == "constant") return LrSchedule::kConstant;
  if (name == "warmup_cosine") return LrSchedule::kWarmupCosine;
  throw ValidationError("unknown schedule: " + std::string(name));
}

void TrainConfig::Validate() const {
  if (steps < 0) throw ValidationError("steps must be non-negative");
  if (batch_size < 1) throw ValidationError("batch size must be positive");
  if (!(peak_lr > 0)) throw ValidationError("learning rate must be positive");
  if (warmup_steps < 0 || warmup_steps > steps) {
    throw ValidationError("warmup steps must be in [0, steps]");
  }
  if (!(dropout_rate >= 0 && dropout_rate < 1)) {
    throw ValidationError("dropout rate must be in [0, 1)");
  }
  if (dim == 0) throw ValidationError("dimension must be positive");
  scoring.Validate();
}

double LrAtStep(int step, const TrainConfig& cfg) {
  if (step < 0 || step > cfg.steps) {
    throw ContractViolation("step outside [0, steps]");
  }
  if (cfg.schedule == LrSchedule::kConstant) return cfg.peak_lr;
  const int w = cfg.warmup_steps;
  if (w > 0 && step <= w) {
    return cfg.peak_lr * static_cast<double>(step) / static_cast<double>(w);
  }
  if (cfg.steps == w) return cfg.peak_lr;
  const double progress =
      static_cast<double>(step - w) / static_cast<double>(cfg.steps - w);
  return cfg.peak_lr * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

PairMining MineTrainingPairs(std::span<const MaskedExample> examples,
                             CandidateSource& source, std::size_t k,
                             const WindowOptions& window) {
  PairMining out;
  for (const MaskedExample& ex : examples) {
    CandidateList list = source.Candidates(ex);
    if (list.error) {
      ++out.skipped_errors;
      continue;
    }
    if (list.candidates.empty()) {
      ++out.skipped_empty;
      continue;
    }
    TrainingPair pair;
    pair.id = ex.id;
    pair.context = FlattenWindow(ExtractContextWindow(ex, window));
    pair.positive = ex.gold();
    const std::string gold_folded = AsciiLower(pair.positive);
    const std::size_t n = std::min(k, list.candidates.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& name = list.candidates[i].name.str();
      if (AsciiLower(name) != gold_folded) pair.negatives.push_back(name);
    }
    pair.no_negatives = pair.negatives.empty();
    if (pair.no_negatives) ++out.without_negatives;
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

Vocab BuildVocab(std::span<const TrainingPair> pairs) {
  std::set<std::string> tokens;
  for (const TrainingPair& p : pairs) {
    tokens.insert(p.context.begin(), p.context.end());
    for (std::string& t : NameTokens(p.positive)) tokens.insert(std::move(t));
    for (const std::string& n : p.negatives) {
      for (std::string& t : NameTokens(n)) tokens.insert(std::move(t));
    }
  }
  return Vocab::Build(tokens);
}

namespace {

struct Encoded {
  std::vector<int> context;
  std::vector<int> positive;
  std::vector<std::vector<int>> negatives;
  std::string positive_folded;
};

class Adam {
 public:
  explicit Adam(const DualEncoderModel& m) {
    for (const Matrix* mat : {&m.code_embeddings, &m.name_embeddings,
                              &m.code_projection, &m.name_projection}) {
      size_ += mat->data.size();
    }
    size_ += 1;
    m_.assign(size_, 0.0);
    v_.assign(size_, 0.0);
  }

  void Step(DualEncoderModel& model, const ModelGrads& g, double lr) {
    ++t_;
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const double c1 = 1.0 - std::pow(b1, t_);
    const double c2 = 1.0 - std::pow(b2, t_);
    std::size_t k = 0;
    auto update = [&](double& param, double grad) {
      m_[k] = b1 * m_[k] + (1.0 - b1) * grad;
      v_[k] = b2 * v_[k] + (1.0 - b2) * grad * grad;
      const double mhat = m_[k] / c1;
      const double vhat = v_[k] / c2;
      param -= lr * mhat / (std::sqrt(vhat) + eps);
      ++k;
    };
    const std::pair<Matrix*, const Matrix*> pairs[] = {
        {&model.code_embeddings, &g.code_embeddings},
        {&model.name_embeddings, &g.name_embeddings},
        {&model.code_projection, &g.code_projection},
        {&model.name_projection, &g.name_projection}};
    for (const auto& [param, grad] : pairs) {
      for (std::size_t i = 0; i < param->data.size(); ++i) {
        update(param->data[i], grad->data[i]);
      }
    }
    update(model.log_tau, g.log_tau);
  }

 private:
  std::size_t size_ = 0;
  std::vector<double> m_, v_;
  int t_ = 0;
};

std::vector<int> Dropout(const std::vector<int>& ids, double rate, Rng& rng) {
  if (rate <= 0.0) return ids;
  std::vector<int> kept;
  kept.reserve(ids.size());
  for (int id : ids) {
    if (rng.Unit() >= rate) kept.push_back(id);
  }
  if (kept.empty()) kept.push_back(ids[rng.Below(ids.size())]);
  return kept;
}

}  // namespace

TrainResult TrainReranker(std::span<const TrainingPair> pairs,
                          const TrainConfig& cfg) {
  cfg.Validate();
  if (pairs.empty()) throw ValidationError("no training pairs");
  return TrainReranker(pairs, cfg,
                       InitModel(BuildVocab(pairs), cfg.dim, cfg.seed,
                                 cfg.scoring));
}

TrainResult TrainReranker(std::span<const TrainingPair> pairs,
                          const TrainConfig& cfg, DualEncoderModel init) {
  cfg.Validate();
  if (pairs.empty()) throw ValidationError("no training pairs");
  TrainResult result;
  result.model = std::move(init);
  DualEncoderModel& model = result.model;

  std::vector<Encoded> encoded;
  encoded.reserve(pairs.size());
  for (const TrainingPair& p : pairs) {
    if (p.context.empty()) {
      throw ValidationError("training pair " + p.id + " has no context");
    }
    Encoded e;
    e.context = model.vocab.Lookup(p.context);
    e.positive = model.vocab.Lookup(NameTokens(p.positive));
    for (const std::string& n : p.negatives) {
      e.negatives.push_back(model.vocab.Lookup(NameTokens(n)));
    }
    e.positive_folded = AsciiLower(p.positive);
    encoded.push_back(std::move(e));
  }

  // Separate streams keep the batch order independent of the dropout draws.
  Rng order_rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  Rng dropout_rng(cfg.seed ^ 0xd1b54a32d192ed03ull);
  std::vector<std::size_t> order(encoded.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  order_rng.Shuffle(order);
  std::size_t cursor = 0;

  Adam adam(model);
  ModelGrads grads(model);
  const std::size_t batch = static_cast<std::size_t>(cfg.batch_size);
  std::vector<std::size_t> members;
  for (int step = 0; step < cfg.steps; ++step) {
    members.clear();
    for (std::size_t b = 0; b < batch; ++b) {
      if (cursor == order.size()) {
        order_rng.Shuffle(order);
        cursor = 0;
      }
      members.push_back(order[cursor++]);
    }
    grads.Zero();
    double loss = 0.0;
    const double weight = 1.0 / static_cast<double>(members.size());
    for (std::size_t idx : members) {
      const Encoded& e = encoded[idx];
      EncodedPair pair;
      pair.context = Dropout(e.context, cfg.dropout_rate, dropout_rng);
      pair.names.push_back(e.positive);
      pair.names.insert(pair.names.end(), e.negatives.begin(),
                        e.negatives.end());
      if (cfg.in_batch_negatives) {
        for (std::size_t other : members) {
          const Encoded& o = encoded[other];
          if (other != idx && o.positive_folded != e.positive_folded) {
            pair.names.push_back(o.positive);
          }
        }
      }
      loss += weight * InfoNceLoss(model, pair, &grads, weight);
    }
    if (!std::isfinite(loss)) {
      throw TrainingDiverged(
          "loss is not finite at step " + std::to_string(step + 1), step);
    }
    const double lr = LrAtStep(step + 1, cfg);
    adam.Step(model, grads, lr);
    result.log.push_back({step + 1, lr, loss});
  }
  return result;
}

std::string TrainLogJsonl(std::span<const TrainLogEntry> log) {
  std::string out;
  for (const TrainLogEntry& e : log) {
    nlohmann::ordered_json j;
    j["step"] = e.step;
    j["lr"] = e.lr;
    j["loss"] = e.loss;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace varfix
