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


#ifndef VARFIX_TRAINER_H_
#define VARFIX_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/dual_encoder.h"
#include "varfix/generator.h"

namespace varfix {

enum class LrSchedule { kConstant, kWarmupCosine };

std::string_view LrScheduleName(LrSchedule s);
LrSchedule ParseLrSchedule(std::string_view name);

struct TrainConfig {
  int steps = 2000;
  int batch_size = 32;
  double peak_lr = 2e-4;
  int warmup_steps = 1000;
  LrSchedule schedule = LrSchedule::kWarmupCosine;
  double dropout_rate = 0.1;
  std::uint64_t seed = 0;
  std::size_t dim = 64;
  // Other positives of the batch as extra negatives.
  bool in_batch_negatives = false;
  ScoringConfig scoring;

  void Validate() const;
};

// Learning rate after `step` updates, 0 <= step <= steps.
double LrAtStep(int step, const TrainConfig& cfg);

struct TrainingPair {
  std::string id;
  std::vector<std::string> context;  // flattened window
  std::string positive;
  std::vector<std::string> negatives;
  bool no_negatives = false;
};

struct PairMining {
  std::vector<TrainingPair> pairs;
  std::size_t skipped_errors = 0;
  std::size_t skipped_empty = 0;
  std::size_t without_negatives = 0;
};

// One pair per example with a non-empty candidate list: the gold name is
// the positive, the first k candidates other than the gold (compared
// case-insensitively) are the negatives.
PairMining MineTrainingPairs(std::span<const MaskedExample> examples,
                             CandidateSource& source, std::size_t k,
                             const WindowOptions& window);

// Every context token and name subtoken of the pairs.
Vocab BuildVocab(std::span<const TrainingPair> pairs);

struct TrainLogEntry {
  int step = 0;
  double lr = 0.0;
  double loss = 0.0;
};

class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(const std::string& what, int last_good_step)
      : std::runtime_error(what), last_good_step_(last_good_step) {}
  int last_good_step() const { return last_good_step_; }

 private:
  int last_good_step_;
};

struct TrainResult {
  DualEncoderModel model;
  std::vector<TrainLogEntry> log;
};

// Adam over seeded shuffles of the pairs. Deterministic for a given config;
// throws TrainingDiverged when the loss stops being finite.
TrainResult TrainReranker(std::span<const TrainingPair> pairs,
                          const TrainConfig& cfg);

// Same, starting from the given model (its vocabulary is used as is).
TrainResult TrainReranker(std::span<const TrainingPair> pairs,
                          const TrainConfig& cfg, DualEncoderModel init);

std::string TrainLogJsonl(std::span<const TrainLogEntry> log);

}  // namespace varfix

#endif  // VARFIX_TRAINER_H_
