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


#ifndef VARFIX_SPLITS_H_
#define VARFIX_SPLITS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "varfix/miner.h"

namespace varfix {

struct SplitSpec {
  std::size_t train_count = 31000;
  std::size_t pool_skip = 31000;
  std::size_t pool_size = 1000;
  std::size_t val_size = 200;
  std::uint64_t seed = 42;

  // Throws ValidationError when a count is zero, val_size > pool_size, or
  // the pool would start inside the training range.
  void Validate() const;
};

struct Splits {
  std::vector<MaskedExample> train;
  std::vector<MaskedExample> pool;
  // Seeded sample of the pool, kept in pool order.
  std::vector<MaskedExample> val;
};

// Train is the first train_count examples; the pool is the pool_size
// examples after skipping pool_skip. A short stream yields short splits.
Splits MakeSplits(std::span<const MaskedExample> examples,
                  const SplitSpec& spec);

// Writes train.jsonl, pool.jsonl, val.jsonl and split_manifest.json.
void WriteSplits(const std::filesystem::path& dir, const Splits& splits,
                 const SplitSpec& spec, std::size_t examples_seen);

std::string SplitManifestJson(const Splits& splits, const SplitSpec& spec,
                              std::size_t examples_seen);

}  // namespace varfix

#endif  // VARFIX_SPLITS_H_
