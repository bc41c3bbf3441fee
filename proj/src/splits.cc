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


#include "varfix/splits.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"
#include "varfix/records.h"
#include "varfix/rng.h"

namespace varfix {

void SplitSpec::Validate() const {
  if (train_count == 0 || pool_size == 0 || val_size == 0) {
    throw ValidationError("split counts must be positive");
  }
  if (val_size > pool_size) {
    throw ValidationError("val_size exceeds pool_size");
  }
  if (pool_skip < train_count) {
    throw ValidationError("pool_skip must be at least train_count");
  }
}

Splits MakeSplits(std::span<const MaskedExample> examples,
                  const SplitSpec& spec) {
  spec.Validate();
  Splits out;
  const std::size_t n = examples.size();
  const std::size_t train_end = std::min(spec.train_count, n);
  out.train.assign(examples.begin(), examples.begin() + train_end);
  const std::size_t pool_begin = std::min(spec.pool_skip, n);
  const std::size_t pool_end = std::min(spec.pool_skip + spec.pool_size, n);
  out.pool.assign(examples.begin() + pool_begin, examples.begin() + pool_end);
  Rng rng(spec.seed);
  const std::size_t k = std::min(spec.val_size, out.pool.size());
  for (std::size_t i : rng.SampleIndices(out.pool.size(), k)) {
    out.val.push_back(out.pool[i]);
  }
  return out;
}

std::string SplitManifestJson(const Splits& splits, const SplitSpec& spec,
                              std::size_t examples_seen) {
  nlohmann::ordered_json j;
  j["spec"] = {{"train_count", spec.train_count},
               {"pool_skip", spec.pool_skip},
               {"pool_size", spec.pool_size},
               {"val_size", spec.val_size},
               {"seed", spec.seed}};
  j["examples_seen"] = examples_seen;
  j["actual"] = {{"train", splits.train.size()},
                 {"pool", splits.pool.size()},
                 {"val", splits.val.size()}};
  j["complete"] = splits.train.size() == spec.train_count &&
                  splits.pool.size() == spec.pool_size &&
                  splits.val.size() == spec.val_size;
  return j.dump(2) + "\n";
}

void WriteSplits(const std::filesystem::path& dir, const Splits& splits,
                 const SplitSpec& spec, std::size_t examples_seen) {
  WriteExamples(dir / "train.jsonl", splits.train);
  WriteExamples(dir / "pool.jsonl", splits.pool);
  WriteExamples(dir / "val.jsonl", splits.val);
  WriteFileAtomic(dir / "split_manifest.json",
                  SplitManifestJson(splits, spec, examples_seen));
}

}  // namespace varfix
