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


#ifndef VARFIX_SYNTHETIC_H_
#define VARFIX_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "varfix/candidates.h"
#include "varfix/miner.h"

namespace varfix {

// Masked functions whose context contains a cue token that determines the
// first subtoken of the gold name, each with the gold name and `decoys`
// other names in random order (as a generator would return them).
struct CueCorpus {
  std::vector<MaskedExample> examples;
  std::vector<CandidateList> candidates;  // parallel to examples
};

CueCorpus MakeCueCorpus(std::size_t n, std::uint64_t seed,
                        std::size_t decoys = 9);

}  // namespace varfix

#endif  // VARFIX_SYNTHETIC_H_
