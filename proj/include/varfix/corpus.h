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


#ifndef VARFIX_CORPUS_H_
#define VARFIX_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "varfix/miner.h"

namespace varfix {

// A corpus is a root directory plus file ids relative to it.
struct CorpusFiles {
  std::filesystem::path root;
  std::vector<std::string> file_ids;
};

bool IsCorpusSourceFile(const std::filesystem::path& path);

// Every .cc/.cpp/.cxx/.h/.hpp file below `root`, sorted by relative path.
CorpusFiles ListCorpusDirectory(const std::filesystem::path& root);

// One path per line; blank lines and lines starting with '#' are ignored.
// Relative paths resolve against the manifest's directory.
CorpusFiles ReadCorpusManifest(const std::filesystem::path& manifest);

// A directory is listed, anything else is read as a manifest.
CorpusFiles ResolveCorpus(const std::filesystem::path& input);

struct MineOptions {
  int jobs = 1;
  // Stop emitting after this many functions (in corpus order).
  std::optional<std::size_t> max_functions;
  int placeholder_index = 1;
};

struct MineStats {
  std::size_t files_seen = 0;
  std::size_t files_parsed = 0;
  std::size_t skipped_unreadable = 0;
  std::size_t skipped_not_utf8 = 0;
  std::size_t skipped_parse_error = 0;
  std::size_t functions_extracted = 0;
  std::size_t functions_without_sites = 0;
  std::size_t examples_emitted = 0;
  std::size_t refused_placeholder_in_text = 0;
  std::size_t refused_round_trip = 0;
  // file id and reason for every skipped file, in corpus order
  std::vector<std::pair<std::string, std::string>> skipped;
};

struct MineResult {
  std::vector<MaskedExample> examples;
  MineStats stats;
};

// Masks the selected site of every function, one example per function.
// Files are processed concurrently up to `jobs`; the output order is fixed
// by (file id, byte offset) and does not depend on scheduling.
MineResult MineCorpus(const CorpusFiles& corpus, const MineOptions& options);

// Examples for one already-read file; `stats` is updated in place.
std::vector<MaskedExample> MineFile(std::string_view bytes,
                                    std::string_view file_id,
                                    MineStats& stats,
                                    const Placeholder& placeholder = Placeholder(1));

std::string MiningManifestJson(const MineStats& stats,
                               const MineOptions& options);

}  // namespace varfix

#endif  // VARFIX_CORPUS_H_
