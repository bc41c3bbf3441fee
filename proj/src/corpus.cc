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


#include "varfix/corpus.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include <nlohmann/json.hpp>

#include "varfix/errors.h"
#include "varfix/io.h"

namespace varfix {

namespace fs = std::filesystem;

namespace {

enum class FunctionOutcome { kEmitted, kNoSites, kRefusedPlaceholder,
                             kRefusedRoundTrip };

struct FileOutcome {
  MineStats file_stats;  // file-level counters only
  std::vector<FunctionOutcome> functions;
  std::vector<MaskedExample> examples;  // one per kEmitted, in order
};

FileOutcome MineBytes(std::string_view bytes, std::string_view file_id,
                      const Placeholder& placeholder) {
  FileOutcome out;
  out.file_stats.files_seen = 1;
  ExtractResult extracted = ExtractFunctionsWithStatus(bytes, file_id);
  switch (extracted.status) {
    case FileStatus::kNotUtf8:
      out.file_stats.skipped_not_utf8 = 1;
      out.file_stats.skipped.emplace_back(file_id, extracted.message);
      return out;
    case FileStatus::kParseError:
      out.file_stats.skipped_parse_error = 1;
      out.file_stats.skipped.emplace_back(file_id, extracted.message);
      return out;
    case FileStatus::kOk:
      break;
  }
  out.file_stats.files_parsed = 1;
  for (const SourceFunction& fn : extracted.functions) {
    std::vector<IdentifierSite> sites = CollectIdentifiers(fn);
    if (sites.empty()) {
      out.functions.push_back(FunctionOutcome::kNoSites);
      continue;
    }
    MaskRefusal why = MaskRefusal::kNone;
    auto ex = MaskIdentifier(fn, SelectMaskTarget(sites), placeholder, sites,
                             &why);
    if (!ex) {
      out.functions.push_back(why == MaskRefusal::kPlaceholderInText
                                  ? FunctionOutcome::kRefusedPlaceholder
                                  : FunctionOutcome::kRefusedRoundTrip);
      continue;
    }
    out.functions.push_back(FunctionOutcome::kEmitted);
    out.examples.push_back(std::move(*ex));
  }
  return out;
}

FileOutcome MineOne(const CorpusFiles& corpus, const std::string& id,
                    const Placeholder& placeholder) {
  std::string bytes;
  try {
    bytes = ReadFile(corpus.root / id);
  } catch (const IoError& e) {
    FileOutcome out;
    out.file_stats.files_seen = 1;
    out.file_stats.skipped_unreadable = 1;
    out.file_stats.skipped.emplace_back(id, e.what());
    return out;
  }
  return MineBytes(bytes, id, placeholder);
}

// Folds one file into the totals, stopping once `cap` functions have been
// counted. Returns false when the cap was reached.
bool Fold(FileOutcome& outcome, std::size_t cap, MineStats& stats,
          std::vector<MaskedExample>& examples) {
  const MineStats& fs = outcome.file_stats;
  stats.files_seen += fs.files_seen;
  stats.files_parsed += fs.files_parsed;
  stats.skipped_unreadable += fs.skipped_unreadable;
  stats.skipped_not_utf8 += fs.skipped_not_utf8;
  stats.skipped_parse_error += fs.skipped_parse_error;
  stats.skipped.insert(stats.skipped.end(), fs.skipped.begin(),
                       fs.skipped.end());
  std::size_t next_example = 0;
  for (FunctionOutcome f : outcome.functions) {
    if (stats.functions_extracted >= cap) return false;
    ++stats.functions_extracted;
    switch (f) {
      case FunctionOutcome::kEmitted:
        examples.push_back(std::move(outcome.examples[next_example++]));
        ++stats.examples_emitted;
        break;
      case FunctionOutcome::kNoSites:
        ++stats.functions_without_sites;
        break;
      case FunctionOutcome::kRefusedPlaceholder:
        ++stats.refused_placeholder_in_text;
        break;
      case FunctionOutcome::kRefusedRoundTrip:
        ++stats.refused_round_trip;
        break;
    }
  }
  return stats.functions_extracted < cap;
}

}  // namespace

bool IsCorpusSourceFile(const fs::path& path) {
  static constexpr std::string_view kExt[] = {".cc", ".cpp", ".cxx", ".h",
                                              ".hpp"};
  const std::string ext = path.extension().string();
  return std::find(std::begin(kExt), std::end(kExt), ext) != std::end(kExt);
}

CorpusFiles ListCorpusDirectory(const fs::path& root) {
  CorpusFiles corpus;
  corpus.root = root;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("not a directory: " + root.string());
  }
  for (auto it = fs::recursive_directory_iterator(
           root, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw IoError("cannot list " + root.string() + ": " + ec.message());
    if (!it->is_regular_file(ec) || !IsCorpusSourceFile(it->path())) continue;
    corpus.file_ids.push_back(
        it->path().lexically_relative(root).generic_string());
  }
  std::sort(corpus.file_ids.begin(), corpus.file_ids.end());
  return corpus;
}

CorpusFiles ReadCorpusManifest(const fs::path& manifest) {
  CorpusFiles corpus;
  corpus.root = manifest.parent_path();
  for (std::string& line : SplitLines(ReadFile(manifest))) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    corpus.file_ids.push_back(fs::path(line).generic_string());
  }
  std::sort(corpus.file_ids.begin(), corpus.file_ids.end());
  corpus.file_ids.erase(
      std::unique(corpus.file_ids.begin(), corpus.file_ids.end()),
      corpus.file_ids.end());
  return corpus;
}

CorpusFiles ResolveCorpus(const fs::path& input) {
  std::error_code ec;
  if (fs::is_directory(input, ec)) return ListCorpusDirectory(input);
  return ReadCorpusManifest(input);
}

std::vector<MaskedExample> MineFile(std::string_view bytes,
                                    std::string_view file_id,
                                    MineStats& stats,
                                    const Placeholder& placeholder) {
  FileOutcome outcome = MineBytes(bytes, file_id, placeholder);
  std::vector<MaskedExample> examples;
  Fold(outcome, static_cast<std::size_t>(-1), stats, examples);
  return examples;
}

MineResult MineCorpus(const CorpusFiles& corpus, const MineOptions& options) {
  const std::size_t n = corpus.file_ids.size();
  const Placeholder placeholder(options.placeholder_index);
  const int jobs = std::max(1, options.jobs);
  const std::size_t cap =
      options.max_functions.value_or(static_cast<std::size_t>(-1));
  // Files are mined a chunk at a time and folded in listing order, so a
  // capped run stops reading soon after the cap regardless of job count.
  const std::size_t chunk = 32 * static_cast<std::size_t>(jobs);

  MineResult result;
  std::vector<FileOutcome> outcomes;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(n, begin + chunk);
    outcomes.assign(end - begin, FileOutcome{});
    std::atomic<std::size_t> next{begin};
    auto worker = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        outcomes[i - begin] = MineOne(corpus, corpus.file_ids[i], placeholder);
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    for (FileOutcome& outcome : outcomes) {
      if (!Fold(outcome, cap, result.stats, result.examples)) return result;
    }
  }
  return result;
}

std::string MiningManifestJson(const MineStats& stats,
                               const MineOptions& options) {
  nlohmann::ordered_json j;
  j["files_seen"] = stats.files_seen;
  j["files_parsed"] = stats.files_parsed;
  j["files_skipped"] = {
      {"unreadable", stats.skipped_unreadable},
      {"not_utf8", stats.skipped_not_utf8},
      {"parse_error", stats.skipped_parse_error},
  };
  j["functions_extracted"] = stats.functions_extracted;
  j["functions_without_sites"] = stats.functions_without_sites;
  j["examples_emitted"] = stats.examples_emitted;
  j["refusals"] = {
      {"placeholder_in_text", stats.refused_placeholder_in_text},
      {"round_trip", stats.refused_round_trip},
  };
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const auto& [file, reason] : stats.skipped) {
    skipped.push_back({{"file_id", file}, {"reason", reason}});
  }
  j["skipped"] = std::move(skipped);
  j["options"] = {{"jobs", options.jobs},
                  {"placeholder", Placeholder(options.placeholder_index).token()}};
  if (options.max_functions) {
    j["options"]["max_functions"] = *options.max_functions;
  }
  return j.dump(2) + "\n";
}

}  // namespace varfix
