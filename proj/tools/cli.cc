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


#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "varfix/candidates.h"
#include "varfix/corpus.h"
#include "varfix/dual_encoder.h"
#include "varfix/embedding.h"
#include "varfix/errors.h"
#include "varfix/eval.h"
#include "varfix/generator.h"
#include "varfix/io.h"
#include "varfix/prompt.h"
#include "varfix/records.h"
#include "varfix/splits.h"
#include "varfix/synthetic.h"
#include "varfix/trainer.h"

namespace varfix {
namespace {

namespace fs = std::filesystem;

// Input or configuration problem detected by the command itself.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExitWith : public std::runtime_error {
 public:
  ExitWith(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::string Hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

fs::path WithSuffix(const fs::path& path, const std::string& suffix) {
  return fs::path(path.string() + suffix);
}

void WriteResolvedConfig(const CLI::App& sub, const fs::path& path) {
  // Loadable again with `varfix --config <path> <subcommand>`.
  WriteFileAtomic(path, "[" + sub.get_name() + "]\n" +
                            sub.config_to_str(true, false));
}

void RequireFile(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string(flag) + " is required");
  if (!fs::is_regular_file(path)) {
    throw InputError(std::string(flag) + ": no such file: " + path);
  }
}

// --- mine -----------------------------------------------------------------

struct MineArgs {
  std::string input_dir;
  std::string manifest;
  std::string out;
  std::int64_t max_functions = -1;
  int placeholder = 1;
  int jobs = 1;
};

int RunMine(const MineArgs& a, const CLI::App& sub, std::ostream& out) {
  if (a.input_dir.empty() == a.manifest.empty()) {
    throw InputError("give exactly one of --input-dir or --manifest");
  }
  if (a.placeholder < 1) throw InputError("--placeholder must be at least 1");
  if (a.jobs < 1) throw InputError("--jobs must be at least 1");
  CorpusFiles corpus;
  if (!a.input_dir.empty()) {
    if (!fs::is_directory(a.input_dir)) {
      throw InputError("--input-dir: not a readable directory: " + a.input_dir);
    }
    corpus = ListCorpusDirectory(a.input_dir);
  } else {
    RequireFile(a.manifest, "--manifest");
    corpus = ReadCorpusManifest(a.manifest);
  }
  MineOptions options;
  options.jobs = a.jobs;
  options.placeholder_index = a.placeholder;
  if (a.max_functions >= 0) {
    options.max_functions = static_cast<std::size_t>(a.max_functions);
  }
  MineResult result = MineCorpus(corpus, options);
  const fs::path path(a.out);
  WriteExamples(path, result.examples);
  WriteFileAtomic(WithSuffix(path, ".manifest.json"),
                  MiningManifestJson(result.stats, options));
  WriteResolvedConfig(sub, WithSuffix(path, ".config.toml"));
  const MineStats& s = result.stats;
  out << "files: " << s.files_seen << " seen, " << s.files_parsed
      << " parsed, "
      << s.skipped_unreadable + s.skipped_not_utf8 + s.skipped_parse_error
      << " skipped\n"
      << "functions: " << s.functions_extracted << " extracted, "
      << s.functions_without_sites << " without sites\n"
      << "examples: " << s.examples_emitted << "\n";
  return kExitOk;
}

// --- split ----------------------------------------------------------------

struct SplitArgs {
  std::string in;
  std::string out_dir;
  SplitSpec spec;
};

int RunSplit(const SplitArgs& a, const CLI::App& sub, std::ostream& out) {
  RequireFile(a.in, "--in");
  a.spec.Validate();
  const std::vector<MaskedExample> examples = ReadExamples(a.in);
  const Splits splits = MakeSplits(examples, a.spec);
  WriteSplits(a.out_dir, splits, a.spec, examples.size());
  WriteResolvedConfig(sub, fs::path(a.out_dir) / "split.config.toml");
  out << "examples: " << examples.size() << "\n"
      << "train: " << splits.train.size() << "\n"
      << "pool: " << splits.pool.size() << "\n"
      << "val: " << splits.val.size() << "\n";
  return kExitOk;
}

// --- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string in;
  std::string out;
  std::string backend = "http";
  std::string candidates_file;
  std::string endpoint;
  std::string model;
  std::string api_key_env = "VARFIX_API_KEY";
  int shots = 0;
  std::string shots_file;
  SamplingConfig sampling;
  double timeout = 120.0;
  int retries = 3;
  double backoff = 1.0;
  int in_flight = 4;
  int checkpoint_every = 16;
  bool retry_errors = false;
};

int RunGenerate(const GenerateArgs& a, const CLI::App& sub, std::ostream& out) {
  RequireFile(a.in, "--in");
  if (a.out.empty()) throw InputError("--out is required");
  if (a.shots == 3 && a.shots_file.empty()) {
    throw InputError("--shots 3 needs --shots-file");
  }
  if (a.in_flight < 1 || a.checkpoint_every < 1 || a.retries < 1) {
    throw InputError("--in-flight, --checkpoint-every and --retries must be positive");
  }
  a.sampling.Validate();
  const std::vector<MaskedExample> examples = ReadExamples(a.in);

  std::unique_ptr<ChatBackend> backend;
  std::unique_ptr<CandidateSource> source;
  if (a.backend == "file") {
    RequireFile(a.candidates_file, "--candidates-file");
    source = std::make_unique<FileCandidateSource>(fs::path(a.candidates_file));
  } else {
    if (a.endpoint.empty() || a.model.empty()) {
      throw InputError("--backend http needs --endpoint and --model");
    }
    PromptTemplate tmpl = ZeroShotTemplate();
    if (a.shots == 3) {
      RequireFile(a.shots_file, "--shots-file");
      tmpl = LoadPromptTemplate(a.shots_file);
      if (tmpl.shots.size() != 3) {
        throw InputError("--shots-file must hold exactly 3 shots, found " +
                         std::to_string(tmpl.shots.size()));
      }
    }
    backend = std::make_unique<HttpChatBackend>(
        HttpChatConfig{a.endpoint, a.model, a.api_key_env, a.timeout});
    GeneratorOptions options;
    options.sampling = a.sampling;
    options.retry.attempts = a.retries;
    options.retry.initial_backoff_seconds = a.backoff;
    source = std::make_unique<GeneratedCandidateSource>(*backend, tmpl, options);
  }

  std::map<std::string, CandidateList> done;
  const fs::path out_path(a.out);
  if (fs::exists(out_path)) {
    for (CandidateList& list : ReadCandidateFile(out_path)) {
      if (a.retry_errors && list.error) continue;
      std::string id = list.id;
      done.emplace(std::move(id), std::move(list));
    }
  }
  std::vector<MaskedExample> todo;
  for (const MaskedExample& ex : examples) {
    if (!done.count(ex.id)) todo.push_back(ex);
  }
  const std::size_t reused = examples.size() - todo.size();

  const auto flush = [&] {
    std::vector<CandidateList> ordered;
    for (const MaskedExample& ex : examples) {
      auto it = done.find(ex.id);
      if (it != done.end()) ordered.push_back(it->second);
    }
    WriteCandidateFile(out_path, ordered);
  };
  WriteResolvedConfig(sub, WithSuffix(out_path, ".config.toml"));
  const std::size_t chunk = static_cast<std::size_t>(a.checkpoint_every);
  for (std::size_t start = 0; start < todo.size(); start += chunk) {
    const std::size_t n = std::min(chunk, todo.size() - start);
    std::span<const MaskedExample> batch(todo.data() + start, n);
    for (CandidateList& list : GenerateAll(*source, batch, a.in_flight)) {
      std::string id = list.id;
      done.insert_or_assign(std::move(id), std::move(list));
    }
    flush();
  }
  if (todo.empty()) flush();

  std::size_t errored = 0, total = 0;
  for (const MaskedExample& ex : examples) {
    auto it = done.find(ex.id);
    if (it == done.end()) continue;
    ++total;
    if (it->second.error) ++errored;
  }
  out << "examples: " << examples.size() << "\n"
      << "generated: " << todo.size() << "\n"
      << "reused: " << reused << "\n"
      << "errored: " << errored << "\n";
  if (total > 0 && errored == total) {
    throw ExitWith(kExitAllErrored, "every example failed to generate");
  }
  return kExitOk;
}

// --- train-reranker -------------------------------------------------------

struct TrainArgs {
  std::string train;
  std::string candidates;
  std::string out;
  std::string log;
  std::string schedule = "warmup_cosine";
  int k = 10;
  bool no_hints = false;
  TrainConfig cfg;
};

int RunTrain(TrainArgs a, const CLI::App& sub, std::ostream& out) {
  RequireFile(a.train, "--train");
  RequireFile(a.candidates, "--candidates");
  if (a.out.empty()) throw InputError("--out is required");
  if (a.k < 1) throw InputError("--k must be positive");
  a.cfg.schedule = ParseLrSchedule(a.schedule);
  a.cfg.scoring.hints = !a.no_hints;
  a.cfg.Validate();
  const std::vector<MaskedExample> examples = ReadExamples(a.train);
  FileCandidateSource source{fs::path(a.candidates)};
  PairMining mined = MineTrainingPairs(examples, source, a.k,
                                       WindowOptionsFor(a.cfg.scoring));
  out << "pairs: " << mined.pairs.size() << " (" << mined.without_negatives
      << " without negatives, " << mined.skipped_empty << " empty, "
      << mined.skipped_errors << " errored)\n";
  if (mined.pairs.empty()) throw InputError("no training pairs");
  TrainResult result;
  try {
    result = TrainReranker(mined.pairs, a.cfg);
  } catch (const TrainingDiverged& e) {
    throw ExitWith(kExitDiverged,
                   std::string(e.what()) + "; last good step " +
                       std::to_string(e.last_good_step()));
  }
  const fs::path path(a.out);
  SaveModel(result.model, path);
  const fs::path log = a.log.empty() ? WithSuffix(path, ".log.jsonl") : fs::path(a.log);
  WriteFileAtomic(log, TrainLogJsonl(result.log));
  WriteResolvedConfig(sub, WithSuffix(path, ".config.toml"));
  if (result.log.empty()) {
    out << "steps: 0 (initialization saved)\n";
  } else {
    out << "steps: " << result.log.back().step << "\n"
        << "final loss: " << result.log.back().loss << "\n";
  }
  out << "model hash: " << Hex64(Fnv1a64(SerializeModel(result.model))) << "\n";
  return kExitOk;
}

// --- rerank ---------------------------------------------------------------

struct RerankArgs {
  std::string in_candidates;
  std::string examples;
  std::string model;
  std::string out;
};

int RunRerank(const RerankArgs& a, const CLI::App& sub, std::ostream& out) {
  RequireFile(a.in_candidates, "--in-candidates");
  RequireFile(a.examples, "--examples");
  RequireFile(a.model, "--model");
  if (a.out.empty()) throw InputError("--out is required");
  const DualEncoderModel model = LoadModel(a.model);
  std::map<std::string, MaskedExample> by_id;
  for (MaskedExample& ex : ReadExamples(a.examples)) {
    std::string id = ex.id;
    by_id.emplace(std::move(id), std::move(ex));
  }
  std::vector<CandidateList> lists = ReadCandidateFile(a.in_candidates);
  for (const CandidateList& list : lists) {
    if (!by_id.count(list.id)) {
      throw InputError("candidate id not found in examples: " + list.id);
    }
  }
  std::size_t reranked = 0;
  for (CandidateList& list : lists) {
    if (list.error || list.candidates.empty()) continue;
    list.candidates = Rerank(model, by_id.at(list.id), std::move(list.candidates));
    list.ranking = std::string(kRankReranked);
    ++reranked;
  }
  WriteCandidateFile(a.out, lists);
  WriteResolvedConfig(sub, WithSuffix(a.out, ".config.toml"));
  out << "lists: " << lists.size() << "\n"
      << "reranked: " << reranked << "\n";
  return kExitOk;
}

// --- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string val;
  std::string candidates;
  std::string embedder = "builtin";
  std::size_t embed_dim = kBuiltinDefaultDim;
  std::string embed_endpoint;
  std::string embed_model = "sentence-transformers/all-MiniLM-L6-v2";
  std::string api_key_env = "VARFIX_EMBED_API_KEY";
  std::string rerank_model;
  int k = 10;
  int jobs = 1;
  std::string out_summary;
  std::string out_records;
};

int RunEval(const EvalArgs& a, const CLI::App& sub, std::ostream& out) {
  RequireFile(a.val, "--val");
  RequireFile(a.candidates, "--candidates");
  if (a.out_summary.empty() || a.out_records.empty()) {
    throw InputError("--out-summary and --out-records are required");
  }
  if (a.k < 1 || a.jobs < 1) throw InputError("--k and --jobs must be positive");
  std::unique_ptr<Embedder> embedder;
  EvalOptions options;
  options.k = static_cast<std::size_t>(a.k);
  options.in_flight = a.jobs;
  options.config.backend = "file";
  options.config.k = a.k;
  if (a.embedder == "builtin") {
    embedder = std::make_unique<BuiltinEmbedder>(a.embed_dim);
    options.config.embedder = "builtin";
  } else {
    if (a.embed_endpoint.empty()) {
      throw InputError("--embedder http needs --embed-endpoint");
    }
    HttpEmbedderConfig cfg;
    cfg.endpoint = a.embed_endpoint;
    cfg.model = a.embed_model;
    cfg.api_key_env = a.api_key_env;
    embedder = std::make_unique<HttpEmbedder>(cfg);
    options.config.embedder = "http:" + a.embed_model;
  }
  std::optional<DualEncoderModel> model;
  if (!a.rerank_model.empty()) {
    RequireFile(a.rerank_model, "--rerank-model");
    model = LoadModel(a.rerank_model);
    options.reranker = &*model;
    options.config.reranker = true;
  }
  const std::vector<MaskedExample> examples = ReadExamples(a.val);
  FileCandidateSource source{fs::path(a.candidates)};
  EvalResult result = Evaluate(examples, source, *embedder, options);
  result.summary.config.embedder_dim = embedder->dim();
  WriteSummary(a.out_summary, result.summary);
  WriteRecords(a.out_records, result.records);
  WriteResolvedConfig(sub, WithSuffix(a.out_summary, ".config.toml"));
  out << SummaryJson(result.summary);
  return kExitOk;
}

// --- synth ----------------------------------------------------------------

struct SynthArgs {
  std::size_t n = 2000;
  std::uint64_t seed = 7;
  std::size_t decoys = 9;
  std::string out_examples;
  std::string out_candidates;
};

int RunSynth(const SynthArgs& a, const CLI::App& sub, std::ostream& out) {
  if (a.out_examples.empty() || a.out_candidates.empty()) {
    throw InputError("--out-examples and --out-candidates are required");
  }
  CueCorpus corpus = MakeCueCorpus(a.n, a.seed, a.decoys);
  WriteExamples(a.out_examples, corpus.examples);
  WriteCandidateFile(a.out_candidates, corpus.candidates);
  WriteResolvedConfig(sub, WithSuffix(a.out_examples, ".config.toml"));
  out << "examples: " << corpus.examples.size() << "\n";
  return kExitOk;
}

CLI::App* AddSub(CLI::App& app, const char* name, const char* help) {
  return app.add_subcommand(name, help);
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Mine masked identifier examples, generate and rerank "
               "candidate names, and evaluate them.",
               "varfix"};
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI file; keys mirror the flags, one [section] per "
                 "subcommand");

  MineArgs mine;
  CLI::App* mine_cmd = AddSub(app, "mine", "Mine masked examples from C++ sources");
  mine_cmd->add_option("--input-dir", mine.input_dir, "Corpus directory");
  mine_cmd->add_option("--manifest", mine.manifest,
                       "File listing corpus paths, one per line");
  mine_cmd->add_option("--out", mine.out, "Output JSONL")->required();
  mine_cmd->add_option("--max-functions", mine.max_functions,
                       "Stop after this many functions (-1: no cap)");
  mine_cmd->add_option("--placeholder", mine.placeholder, "Placeholder index N in <ID_N>");
  mine_cmd->add_option("--jobs", mine.jobs, "Files parsed concurrently");

  SplitArgs split;
  CLI::App* split_cmd = AddSub(app, "split", "Cut train/pool/validation splits");
  split_cmd->add_option("--in", split.in, "Mined JSONL")->required();
  split_cmd->add_option("--out-dir", split.out_dir, "Output directory")->required();
  split_cmd->add_option("--train-count", split.spec.train_count);
  split_cmd->add_option("--pool-skip", split.spec.pool_skip);
  split_cmd->add_option("--pool-size", split.spec.pool_size);
  split_cmd->add_option("--val-size", split.spec.val_size);
  split_cmd->add_option("--seed", split.spec.seed);

  GenerateArgs gen;
  CLI::App* gen_cmd = AddSub(app, "generate", "Produce candidate names per example");
  gen_cmd->add_option("--in", gen.in, "Examples JSONL")->required();
  gen_cmd->add_option("--out", gen.out, "Candidate JSONL (resumed if present)")->required();
  gen_cmd->add_option("--backend", gen.backend)->check(CLI::IsMember({"http", "file"}));
  gen_cmd->add_option("--candidates-file", gen.candidates_file,
                      "Candidate file replayed by --backend file");
  gen_cmd->add_option("--endpoint", gen.endpoint, "Chat-completions URL");
  gen_cmd->add_option("--model", gen.model);
  gen_cmd->add_option("--api-key-env", gen.api_key_env,
                      "Environment variable holding the API key");
  gen_cmd->add_option("--shots", gen.shots)->check(CLI::IsMember({0, 3}));
  gen_cmd->add_option("--shots-file", gen.shots_file, "JSON file with the 3 shots");
  gen_cmd->add_option("--k", gen.sampling.k);
  gen_cmd->add_option("--temperature", gen.sampling.temperature);
  gen_cmd->add_option("--top-p", gen.sampling.top_p);
  gen_cmd->add_option("--max-tokens", gen.sampling.max_tokens);
  gen_cmd->add_flag("--single-request", gen.sampling.single_request,
                    "One request with n=k instead of k requests");
  gen_cmd->add_option("--timeout", gen.timeout, "Seconds per request");
  gen_cmd->add_option("--retries", gen.retries, "Attempts per request");
  gen_cmd->add_option("--backoff", gen.backoff, "First retry delay in seconds");
  gen_cmd->add_option("--in-flight", gen.in_flight, "Concurrent examples");
  gen_cmd->add_option("--checkpoint-every", gen.checkpoint_every,
                      "Rewrite --out after this many examples");
  gen_cmd->add_flag("--retry-errors", gen.retry_errors,
                    "Regenerate ids whose stored entry is an error");

  TrainArgs train;
  CLI::App* train_cmd = AddSub(app, "train-reranker", "Train the dual-encoder reranker");
  train_cmd->add_option("--train", train.train, "Examples JSONL")->required();
  train_cmd->add_option("--candidates", train.candidates, "Candidate JSONL")->required();
  train_cmd->add_option("--out", train.out, "Model file")->required();
  train_cmd->add_option("--log", train.log, "Training log JSONL");
  train_cmd->add_option("--steps", train.cfg.steps);
  train_cmd->add_option("--batch", train.cfg.batch_size);
  train_cmd->add_option("--lr", train.cfg.peak_lr);
  train_cmd->add_option("--warmup", train.cfg.warmup_steps);
  train_cmd->add_option("--schedule", train.schedule)
      ->check(CLI::IsMember({"warmup_cosine", "constant"}));
  train_cmd->add_option("--dropout", train.cfg.dropout_rate);
  train_cmd->add_option("--seed", train.cfg.seed);
  train_cmd->add_option("--dim", train.cfg.dim);
  train_cmd->add_option("--k", train.k, "Candidates per example used as negatives");
  train_cmd->add_option("--window", train.cfg.scoring.window);
  train_cmd->add_flag("--no-hints", train.no_hints);
  train_cmd->add_flag("--in-batch-negatives", train.cfg.in_batch_negatives);
  train_cmd->add_option("--collision-penalty", train.cfg.scoring.collision_penalty);
  train_cmd->add_option("--length-threshold", train.cfg.scoring.length_threshold);
  train_cmd->add_option("--length-penalty", train.cfg.scoring.length_penalty_per_char);

  RerankArgs rerank;
  CLI::App* rerank_cmd = AddSub(app, "rerank", "Reorder candidate lists with a model");
  rerank_cmd->add_option("--in-candidates", rerank.in_candidates)->required();
  rerank_cmd->add_option("--examples", rerank.examples)->required();
  rerank_cmd->add_option("--model", rerank.model)->required();
  rerank_cmd->add_option("--out", rerank.out)->required();

  EvalArgs ev;
  CLI::App* eval_cmd = AddSub(app, "eval", "Exact, top-5 and partial match");
  eval_cmd->add_option("--val", ev.val, "Validation examples JSONL")->required();
  eval_cmd->add_option("--candidates", ev.candidates, "Candidate JSONL")->required();
  eval_cmd->add_option("--embedder", ev.embedder)->check(CLI::IsMember({"builtin", "http"}));
  eval_cmd->add_option("--embed-dim", ev.embed_dim, "Builtin embedder dimension");
  eval_cmd->add_option("--embed-endpoint", ev.embed_endpoint, "Embeddings URL");
  eval_cmd->add_option("--embed-model", ev.embed_model);
  eval_cmd->add_option("--api-key-env", ev.api_key_env);
  eval_cmd->add_option("--rerank-model", ev.rerank_model);
  eval_cmd->add_option("--k", ev.k, "Candidates kept before reranking");
  eval_cmd->add_option("--jobs", ev.jobs);
  eval_cmd->add_option("--out-summary", ev.out_summary)->required();
  eval_cmd->add_option("--out-records", ev.out_records)->required();

  SynthArgs synth;
  CLI::App* synth_cmd = AddSub(app, "synth", "Write the synthetic cue corpus");
  synth_cmd->add_option("--n", synth.n);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--decoys", synth.decoys);
  synth_cmd->add_option("--out-examples", synth.out_examples)->required();
  synth_cmd->add_option("--out-candidates", synth.out_candidates)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (mine_cmd->parsed()) return RunMine(mine, *mine_cmd, out);
    if (split_cmd->parsed()) return RunSplit(split, *split_cmd, out);
    if (gen_cmd->parsed()) return RunGenerate(gen, *gen_cmd, out);
    if (train_cmd->parsed()) return RunTrain(train, *train_cmd, out);
    if (rerank_cmd->parsed()) return RunRerank(rerank, *rerank_cmd, out);
    if (eval_cmd->parsed()) return RunEval(ev, *eval_cmd, out);
    if (synth_cmd->parsed()) return RunSynth(synth, *synth_cmd, out);
  } catch (const ExitWith& e) {
    err << "varfix: " << e.what() << "\n";
    return e.code();
  } catch (const InputError& e) {
    err << "varfix: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    err << "varfix: invalid configuration: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    err << "varfix: malformed input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const IoError& e) {
    err << "varfix: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ModelFormatError& e) {
    err << "varfix: bad model file: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace varfix
