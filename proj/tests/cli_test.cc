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

#include <gtest/gtest.h>
#include <httplib.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "varfix/candidates.h"
#include "varfix/dual_encoder.h"
#include "varfix/eval.h"
#include "varfix/io.h"
#include "varfix/records.h"
#include "varfix/trainer.h"

namespace varfix {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "varfix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Fixture(const std::string& rel) {
  return (fs::path(VARFIX_FIXTURE_DIR) / rel).string();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("varfix_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, MineFixtureCorpusIsDeterministic) {
  CliRun a = Cli({"mine", "--input-dir", Fixture("corpus"), "--out", P("a.jsonl")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("examples: 47"), std::string::npos) << a.out;
  EXPECT_EQ(SplitLines(ReadFile(P("a.jsonl"))).size(), 47u);
  CliRun b = Cli({"mine", "--input-dir", Fixture("corpus"), "--out", P("b.jsonl"),
                  "--jobs", "3"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(ReadFile(P("a.jsonl")), ReadFile(P("b.jsonl")));
  EXPECT_TRUE(fs::exists(P("a.jsonl.manifest.json")));
}

TEST_F(CliTest, MineResolvedConfigReproducesRun) {
  ASSERT_EQ(Cli({"mine", "--input-dir", Fixture("corpus"), "--out", P("a.jsonl"),
                 "--max-functions", "20"})
                .code,
            0);
  const std::string first = ReadFile(P("a.jsonl"));
  fs::remove(P("a.jsonl"));
  CliRun again = Cli({"--config", P("a.jsonl.config.toml"), "mine"});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(ReadFile(P("a.jsonl")), first);
}

TEST_F(CliTest, MineEdgeCases) {
  fs::create_directories(dir_ / "empty");
  CliRun empty = Cli({"mine", "--input-dir", P("empty"), "--out", P("e.jsonl")});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(ReadFile(P("e.jsonl")), "");
  CliRun capped = Cli({"mine", "--input-dir", Fixture("corpus"), "--out", P("c.jsonl"),
                       "--max-functions", "3"});
  EXPECT_EQ(capped.code, 0);
  EXPECT_LE(SplitLines(ReadFile(P("c.jsonl"))).size(), 3u);
  EXPECT_EQ(Cli({"mine", "--input-dir", P("missing"), "--out", P("m.jsonl")}).code, 2);
  EXPECT_FALSE(fs::exists(P("m.jsonl")));
  EXPECT_EQ(Cli({"mine", "--out", P("m.jsonl")}).code, 2);
  EXPECT_EQ(Cli({"mine", "--bogus"}).code, 2);
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

TEST_F(CliTest, SplitWrapsMakeSplits) {
  ASSERT_EQ(Cli({"mine", "--input-dir", Fixture("corpus"), "--out", P("a.jsonl")}).code, 0);
  CliRun r = Cli({"split", "--in", P("a.jsonl"), "--out-dir", P("sp"), "--train-count",
                  "20", "--pool-skip", "25", "--pool-size", "20", "--val-size", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadExamples(P("sp/train.jsonl")).size(), 20u);
  EXPECT_EQ(ReadExamples(P("sp/pool.jsonl")).size(), 20u);
  EXPECT_EQ(ReadExamples(P("sp/val.jsonl")).size(), 6u);
  EXPECT_EQ(Cli({"split", "--in", P("a.jsonl"), "--out-dir", P("bad"), "--train-count",
                 "20", "--pool-skip", "10"})
                .code,
            2);
}

std::map<std::string, std::string> LinesById(const std::string& path) {
  std::map<std::string, std::string> out;
  for (const CandidateList& l : ReadCandidateFile(path)) {
    out[l.id] = BuildCandidateLine(l);
  }
  return out;
}

TEST_F(CliTest, GenerateFileReplayAndResume) {
  const std::string val = Fixture("eval/val10.jsonl");
  CliRun r = Cli({"generate", "--in", val, "--backend", "file", "--candidates-file",
                  Fixture("eval/cands10.jsonl"), "--out", P("c.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto input = LinesById(Fixture("eval/cands10.jsonl"));
  auto output = LinesById(P("c.jsonl"));
  for (const auto& [id, line] : input) EXPECT_EQ(output.at(id), line) << id;
  // e10 has no replay entry, so it comes back as an error line.
  EXPECT_TRUE(ParseCandidateLine(output.at("e10").c_str()).error.has_value());

  // Resume against a different replay file only fills the missing ids.
  std::string partial;
  for (const std::string& line : SplitLines(ReadFile(P("c.jsonl")))) {
    if (line.find("\"e0") != std::string::npos) partial += line + "\n";
  }
  WriteFileAtomic(P("resume.jsonl"), partial);
  CliRun resumed = Cli({"generate", "--in", val, "--backend", "file",
                        "--candidates-file", Fixture("eval/perfect10.jsonl"), "--out",
                        P("resume.jsonl")});
  ASSERT_EQ(resumed.code, 0);
  EXPECT_NE(resumed.out.find("reused: 9"), std::string::npos) << resumed.out;
  auto after = LinesById(P("resume.jsonl"));
  for (const auto& [id, line] : after) {
    if (id == "e10") {
      EXPECT_EQ(line, LinesById(Fixture("eval/perfect10.jsonl")).at("e10"));
    } else {
      EXPECT_EQ(line, output.at(id)) << id;
    }
  }
}

TEST_F(CliTest, GenerateConfigErrors) {
  const std::string val = Fixture("eval/val10.jsonl");
  CliRun r = Cli({"generate", "--in", val, "--shots", "3", "--endpoint",
                  "http://127.0.0.1:9/v1/chat/completions", "--model", "m", "--out",
                  P("c.jsonl")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("shots"), std::string::npos);
  EXPECT_EQ(Cli({"generate", "--in", val, "--out", P("c.jsonl")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--in", val, "--shots", "2", "--out", P("c.jsonl")}).code, 2);
}

TEST_F(CliTest, GenerateAllErroredExitsThree) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  CliRun r = Cli({"generate", "--in", Fixture("eval/val10.jsonl"), "--endpoint",
                  "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions",
                  "--model", "m", "--k", "1", "--retries", "1", "--timeout", "1",
                  "--out", P("c.jsonl")});
  EXPECT_EQ(r.code, 3) << r.err;
  EXPECT_EQ(ReadCandidateFile(P("c.jsonl")).size(), 10u);
}

class CliTrainTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    ASSERT_EQ(Cli({"synth", "--n", "300", "--seed", "3", "--out-examples", P("s.jsonl"),
                   "--out-candidates", P("sc.jsonl")})
                  .code,
              0);
  }
  CliRun Train(const std::string& out, std::vector<std::string> extra) {
    std::vector<std::string> args = {"train-reranker", "--train", P("s.jsonl"),
                                     "--candidates", P("sc.jsonl"), "--out", P(out),
                                     "--dim", "16", "--steps", "80", "--warmup", "20",
                                     "--lr", "5e-3"};
    args.insert(args.end(), extra.begin(), extra.end());
    return Cli(args);
  }
};

TEST_F(CliTrainTest, ZeroStepsSavesInitialization) {
  CliRun r = Train("m0.bin", {"--steps", "0", "--warmup", "0", "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  DualEncoderModel m = LoadModel(P("m0.bin"));
  DualEncoderModel init = InitModel(m.vocab, 16, 9, m.scoring);
  EXPECT_EQ(m, init);
}

TEST_F(CliTrainTest, FixedSeedReproducesModel) {
  CliRun a = Train("a.bin", {"--seed", "4"});
  CliRun b = Train("b.bin", {"--seed", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(ReadFile(P("a.bin")), ReadFile(P("b.bin")));
  EXPECT_EQ(ReadFile(P("a.bin.log.jsonl")), ReadFile(P("b.bin.log.jsonl")));
  EXPECT_EQ(SplitLines(ReadFile(P("a.bin.log.jsonl"))).size(), 80u);
  EXPECT_NE(a.out.find("final loss"), std::string::npos);
}

TEST_F(CliTrainTest, DivergenceExitsFour) {
  CliRun r = Train("bad.bin", {"--lr", "1e300", "--schedule", "constant", "--warmup", "0"});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("last good step"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(P("bad.bin")));
}

TEST_F(CliTrainTest, RerankPermutesEveryLine) {
  ASSERT_EQ(Train("m.bin", {}).code, 0);
  CliRun r = Cli({"rerank", "--in-candidates", P("sc.jsonl"), "--examples", P("s.jsonl"),
                  "--model", P("m.bin"), "--out", P("r.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto before = ReadCandidateFile(P("sc.jsonl"));
  auto after = ReadCandidateFile(P("r.jsonl"));
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    ASSERT_EQ(before[i].id, after[i].id);
    std::vector<std::string> a, b;
    for (const auto& c : before[i].candidates) a.push_back(c.name.str());
    for (const auto& c : after[i].candidates) b.push_back(c.name.str());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ASSERT_EQ(a, b);
    for (std::size_t j = 1; j < after[i].candidates.size(); ++j) {
      ASSERT_GE(*after[i].candidates[j - 1].rerank_score,
                *after[i].candidates[j].rerank_score);
    }
    EXPECT_EQ(after[i].ranking, "reranked");
  }
  // Reranking is deterministic.
  ASSERT_EQ(Cli({"rerank", "--in-candidates", P("sc.jsonl"), "--examples",
                 P("s.jsonl"), "--model", P("m.bin"), "--out", P("r2.jsonl")})
                .code,
            0);
  EXPECT_EQ(ReadFile(P("r.jsonl")), ReadFile(P("r2.jsonl")));
}

TEST_F(CliTrainTest, RerankSingletonsAndIdMismatch) {
  ASSERT_EQ(Train("m.bin", {}).code, 0);
  CliRun ok = Cli({"rerank", "--in-candidates", Fixture("eval/perfect10.jsonl"),
                   "--examples", Fixture("eval/val10.jsonl"), "--model", P("m.bin"),
                   "--out", P("p.jsonl")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  auto in = ReadCandidateFile(Fixture("eval/perfect10.jsonl"));
  auto out = ReadCandidateFile(P("p.jsonl"));
  for (std::size_t i = 0; i < in.size(); ++i) {
    EXPECT_EQ(out[i].candidates.front().name, in[i].candidates.front().name);
  }
  CliRun bad = Cli({"rerank", "--in-candidates", Fixture("eval/cands10.jsonl"),
                    "--examples", P("s.jsonl"), "--model", P("m.bin"), "--out",
                    P("x.jsonl")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("e01"), std::string::npos) << bad.err;
  EXPECT_FALSE(fs::exists(P("x.jsonl")));
}

TEST_F(CliTest, EvalPerfectOracleAndHandTable) {
  CliRun perfect = Cli({"eval", "--val", Fixture("eval/val10.jsonl"), "--candidates",
                        Fixture("eval/perfect10.jsonl"), "--out-summary", P("ps.json"),
                        "--out-records", P("pr.jsonl")});
  ASSERT_EQ(perfect.code, 0) << perfect.err;
  EvalSummary ps = ReadSummary(P("ps.json"));
  EXPECT_EQ(ps.exact_pct, 100.0);
  EXPECT_EQ(ps.top5_pct, 100.0);
  EXPECT_NEAR(ps.partial_mean, 100.0, 1e-9);

  CliRun table = Cli({"eval", "--val", Fixture("eval/val10.jsonl"), "--candidates",
                      Fixture("eval/cands10.jsonl"), "--out-summary", P("s.json"),
                      "--out-records", P("r.jsonl")});
  ASSERT_EQ(table.code, 0);
  EvalSummary s = ReadSummary(P("s.json"));
  const double p2 = 50.0 * (1.0 + 3.0 / std::sqrt(40.0));
  EXPECT_EQ(s.n, 10u);
  EXPECT_EQ(s.n_ok, 7u);
  EXPECT_NEAR(s.exact_pct, 200.0 / 7.0, 1e-9);
  EXPECT_NEAR(s.top5_pct, 400.0 / 7.0, 1e-9);
  EXPECT_NEAR(s.partial_mean, (450.0 + p2) / 7.0, 1e-9);
  EXPECT_EQ(s.config.embedder, "builtin");
  EXPECT_EQ(ReadRecords(P("r.jsonl")).size(), 10u);

  ASSERT_EQ(Cli({"eval", "--val", Fixture("eval/val10.jsonl"), "--candidates",
                 Fixture("eval/cands10.jsonl"), "--out-summary", P("s2.json"),
                 "--out-records", P("r2.jsonl")})
                .code,
            0);
  EXPECT_EQ(ReadFile(P("s.json")), ReadFile(P("s2.json")));
  EXPECT_EQ(ReadFile(P("r.jsonl")), ReadFile(P("r2.jsonl")));
  EXPECT_EQ(Cli({"eval", "--val", P("missing.jsonl"), "--candidates",
                 Fixture("eval/cands10.jsonl"), "--out-summary", P("s3.json"),
                 "--out-records", P("r3.jsonl")})
                .code,
            2);
}

}  // namespace
}  // namespace varfix
