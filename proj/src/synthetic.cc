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


#include "varfix/synthetic.h"

#include <array>
#include <string>
#include <string_view>

#include "varfix/errors.h"
#include "varfix/ident.h"
#include "varfix/rng.h"

namespace varfix {

namespace {

struct Concept {
  std::string_view head;  // first subtoken of the gold name
  std::string_view cue;   // call that produces it
};

constexpr std::array<Concept, 24> kConcepts = {{
    {"socket", "acceptConnection"}, {"buffer", "allocateBytes"},
    {"path", "resolveFile"},        {"timer", "startClock"},
    {"user", "lookupAccount"},      {"mutex", "lockGuard"},
    {"color", "pickPalette"},       {"query", "prepareStatement"},
    {"thread", "spawnWorker"},      {"matrix", "invertTransform"},
    {"token", "nextLexeme"},        {"price", "quoteMarket"},
    {"texture", "loadImage"},       {"packet", "receiveFrame"},
    {"node", "walkTree"},           {"vertex", "meshCorner"},
    {"config", "parseSettings"},    {"stream", "openChannel"},
    {"weight", "trainLayer"},       {"angle", "rotateDegrees"},
    {"score", "rankPlayer"},        {"font", "shapeGlyphs"},
    {"pixel", "sampleRaster"},      {"event", "pollQueue"},
}};

constexpr std::array<std::string_view, 10> kSuffixes = {
    "", "Ptr", "Info", "List", "Handle", "Ref", "Value", "Item", "Data", "Obj"};

constexpr std::array<std::string_view, 20> kFiller = {
    "process", "update", "handle",  "apply",   "check", "emit",   "merge",
    "flush",   "visit",  "compute", "reset",   "store", "notify", "render",
    "commit",  "scan",   "sync",    "dispatch", "mark", "finish"};

template <typename T, std::size_t N>
const T& Pick(const std::array<T, N>& items, Rng& rng) {
  return items[rng.Below(N)];
}

std::string Name(std::string_view head, std::string_view suffix) {
  return std::string(head) + std::string(suffix);
}

}  // namespace

CueCorpus MakeCueCorpus(std::size_t n, std::uint64_t seed, std::size_t decoys) {
  if (decoys + 1 > kConcepts.size()) {
    throw ValidationError("too many decoys for the concept inventory");
  }
  CueCorpus corpus;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t gold_concept = rng.Below(kConcepts.size());
    const Concept& c = kConcepts[gold_concept];
    const std::string gold = Name(c.head, Pick(kSuffixes, rng));
    const std::string fn_name =
        std::string(Pick(kFiller, rng)) + "Step" + std::to_string(rng.Below(100));
    const std::string_view f1 = Pick(kFiller, rng);
    const std::string_view f2 = Pick(kFiller, rng);
    const std::string_view f3 = Pick(kFiller, rng);
    const unsigned limit = static_cast<unsigned>(rng.Below(64)) + 1;

    std::string text;
    switch (rng.Below(3)) {
      case 0:
        text = "void " + fn_name + "(Context& ctx) {\n  auto <ID_1> = ctx." +
               std::string(c.cue) + "();\n  " + std::string(f1) +
               "(<ID_1>);\n  if (<ID_1>) ctx." + std::string(f2) +
               "(<ID_1>);\n}";
        break;
      case 1:
        text = "int " + fn_name + "(Context& ctx, int limit) {\n  int total = 0;\n"
               "  for (int k = 0; k < limit && k < " + std::to_string(limit) +
               "; ++k) {\n    auto <ID_1> = " + std::string(c.cue) +
               "(ctx, k);\n    total += " + std::string(f1) +
               "(<ID_1>);\n  }\n  " + std::string(f3) + "(total);\n  return total;\n}";
        break;
      default:
        text = "bool " + fn_name + "(Context* ctx) {\n  if (!ctx) return false;\n"
               "  const auto& <ID_1> = ctx->" + std::string(c.cue) +
               "();\n  return " + std::string(f2) + "(<ID_1>) && " +
               std::string(f3) + "(<ID_1>);\n}";
        break;
    }

    MaskedExample ex;
    ex.id = "synth-" + std::to_string(i);
    ex.input_text = std::move(text);
    ex.target_text = {{"<ID_1>", gold}};
    ex.meta.file_id = "synthetic";
    ex.meta.byte_start = i;
    ex.meta.kind = SiteKind::kLocal;
    ex.meta.occurrence_count = 0;
    for (std::size_t at = ex.input_text.find("<ID_1>"); at != std::string::npos;
         at = ex.input_text.find("<ID_1>", at + 1)) {
      ++ex.meta.occurrence_count;
    }

    // Decoys use distinct other concepts so no decoy shares the gold head.
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < kConcepts.size(); ++k) {
      if (k != gold_concept) others.push_back(k);
    }
    rng.Shuffle(others);
    std::vector<std::string> names = {gold};
    for (std::size_t d = 0; d < decoys; ++d) {
      names.push_back(Name(kConcepts[others[d]].head, Pick(kSuffixes, rng)));
    }
    rng.Shuffle(names);
    CandidateList list;
    list.id = ex.id;
    list.ranking = "sample_order";
    for (std::string& name : names) list.candidates.emplace_back(Identifier(name));

    corpus.examples.push_back(std::move(ex));
    corpus.candidates.push_back(std::move(list));
  }
  return corpus;
}

}  // namespace varfix
