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

#ifndef VARFIX_MINER_H_
#define VARFIX_MINER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "varfix/ident.h"

namespace varfix {

// A function definition sliced byte-for-byte out of a source file.
struct SourceFunction {
  std::string file_id;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  std::string text;
};

enum class SiteKind { kParameter, kLocal };

std::string_view SiteKindName(SiteKind kind);
SiteKind ParseSiteKind(std::string_view name);

// A declared name and every standalone occurrence of it in the function
// text (offsets relative to SourceFunction::text).
struct IdentifierSite {
  Identifier name;
  SiteKind kind;
  std::vector<std::size_t> occurrences;
};

struct ExampleMeta {
  std::string file_id;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  SiteKind kind = SiteKind::kLocal;
  std::size_t occurrence_count = 0;
  // Other names declared in the same function; candidates equal to one of
  // these collide.
  std::vector<std::string> in_scope;

  friend bool operator==(const ExampleMeta&, const ExampleMeta&) = default;
};

struct MaskedExample {
  std::string id;
  std::string input_text;
  std::map<std::string, std::string> target_text;  // placeholder -> gold
  ExampleMeta meta;

  // Gold name of the first placeholder.
  const std::string& gold() const;
  // Placeholder token of the first entry.
  const std::string& placeholder() const;

  friend bool operator==(const MaskedExample&, const MaskedExample&) = default;
};

enum class FileStatus { kOk, kNotUtf8, kParseError };

struct ExtractResult {
  std::vector<SourceFunction> functions;
  FileStatus status = FileStatus::kOk;
  std::string message;
};

bool IsValidUtf8(std::string_view bytes);

// Function definitions of one file in document order. Files that are not
// UTF-8 or do not parse yield no functions and a non-ok status.
ExtractResult ExtractFunctionsWithStatus(std::string_view file_bytes,
                                         std::string_view file_id);
std::vector<SourceFunction> ExtractFunctions(std::string_view file_bytes,
                                             std::string_view file_id);

// Start offsets of `name` in `text` where it is neither preceded nor
// followed by [A-Za-z0-9_].
std::vector<std::size_t> FindStandaloneOccurrences(std::string_view text,
                                                   std::string_view name);

// Parameters and locally declared names, ordered by first occurrence
// (parameters before locals on ties). The function's own name is never a
// site. Returns empty when the text does not re-parse as one definition.
std::vector<IdentifierSite> CollectIdentifiers(const SourceFunction& fn);

// Site whose name is smallest in byte-wise order; same-name ties go to the
// earliest first occurrence. Throws ContractViolation on empty input.
const IdentifierSite& SelectMaskTarget(std::span<const IdentifierSite> sites);

// 16 hex digits of FNV-1a over file id, start offset and name.
std::string ExampleId(std::string_view file_id, std::size_t byte_start,
                      std::string_view name);

enum class MaskRefusal { kNone, kPlaceholderInText, kNameInPlaceholder };

// Replaces every standalone occurrence of the site's name. Refuses (returns
// nullopt) when the result could not be unmasked back to the original.
// `all_sites` supplies the in-scope names recorded in the metadata.
std::optional<MaskedExample> MaskIdentifier(
    const SourceFunction& fn, const IdentifierSite& site,
    const Placeholder& placeholder,
    std::span<const IdentifierSite> all_sites = {},
    MaskRefusal* refusal = nullptr);

// Replaces every placeholder of the example with `name`.
std::string Unmask(const MaskedExample& example, std::string_view name);

}  // namespace varfix

#endif  // VARFIX_MINER_H_
