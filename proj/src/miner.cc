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

#include "varfix/miner.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

#include "varfix/cxx_syntax.h"
#include "varfix/errors.h"

namespace varfix {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t Fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string ReplaceAll(std::string_view text, std::string_view from,
                       std::string_view to) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(from, pos);
    if (hit == std::string_view::npos) break;
    out.append(text.substr(pos, hit - pos));
    out.append(to);
    pos = hit + from.size();
  }
  out.append(text.substr(pos));
  return out;
}

}  // namespace

std::string_view SiteKindName(SiteKind kind) {
  return kind == SiteKind::kParameter ? "parameter" : "local";
}

SiteKind ParseSiteKind(std::string_view name) {
  if (name == "parameter") return SiteKind::kParameter;
  if (name == "local") return SiteKind::kLocal;
  throw ParseError("unknown identifier kind: " + std::string(name));
}

const std::string& MaskedExample::gold() const {
  if (target_text.empty()) throw ContractViolation("example has no target");
  return target_text.begin()->second;
}

const std::string& MaskedExample::placeholder() const {
  if (target_text.empty()) throw ContractViolation("example has no target");
  return target_text.begin()->first;
}

bool IsValidUtf8(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    const unsigned char c = static_cast<unsigned char>(bytes[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= bytes.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const unsigned char cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

ExtractResult ExtractFunctionsWithStatus(std::string_view file_bytes,
                                         std::string_view file_id) {
  ExtractResult result;
  if (!IsValidUtf8(file_bytes)) {
    result.status = FileStatus::kNotUtf8;
    result.message = "not valid UTF-8";
    return result;
  }
  ParseResult parsed = ParseFunctions(file_bytes);
  if (parsed.error) {
    result.status = FileStatus::kParseError;
    result.message = *parsed.error;
    return result;
  }
  const TokenStream& ts = parsed.stream;
  for (const FunctionSyntax& fn : parsed.functions) {
    SourceFunction out;
    out.file_id = std::string(file_id);
    out.byte_start = ts[fn.first].offset;
    out.byte_end = ts[fn.last].end();
    out.text = std::string(
        file_bytes.substr(out.byte_start, out.byte_end - out.byte_start));
    result.functions.push_back(std::move(out));
  }
  return result;
}

std::vector<SourceFunction> ExtractFunctions(std::string_view file_bytes,
                                             std::string_view file_id) {
  return ExtractFunctionsWithStatus(file_bytes, file_id).functions;
}

std::vector<std::size_t> FindStandaloneOccurrences(std::string_view text,
                                                   std::string_view name) {
  std::vector<std::size_t> out;
  if (name.empty()) return out;
  std::size_t pos = 0;
  while ((pos = text.find(name, pos)) != std::string_view::npos) {
    const bool left_ok = pos == 0 || !IsIdentChar(text[pos - 1]);
    const std::size_t end = pos + name.size();
    const bool right_ok = end == text.size() || !IsIdentChar(text[end]);
    if (left_ok && right_ok) out.push_back(pos);
    pos += 1;
  }
  return out;
}

std::vector<IdentifierSite> CollectIdentifiers(const SourceFunction& fn) {
  ParseOptions options;
  options.allow_untyped = true;
  const ParseResult parsed = ParseFunctions(fn.text, options);
  std::vector<IdentifierSite> sites;
  if (parsed.error || parsed.functions.size() != 1) return sites;
  const TokenStream& ts = parsed.stream;
  const FunctionSyntax& syn = parsed.functions.front();
  if (ts[syn.first].offset != 0 || ts[syn.last].end() != fn.text.size()) {
    return sites;
  }
  const std::string_view function_name = ts[syn.name].text;

  std::set<std::pair<std::string, SiteKind>> seen;
  const auto add = [&](const std::vector<std::size_t>& tokens, SiteKind kind) {
    for (std::size_t t : tokens) {
      const std::string name(ts[t].text);
      if (name == function_name || !IsValidIdentifier(name)) continue;
      if (!seen.emplace(name, kind).second) continue;
      auto occ = FindStandaloneOccurrences(fn.text, name);
      if (occ.empty()) continue;
      sites.push_back(IdentifierSite{Identifier(name), kind, std::move(occ)});
    }
  };
  add(ParameterNames(ts, syn.params_open, syn.params_close),
      SiteKind::kParameter);
  add(LocalDeclarationNames(ts, syn.body_open, syn.body_close),
      SiteKind::kLocal);
  std::stable_sort(sites.begin(), sites.end(),
                   [](const IdentifierSite& a, const IdentifierSite& b) {
                     if (a.occurrences.front() != b.occurrences.front()) {
                       return a.occurrences.front() < b.occurrences.front();
                     }
                     return a.kind == SiteKind::kParameter &&
                            b.kind == SiteKind::kLocal;
                   });
  return sites;
}

const IdentifierSite& SelectMaskTarget(std::span<const IdentifierSite> sites) {
  if (sites.empty()) {
    throw ContractViolation("SelectMaskTarget requires at least one site");
  }
  const IdentifierSite* best = &sites.front();
  for (const IdentifierSite& s : sites.subspan(1)) {
    const int cmp = s.name.str().compare(best->name.str());
    if (cmp < 0 ||
        (cmp == 0 && s.occurrences.front() < best->occurrences.front())) {
      best = &s;
    }
  }
  return *best;
}

std::string ExampleId(std::string_view file_id, std::size_t byte_start,
                      std::string_view name) {
  std::uint64_t h = Fnv1a(kFnvOffset, file_id);
  h = Fnv1a(h, "\x1f");
  h = Fnv1a(h, std::to_string(byte_start));
  h = Fnv1a(h, "\x1f");
  h = Fnv1a(h, name);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::optional<MaskedExample> MaskIdentifier(
    const SourceFunction& fn, const IdentifierSite& site,
    const Placeholder& placeholder, std::span<const IdentifierSite> all_sites,
    MaskRefusal* refusal) {
  const auto refuse = [refusal](MaskRefusal why) {
    if (refusal) *refusal = why;
    return std::nullopt;
  };
  if (refusal) *refusal = MaskRefusal::kNone;
  const std::string& name = site.name.str();
  const std::string& token = placeholder.token();
  if (fn.text.find(token) != std::string::npos) {
    return refuse(MaskRefusal::kPlaceholderInText);
  }
  if (!FindStandaloneOccurrences(token, name).empty()) {
    return refuse(MaskRefusal::kNameInPlaceholder);
  }
  const std::vector<std::size_t> occ = FindStandaloneOccurrences(fn.text, name);
  if (occ.empty()) {
    throw ContractViolation("site '" + name + "' does not occur in function");
  }

  MaskedExample ex;
  ex.input_text.reserve(fn.text.size() + occ.size() * token.size());
  std::size_t pos = 0;
  for (std::size_t at : occ) {
    ex.input_text.append(fn.text, pos, at - pos);
    ex.input_text.append(token);
    pos = at + name.size();
  }
  ex.input_text.append(fn.text, pos, std::string::npos);
  ex.target_text.emplace(token, name);
  ex.id = ExampleId(fn.file_id, fn.byte_start, name);
  ex.meta.file_id = fn.file_id;
  ex.meta.byte_start = fn.byte_start;
  ex.meta.byte_end = fn.byte_end;
  ex.meta.kind = site.kind;
  ex.meta.occurrence_count = occ.size();
  std::set<std::string> scope;
  for (const IdentifierSite& other : all_sites) {
    if (other.name.str() != name) scope.insert(other.name.str());
  }
  ex.meta.in_scope.assign(scope.begin(), scope.end());

  if (Unmask(ex, name) != fn.text) {
    return refuse(MaskRefusal::kNameInPlaceholder);
  }
  return ex;
}

std::string Unmask(const MaskedExample& example, std::string_view name) {
  std::string out = example.input_text;
  if (example.target_text.empty()) {
    return ReplaceAll(out, Placeholder(1).token(), name);
  }
  for (const auto& [token, gold] : example.target_text) {
    out = ReplaceAll(out, token, name);
  }
  return out;
}

}  // namespace varfix
