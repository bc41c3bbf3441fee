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

#include "varfix/cxx_syntax.h"

#include <algorithm>
#include <array>

namespace varfix {
namespace {

constexpr std::array<std::string_view, 14> kSpecifierKeywords = {
    "const",   "volatile", "static", "register",     "constexpr",
    "inline",  "extern",   "mutable", "thread_local", "typename",
    "struct",  "class",    "enum",   "union"};

constexpr std::array<std::string_view, 14> kFundamentalKeywords = {
    "unsigned", "signed", "short", "long",    "int",      "char",     "bool",
    "float",    "double", "void",  "wchar_t", "char16_t", "char32_t", "auto"};

// Identifiers that begin expression statements and would otherwise read as
// a type name.
constexpr std::array<std::string_view, 6> kStatementWords = {
    "co_await", "co_yield", "co_return", "emit", "Q_EMIT", "requires"};

template <std::size_t N>
bool Contains(const std::array<std::string_view, N>& set,
              std::string_view text) {
  return std::find(set.begin(), set.end(), text) != set.end();
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits `#  name  rest` into name and rest.
std::pair<std::string_view, std::string_view> SplitDirective(
    std::string_view text) {
  text.remove_prefix(1);
  text = Trim(text);
  std::size_t n = 0;
  while (n < text.size() && text[n] >= 'a' && text[n] <= 'z') ++n;
  return {text.substr(0, n), Trim(text.substr(n))};
}

bool IsFalseCondition(std::string_view arg) {
  const std::size_t comment = arg.find("/*");
  if (comment != std::string_view::npos) arg = Trim(arg.substr(0, comment));
  return arg == "0" || arg == "false";
}

struct CondFrame {
  bool taking;
  bool any_taken;
};

bool IsMacroLike(std::string_view text) {
  if (text.starts_with("__")) return true;
  if (text.size() < 2) return false;
  bool has_letter = false;
  for (char c : text) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') has_letter = true;
  }
  return has_letter;
}

bool IsOpen(const Token& t) {
  return t.kind == TokenKind::kPunct &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}

bool IsClose(const Token& t) {
  return t.kind == TokenKind::kPunct &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

char Partner(std::string_view close) {
  return close == ")" ? '(' : close == "]" ? '[' : '{';
}

// Index just past the `>` closing the template argument list opened at
// `i`, or kNoMatch when the `<` is not a balanced argument list before
// `end`.
std::size_t SkipAngles(const TokenStream& ts, std::size_t i, std::size_t end) {
  int depth = 0;
  for (std::size_t k = i; k < end; ++k) {
    const Token& t = ts[k];
    if (t.kind != TokenKind::kPunct) continue;
    if (t.text == "<") {
      ++depth;
    } else if (t.text == ">") {
      --depth;
    } else if (t.text == ">>") {
      depth -= 2;
    } else if (t.text == "(" || t.text == "[") {
      k = ts.match[k];
      continue;
    } else if (t.text == "{" || t.text == "}" || t.text == ";" ||
               t.text == ")" || t.text == "]") {
      return kNoMatch;
    }
    if (depth <= 0) return k + 1;
  }
  return kNoMatch;
}

// `::`? ident (`<...>`)? (`::` template? ident (`<...>`)?)*
std::size_t ParseQualifiedName(const TokenStream& ts, std::size_t j,
                               std::size_t end) {
  if (ts.Is(j, "::")) ++j;
  if (j >= end || !ts.IsIdentifier(j)) return kNoMatch;
  ++j;
  bool after_ident = true;
  while (j < end) {
    if (after_ident && ts.Is(j, "<")) {
      j = SkipAngles(ts, j, end);
      if (j == kNoMatch) return kNoMatch;
      after_ident = false;
      continue;
    }
    if (ts.Is(j, "::")) {
      ++j;
      if (ts.Is(j, "template")) ++j;
      if (j >= end || !ts.IsIdentifier(j)) return kNoMatch;
      ++j;
      after_ident = true;
      continue;
    }
    break;
  }
  return j;
}

struct SpecifierScan {
  std::size_t next;
  bool type_seen;
};

SpecifierScan ParseDeclSpecifiers(const TokenStream& ts, std::size_t j,
                                  std::size_t end) {
  bool type_seen = false;
  while (j < end) {
    const Token& t = ts[j];
    if (t.Is("[") && ts.Is(j + 1, "[")) {
      j = ts.match[j] + 1;
      continue;
    }
    if (t.kind == TokenKind::kKeyword) {
      if (Contains(kSpecifierKeywords, t.text)) {
        ++j;
        continue;
      }
      if (Contains(kFundamentalKeywords, t.text)) {
        type_seen = true;
        ++j;
        continue;
      }
      if (t.text == "decltype" && ts.Is(j + 1, "(")) {
        j = ts.match[j + 1] + 1;
        type_seen = true;
        continue;
      }
      break;
    }
    if (!type_seen && (t.kind == TokenKind::kIdentifier || t.Is("::"))) {
      if (t.kind == TokenKind::kIdentifier &&
          Contains(kStatementWords, t.text)) {
        break;
      }
      const std::size_t k = ParseQualifiedName(ts, j, end);
      if (k == kNoMatch) break;
      j = k;
      type_seen = true;
      continue;
    }
    break;
  }
  return {j, type_seen};
}

struct DeclaratorScan {
  bool ok = false;
  std::size_t next = 0;
  std::vector<std::size_t> names;
};

DeclaratorScan ParseDeclarator(const TokenStream& ts, std::size_t j,
                               std::size_t end) {
  DeclaratorScan out;
  std::size_t paren_close = kNoMatch;
  while (j < end) {
    const Token& t = ts[j];
    if (t.Is("*") || t.Is("&") || t.Is("&&") || t.Is("const") ||
        t.Is("volatile") || t.Is("...")) {
      ++j;
    } else if (t.kind == TokenKind::kIdentifier &&
               (t.text == "__restrict" || t.text == "__restrict__" ||
                t.text == "restrict")) {
      ++j;
    } else if (t.Is("[") && ts.Is(j + 1, "[")) {
      j = ts.match[j] + 1;
    } else if (t.Is("(") && paren_close == kNoMatch &&
               (ts.Is(j + 1, "*") || ts.Is(j + 1, "&") || ts.Is(j + 1, "^"))) {
      paren_close = ts.match[j];
      ++j;
    } else {
      break;
    }
  }
  if (j >= end) return out;
  if (ts.Is(j, "[") && paren_close == kNoMatch) {
    // structured binding
    const std::size_t close = ts.match[j];
    bool expect_name = true;
    for (std::size_t k = j + 1; k < close; ++k) {
      if (expect_name && ts.IsIdentifier(k)) {
        out.names.push_back(k);
        expect_name = false;
      } else if (!expect_name && ts.Is(k, ",")) {
        expect_name = true;
      } else {
        return out;
      }
    }
    if (out.names.empty() || expect_name) return out;
    j = close + 1;
  } else if (ts.IsIdentifier(j) && !Contains(kStatementWords, ts[j].text)) {
    out.names.push_back(j);
    ++j;
  } else {
    return out;
  }
  while (ts.Is(j, "[") && j < end) j = ts.match[j] + 1;
  if (paren_close != kNoMatch) {
    if (j != paren_close) {
      out.names.clear();
      return out;
    }
    j = paren_close + 1;
    while (j < end && (ts.Is(j, "(") || ts.Is(j, "["))) j = ts.match[j] + 1;
  }
  out.ok = true;
  out.next = j;
  return out;
}

// Skips an initializer expression up to the next top-level `,` or `;`.
std::size_t SkipInitializer(const TokenStream& ts, std::size_t j,
                            std::size_t end) {
  while (j < end) {
    if (IsOpen(ts[j])) {
      j = ts.match[j] + 1;
      continue;
    }
    if (ts.Is(j, ",") || ts.Is(j, ";")) return j;
    ++j;
  }
  return j;
}

// Names introduced by a simple-declaration starting at `start`. When
// `condition` is set, `end` is the closing parenthesis of a control
// statement and reaching it terminates the declaration.
std::vector<std::size_t> ParseSimpleDeclaration(const TokenStream& ts,
                                                std::size_t start,
                                                std::size_t end,
                                                bool condition) {
  std::vector<std::size_t> names;
  const SpecifierScan spec = ParseDeclSpecifiers(ts, start, end);
  if (!spec.type_seen) return names;
  std::size_t j = spec.next;
  bool first = true;
  for (;;) {
    const DeclaratorScan d = ParseDeclarator(ts, j, end);
    if (!d.ok) return first ? std::vector<std::size_t>{} : names;
    j = d.next;
    if (ts.Is(j, "=") && j < end) {
      j = SkipInitializer(ts, j + 1, end);
    } else if (j < end && (ts.Is(j, "(") || ts.Is(j, "{"))) {
      j = ts.match[j] + 1;
    }
    const bool at_end = condition && j == end;
    const bool terminated = at_end || (j < end && (ts.Is(j, ";") ||
                                                   ts.Is(j, ",") ||
                                                   ts.Is(j, ":")));
    if (!terminated) return first ? std::vector<std::size_t>{} : names;
    names.insert(names.end(), d.names.begin(), d.names.end());
    first = false;
    if (at_end || !ts.Is(j, ",")) return names;
    ++j;
  }
}

class FunctionFinder {
 public:
  FunctionFinder(const TokenStream& ts, const ParseOptions& options,
                 std::vector<FunctionSyntax>* out)
      : ts_(ts), options_(options), out_(out) {}

  void DeclSeq(std::size_t begin, std::size_t end, std::string_view cls,
               bool in_class) {
    std::size_t i = begin;
    while (i < end) {
      std::size_t next = Declaration(i, end, cls, in_class);
      i = std::max(next, i + 1);
    }
  }

 private:
  bool IsAccessLabel(std::size_t i) const {
    if (!(ts_.Is(i, "public") || ts_.Is(i, "private") ||
          ts_.Is(i, "protected") ||
          (ts_.IsIdentifier(i) &&
           (ts_[i].text == "signals" || ts_[i].text == "Q_SIGNALS" ||
            ts_[i].text == "slots" || ts_[i].text == "Q_SLOTS")))) {
      return false;
    }
    return ts_.Is(i + 1, ":") ||
           (ts_.IsIdentifier(i + 1) && ts_.Is(i + 2, ":"));
  }

  std::size_t Declaration(std::size_t start, std::size_t end,
                          std::string_view cls, bool in_class) {
    std::size_t i = start;
    if (ts_.Is(i, ";")) return i + 1;
    if (ts_.Is(i, "extern") && i + 2 < end &&
        ts_[i + 1].kind == TokenKind::kString && ts_.Is(i + 2, "{")) {
      const std::size_t close = ts_.match[i + 2];
      DeclSeq(i + 3, close, "", false);
      return close + 1;
    }
    bool saw_assign = false;
    bool saw_namespace = false;
    bool saw_enum = false;
    std::size_t class_key = kNoMatch;
    while (i < end) {
      const Token& t = ts_[i];
      if (in_class && IsAccessLabel(i)) {
        return ts_.Is(i + 1, ":") ? i + 2 : i + 3;
      }
      if (t.kind == TokenKind::kPunct) {
        if (t.text == ";") return i + 1;
        if (t.text == "}") return i + 1;
        if (t.text == "=") {
          saw_assign = true;
        } else if (t.text == "(") {
          if (!saw_assign && IsDeclaratorParen(start, i, cls, in_class)) {
            if (auto after = TryDefinition(start, i - 1, i, end)) {
              return *after;
            }
          }
          i = ts_.match[i] + 1;
          continue;
        } else if (t.text == "[") {
          i = ts_.match[i] + 1;
          continue;
        } else if (t.text == "{") {
          const std::size_t close = ts_.match[i];
          if (saw_namespace && !saw_assign) {
            DeclSeq(i + 1, close, "", false);
            return close + 1;
          }
          if (class_key != kNoMatch && !saw_enum && !saw_assign) {
            DeclSeq(i + 1, close, ClassName(class_key, i), true);
            i = close + 1;
            continue;
          }
          const bool macro_body = !saw_assign && i > start && ts_.Is(i - 1, ")");
          i = close + 1;
          if (macro_body) return i;
          continue;
        }
        ++i;
        continue;
      }
      if (t.kind == TokenKind::kKeyword) {
        if (t.text == "operator" && !saw_assign) {
          const std::size_t p = OperatorParams(i, end);
          if (p != kNoMatch) {
            if (auto after = TryDefinition(start, i, p, end)) return *after;
            i = p;
            continue;
          }
        } else if (t.text == "namespace") {
          saw_namespace = true;
        } else if (t.text == "enum") {
          saw_enum = true;
        } else if (t.text == "class" || t.text == "struct" ||
                   t.text == "union") {
          if (class_key == kNoMatch) class_key = i;
        } else if (t.text == "template" && ts_.Is(i + 1, "<")) {
          const std::size_t after = SkipAngles(ts_, i + 1, end);
          if (after != kNoMatch) {
            i = after;
            continue;
          }
        }
      }
      ++i;
    }
    return i;
  }

  std::string_view ClassName(std::size_t key, std::size_t brace) const {
    std::string_view name;
    for (std::size_t k = key + 1; k < brace; ++k) {
      if (ts_.Is(k, "(") || ts_.Is(k, "[")) {
        k = ts_.match[k];
      } else if (ts_.Is(k, "<")) {
        const std::size_t after = SkipAngles(ts_, k, brace);
        if (after == kNoMatch) break;
        k = after - 1;
      } else if (ts_.Is(k, ":")) {
        break;
      } else if (ts_.IsIdentifier(k) && ts_[k].text != "final") {
        name = ts_[k].text;
      }
    }
    return name;
  }

  // Index of the parameter list's `(` after `operator` at `i`.
  std::size_t OperatorParams(std::size_t i, std::size_t end) const {
    std::size_t j = i + 1;
    if (ts_.Is(j, "(") && ts_.match[j] == j + 1) {
      return ts_.Is(j + 2, "(") ? j + 2 : kNoMatch;
    }
    for (; j < end && j < i + 12; ++j) {
      if (ts_.Is(j, "(")) return j;
      if (ts_.Is(j, "[")) {
        j = ts_.match[j];
        continue;
      }
      if (ts_.Is(j, ";") || ts_.Is(j, "{") || ts_.Is(j, "}") ||
          (ts_.Is(j, "=") && ts_.Is(j + 1, ";"))) {
        return kNoMatch;
      }
    }
    return kNoMatch;
  }

  // Leading `template<...>` clauses and attributes.
  std::size_t SkipPrefix(std::size_t b, std::size_t limit) const {
    while (b < limit) {
      if (ts_.Is(b, "template") && ts_.Is(b + 1, "<")) {
        const std::size_t after = SkipAngles(ts_, b + 1, limit);
        if (after == kNoMatch) break;
        b = after;
      } else if (ts_.Is(b, "[") && ts_.Is(b + 1, "[")) {
        b = ts_.match[b] + 1;
      } else {
        break;
      }
    }
    return b;
  }

  bool IsDeclaratorParen(std::size_t start, std::size_t p,
                         std::string_view cls, bool in_class) const {
    if (p == start || !ts_.IsIdentifier(p - 1)) return false;
    const std::size_t name = p - 1;
    if (name > start && (ts_.Is(name - 1, ".") || ts_.Is(name - 1, "->"))) {
      return false;
    }
    std::size_t q = name;
    bool special = false;
    if (q > start && ts_.Is(q - 1, "~")) {
      special = true;
      --q;
    }
    while (q >= start + 2 && ts_.Is(q - 1, "::")) {
      std::size_t scope = q - 2;
      if (ts_.Is(scope, ">")) {
        int depth = 0;
        std::size_t k = scope;
        for (;; --k) {
          if (ts_.Is(k, ">")) ++depth;
          if (ts_.Is(k, "<") && --depth == 0) break;
          if (k == start) return false;
        }
        if (k == start) return false;
        scope = k - 1;
      }
      if (!ts_.IsIdentifier(scope)) break;
      special = true;
      q = scope;
    }
    if (q > start && ts_.Is(q - 1, "::")) {
      special = true;
      --q;
    }
    if (special || options_.allow_untyped) return true;
    if (in_class && ts_[name].text == cls) return true;
    return SkipPrefix(start, q) < q;
  }

  std::size_t SkipInitList(std::size_t j, std::size_t end) const {
    for (;;) {
      if (ts_.Is(j, "::")) ++j;
      if (j >= end || !ts_.IsIdentifier(j)) return kNoMatch;
      ++j;
      for (;;) {
        if (ts_.Is(j, "::")) {
          ++j;
          if (ts_.Is(j, "template")) ++j;
          if (!ts_.IsIdentifier(j)) return kNoMatch;
          ++j;
        } else if (ts_.Is(j, "<")) {
          j = SkipAngles(ts_, j, end);
          if (j == kNoMatch) return kNoMatch;
        } else {
          break;
        }
      }
      if (!(ts_.Is(j, "(") || ts_.Is(j, "{"))) return kNoMatch;
      j = ts_.match[j] + 1;
      if (ts_.Is(j, "...")) ++j;
      if (ts_.Is(j, ",")) {
        ++j;
        continue;
      }
      return j;
    }
  }

  std::optional<std::size_t> TryDefinition(std::size_t start,
                                           std::size_t name,
                                           std::size_t open,
                                           std::size_t end) {
    const std::size_t close = ts_.match[open];
    std::size_t j = close + 1;
    while (j < end) {
      const Token& t = ts_[j];
      if (t.Is("{")) {
        return Emit({start, name, open, close, j, ts_.match[j],
                     ts_.match[j]});
      }
      if (t.Is("try") && ts_.Is(j + 1, "{")) {
        FunctionSyntax fn{start, name, open, close, j + 1,
                          ts_.match[j + 1], ts_.match[j + 1]};
        std::size_t k = fn.last + 1;
        while (ts_.Is(k, "catch") && ts_.Is(k + 1, "(")) {
          const std::size_t b = ts_.match[k + 1] + 1;
          if (!ts_.Is(b, "{")) break;
          fn.last = ts_.match[b];
          k = fn.last + 1;
        }
        return Emit(fn);
      }
      if (t.Is(";") || t.Is("=")) return std::nullopt;
      if (t.Is("const") || t.Is("volatile") || t.Is("&") || t.Is("&&")) {
        ++j;
      } else if (t.Is("noexcept") || t.Is("throw")) {
        ++j;
        if (ts_.Is(j, "(")) j = ts_.match[j] + 1;
      } else if (t.Is("[") && ts_.Is(j + 1, "[")) {
        j = ts_.match[j] + 1;
      } else if (t.Is("->") || (t.kind == TokenKind::kIdentifier &&
                                t.text == "requires")) {
        ++j;
        while (j < end && !ts_.Is(j, "{") && !ts_.Is(j, ";") &&
               !ts_.Is(j, "=")) {
          j = IsOpen(ts_[j]) ? ts_.match[j] + 1 : j + 1;
        }
      } else if (t.Is(":")) {
        j = SkipInitList(j + 1, end);
        if (j == kNoMatch || !ts_.Is(j, "{")) return std::nullopt;
      } else if (t.kind == TokenKind::kIdentifier &&
                 (t.text == "override" || t.text == "final" ||
                  IsMacroLike(t.text))) {
        ++j;
        if (ts_.Is(j, "(")) j = ts_.match[j] + 1;
      } else {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::size_t Emit(const FunctionSyntax& fn) {
    out_->push_back(fn);
    return fn.last + 1;
  }

  const TokenStream& ts_;
  const ParseOptions& options_;
  std::vector<FunctionSyntax>* out_;
};

}  // namespace

std::optional<TokenStream> BuildTokenStream(std::string_view source,
                                            const LexOptions& options,
                                            std::string* error) {
  LexResult lexed = Lex(source, options);
  if (lexed.error) {
    if (error) {
      *error = *lexed.error + " at byte " + std::to_string(lexed.error_offset);
    }
    return std::nullopt;
  }
  TokenStream ts;
  std::vector<CondFrame> frames;
  const auto active = [&frames] {
    return std::all_of(frames.begin(), frames.end(),
                       [](const CondFrame& f) { return f.taking; });
  };
  for (const Token& tok : lexed.tokens) {
    if (tok.kind != TokenKind::kDirective) {
      if (active()) ts.tokens.push_back(tok);
      continue;
    }
    const auto [name, arg] = SplitDirective(tok.text);
    if (name == "if" || name == "ifdef" || name == "ifndef") {
      const bool take = !(name == "if" && IsFalseCondition(arg));
      frames.push_back({take, take});
    } else if (name == "elif" || name == "elifdef" || name == "elifndef") {
      if (frames.empty()) {
        // Unmatched branch directive (the text began inside a group): skip
        // to the matching #endif as a not-taken branch would.
        frames.push_back({false, true});
      } else if (frames.back().any_taken) {
        frames.back().taking = false;
      } else {
        frames.back().taking = !(name == "elif" && IsFalseCondition(arg));
        frames.back().any_taken = frames.back().taking;
      }
    } else if (name == "else") {
      if (frames.empty()) {
        frames.push_back({false, true});
      } else {
        frames.back().taking = !frames.back().any_taken;
        frames.back().any_taken = true;
      }
    } else if (name == "endif") {
      if (!frames.empty()) frames.pop_back();
    }
  }

  ts.match.assign(ts.tokens.size(), kNoMatch);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    const Token& t = ts.tokens[i];
    if (IsOpen(t)) {
      stack.push_back(i);
    } else if (IsClose(t)) {
      if (stack.empty() || ts.tokens[stack.back()].text[0] != Partner(t.text)) {
        if (error) {
          *error = "unbalanced '" + std::string(t.text) + "' at byte " +
                   std::to_string(t.offset);
        }
        return std::nullopt;
      }
      ts.match[i] = stack.back();
      ts.match[stack.back()] = i;
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    if (error) {
      *error = "unclosed '" + std::string(ts.tokens[stack.back()].text) +
               "' at byte " + std::to_string(ts.tokens[stack.back()].offset);
    }
    return std::nullopt;
  }
  return ts;
}

ParseResult ParseFunctions(std::string_view source,
                           const ParseOptions& options) {
  ParseResult result;
  std::string error;
  LexOptions lex;
  lex.placeholders = options.placeholders;
  auto ts = BuildTokenStream(source, lex, &error);
  if (!ts) {
    result.error = error;
    return result;
  }
  result.stream = std::move(*ts);
  FunctionFinder(result.stream, options, &result.functions)
      .DeclSeq(0, result.stream.size(), "", false);
  return result;
}

std::vector<std::size_t> ParameterNames(const TokenStream& ts,
                                        std::size_t open, std::size_t close) {
  std::vector<std::pair<std::size_t, std::size_t>> params;
  std::size_t seg = open + 1;
  int angle = 0;
  for (std::size_t k = open + 1; k < close;) {
    if (IsOpen(ts[k])) {
      k = ts.match[k] + 1;
      continue;
    }
    if (ts.Is(k, "<") && k > seg &&
        (ts.IsIdentifier(k - 1) || ts.Is(k - 1, "template"))) {
      ++angle;
    } else if (ts.Is(k, ">") && angle > 0) {
      --angle;
    } else if (ts.Is(k, ">>") && angle > 0) {
      angle = std::max(0, angle - 2);
    } else if (ts.Is(k, ",") && angle == 0) {
      params.emplace_back(seg, k);
      seg = k + 1;
    }
    ++k;
  }
  if (seg < close) params.emplace_back(seg, close);

  std::vector<std::size_t> names;
  for (const auto& [b, e] : params) {
    const SpecifierScan spec = ParseDeclSpecifiers(ts, b, e);
    if (!spec.type_seen || spec.next >= e) continue;
    const DeclaratorScan d = ParseDeclarator(ts, spec.next, e);
    if (!d.ok || d.names.size() != 1) continue;
    if (d.next == e || ts.Is(d.next, "=")) names.push_back(d.names[0]);
  }
  return names;
}

std::vector<std::size_t> LocalDeclarationNames(const TokenStream& ts,
                                               std::size_t body_open,
                                               std::size_t body_close) {
  std::vector<std::size_t> names;
  const auto append = [&names](const std::vector<std::size_t>& found) {
    names.insert(names.end(), found.begin(), found.end());
  };
  std::vector<char> start(ts.size() + 1, 0);
  std::vector<std::size_t> cond_end(ts.size() + 1, kNoMatch);
  start[body_open + 1] = 1;
  std::size_t stmt_begin = body_open + 1;

  for (std::size_t k = body_open + 1; k < body_close; ++k) {
    if (start[k]) {
      stmt_begin = k;
      append(ParseSimpleDeclaration(ts, k, body_close, false));
      if (ts.IsIdentifier(k) && ts.Is(k + 1, ":")) start[k + 2] = 1;
      if (ts.Is(k, "default") && ts.Is(k + 1, ":")) start[k + 2] = 1;
      if (ts.Is(k, "case")) {
        std::size_t c = k + 1;
        while (c < body_close && !ts.Is(c, ":")) {
          c = IsOpen(ts[c]) ? ts.match[c] + 1 : c + 1;
        }
        if (c < body_close) start[c + 1] = 1;
      }
    }
    if (cond_end[k] != kNoMatch) {
      append(ParseSimpleDeclaration(ts, k, cond_end[k], true));
    }
    const Token& t = ts[k];
    if (t.Is("{")) {
      bool local_type = false;
      for (std::size_t b = stmt_begin; b < k; ++b) {
        if (ts.Is(b, "class") || ts.Is(b, "struct") || ts.Is(b, "union") ||
            ts.Is(b, "enum")) {
          local_type = true;
        }
        if (ts.Is(b, "(") || ts.Is(b, "=")) {
          local_type = false;
          break;
        }
      }
      if (local_type) {
        k = ts.match[k];
        continue;
      }
      start[k + 1] = 1;
    } else if (t.Is(";") || t.Is("}") || t.Is("else") || t.Is("do") ||
               t.Is("try")) {
      start[k + 1] = 1;
    } else if (t.Is("if") || t.Is("for") || t.Is("while") ||
               t.Is("switch") || t.Is("catch")) {
      std::size_t p = k + 1;
      if (ts.Is(p, "constexpr")) ++p;
      if (ts.Is(p, "(")) {
        cond_end[p + 1] = ts.match[p];
        start[ts.match[p] + 1] = 1;
      }
    } else if (t.Is("]") && ts.Is(k + 1, "(")) {
      const std::size_t c = ts.match[k + 1];
      if (ts.Is(c + 1, "{") || ts.Is(c + 1, "->") || ts.Is(c + 1, "mutable") ||
          ts.Is(c + 1, "constexpr") || ts.Is(c + 1, "noexcept")) {
        append(ParameterNames(ts, k + 1, c));
      }
    }
  }
  return names;
}

}  // namespace varfix
