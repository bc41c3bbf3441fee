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


#include "varfix/dual_encoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "varfix/errors.h"
#include "varfix/io.h"
#include "varfix/rng.h"

namespace varfix {

Vocab::Vocab() {
  for (std::string_view t : {kUnkToken, kPadToken, kHoleToken}) {
    index_.emplace(std::string(t), static_cast<int>(tokens_.size()));
    tokens_.emplace_back(t);
  }
}

Vocab Vocab::FromTokens(std::vector<std::string> tokens) {
  if (tokens.size() < 3 || tokens[0] != kUnkToken || tokens[1] != kPadToken ||
      tokens[2] != kHoleToken) {
    throw ValidationError("vocabulary must start with <unk>, <pad>, <id>");
  }
  Vocab v;
  v.tokens_.clear();
  v.index_.clear();
  for (std::string& t : tokens) {
    if (!v.index_.emplace(t, static_cast<int>(v.tokens_.size())).second) {
      throw ValidationError("duplicate vocabulary token: " + t);
    }
    v.tokens_.push_back(std::move(t));
  }
  return v;
}

Vocab Vocab::Build(const std::set<std::string>& tokens) {
  std::vector<std::string> list = {std::string(kUnkToken),
                                   std::string(kPadToken),
                                   std::string(kHoleToken)};
  for (const std::string& t : tokens) {
    if (t != kUnkToken && t != kPadToken && t != kHoleToken) list.push_back(t);
  }
  return FromTokens(std::move(list));
}

int Vocab::Lookup(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> Vocab::Lookup(const std::vector<std::string>& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string& t : tokens) ids.push_back(Lookup(t));
  return ids;
}

void ScoringConfig::Validate() const {
  if (!(collision_penalty >= 0) || !(length_penalty_per_char >= 0)) {
    throw ValidationError("penalties must be non-negative");
  }
  if (length_threshold == 0 || window == 0) {
    throw ValidationError("length threshold and window must be positive");
  }
}

double DualEncoderModel::tau() const { return std::exp(log_tau); }

DualEncoderModel InitModel(Vocab vocab, std::size_t dim, std::uint64_t seed,
                           const ScoringConfig& scoring) {
  if (dim == 0) throw ValidationError("model dimension must be positive");
  scoring.Validate();
  DualEncoderModel m;
  m.dim = dim;
  m.vocab = std::move(vocab);
  m.scoring = scoring;
  const std::size_t v = m.vocab.size();
  m.code_embeddings = Matrix(v, dim);
  m.name_embeddings = Matrix(v, dim);
  m.code_projection = Matrix(dim, dim);
  m.name_projection = Matrix(dim, dim);
  Rng rng(seed);
  for (Matrix* mat : {&m.code_embeddings, &m.name_embeddings,
                      &m.code_projection, &m.name_projection}) {
    for (double& x : mat->data) x = rng.Uniform(-0.05, 0.05);
  }
  m.log_tau = std::log(0.07);
  return m;
}

namespace {

struct SideCache {
  std::vector<int> ids;
  std::vector<double> mean;
  std::vector<double> unit;
  double norm = 0.0;
};

SideCache Forward(const Matrix& emb, const Matrix& proj,
                  std::span<const int> ids) {
  if (ids.empty()) throw ContractViolation("cannot encode an empty sequence");
  const std::size_t d = proj.rows;
  SideCache c;
  c.ids.assign(ids.begin(), ids.end());
  c.mean.assign(d, 0.0);
  for (int id : ids) {
    const double* r = emb.row(static_cast<std::size_t>(id));
    for (std::size_t i = 0; i < d; ++i) c.mean[i] += r[i];
  }
  const double inv = 1.0 / static_cast<double>(ids.size());
  for (double& x : c.mean) x *= inv;
  c.unit.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double mi = c.mean[i];
    const double* p = proj.row(i);
    for (std::size_t k = 0; k < d; ++k) c.unit[k] += mi * p[k];
  }
  double sq = 0.0;
  for (double y : c.unit) sq += y * y;
  c.norm = std::sqrt(sq);
  if (c.norm > 0.0) {
    for (double& y : c.unit) y /= c.norm;
  }
  return c;
}

// Adds the gradient of the loss with respect to the encoder inputs, given
// dL/d(unit) in `dz`.
void Backward(const SideCache& c, const Matrix& proj,
              const std::vector<double>& dz, Matrix& emb_grad,
              Matrix& proj_grad) {
  if (c.norm == 0.0) return;
  const std::size_t d = proj.rows;
  double zdz = 0.0;
  for (std::size_t k = 0; k < d; ++k) zdz += c.unit[k] * dz[k];
  std::vector<double> dy(d);
  for (std::size_t k = 0; k < d; ++k) {
    dy[k] = (dz[k] - c.unit[k] * zdz) / c.norm;
  }
  std::vector<double> dm(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double* p = proj.row(i);
    double* gp = proj_grad.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      gp[k] += c.mean[i] * dy[k];
      acc += p[k] * dy[k];
    }
    dm[i] = acc;
  }
  const double inv = 1.0 / static_cast<double>(c.ids.size());
  for (int id : c.ids) {
    double* g = emb_grad.row(static_cast<std::size_t>(id));
    for (std::size_t i = 0; i < d; ++i) g[i] += dm[i] * inv;
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> EncodeContextIds(const DualEncoderModel& model,
                                     std::span<const int> ids) {
  return Forward(model.code_embeddings, model.code_projection, ids).unit;
}

std::vector<double> EncodeContext(const DualEncoderModel& model,
                                  const std::vector<std::string>& tokens) {
  std::vector<int> ids = model.vocab.Lookup(tokens);
  return EncodeContextIds(model, ids);
}

std::vector<double> EncodeName(const DualEncoderModel& model,
                               std::string_view name) {
  if (!IsValidIdentifier(name)) {
    throw ValidationError("invalid identifier: " + std::string(name));
  }
  std::vector<int> ids = model.vocab.Lookup(NameTokens(name));
  return Forward(model.name_embeddings, model.name_projection, ids).unit;
}

double Score(const DualEncoderModel& model, std::span<const double> context,
             std::span<const double> name) {
  return Dot(context, name) / model.tau();
}

double AdjustedScore(double raw, std::string_view candidate,
                     const std::set<std::string>& in_scope,
                     const ScoringConfig& cfg) {
  double out = raw;
  if (in_scope.count(std::string(candidate)) != 0) out -= cfg.collision_penalty;
  if (candidate.size() > cfg.length_threshold) {
    out -= cfg.length_penalty_per_char *
           static_cast<double>(candidate.size() - cfg.length_threshold);
  }
  return out;
}

WindowOptions WindowOptionsFor(const ScoringConfig& cfg) {
  WindowOptions w;
  w.width = cfg.window;
  w.hints = cfg.hints;
  return w;
}

std::vector<Candidate> Rerank(const DualEncoderModel& model,
                              const MaskedExample& example,
                              std::vector<Candidate> candidates) {
  if (candidates.empty()) return candidates;
  const std::vector<double> ctx = EncodeContext(
      model,
      FlattenWindow(ExtractContextWindow(example, WindowOptionsFor(model.scoring))));
  const std::set<std::string> in_scope(example.meta.in_scope.begin(),
                                       example.meta.in_scope.end());
  for (Candidate& c : candidates) {
    const double raw = Score(model, ctx, EncodeName(model, c.name.str()));
    c.rerank_score = AdjustedScore(raw, c.name.str(), in_scope, model.scoring);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return *a.rerank_score > *b.rerank_score;
                   });
  return candidates;
}

ModelGrads::ModelGrads(const DualEncoderModel& model)
    : code_embeddings(model.code_embeddings.rows, model.dim),
      name_embeddings(model.name_embeddings.rows, model.dim),
      code_projection(model.dim, model.dim),
      name_projection(model.dim, model.dim) {}

void ModelGrads::Zero() {
  for (Matrix* m : {&code_embeddings, &name_embeddings, &code_projection,
                    &name_projection}) {
    std::fill(m->data.begin(), m->data.end(), 0.0);
  }
  log_tau = 0.0;
}

double InfoNceLoss(const DualEncoderModel& model, const EncodedPair& pair,
                   ModelGrads* grads, double weight) {
  if (pair.names.empty()) throw ContractViolation("pair without a positive");
  const double inv_tau = std::exp(-model.log_tau);
  SideCache ctx =
      Forward(model.code_embeddings, model.code_projection, pair.context);
  std::vector<SideCache> names;
  names.reserve(pair.names.size());
  std::vector<double> s(pair.names.size());
  for (std::size_t j = 0; j < pair.names.size(); ++j) {
    names.push_back(
        Forward(model.name_embeddings, model.name_projection, pair.names[j]));
    s[j] = Dot(ctx.unit, names[j].unit) * inv_tau;
  }
  const double max_s = *std::max_element(s.begin(), s.end());
  double sum = 0.0;
  for (double sj : s) sum += std::exp(sj - max_s);
  const double lse = max_s + std::log(sum);
  const double loss = lse - s[0];
  if (grads == nullptr) return loss;

  const std::size_t d = model.dim;
  std::vector<double> g(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    g[j] = std::exp(s[j] - lse) - (j == 0 ? 1.0 : 0.0);
  }
  double dtheta = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) dtheta -= g[j] * s[j];
  grads->log_tau += weight * dtheta;

  std::vector<double> dzc(d, 0.0);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double c = weight * g[j] * inv_tau;
    std::vector<double> dzn(d);
    for (std::size_t k = 0; k < d; ++k) {
      dzc[k] += c * names[j].unit[k];
      dzn[k] = c * ctx.unit[k];
    }
    Backward(names[j], model.name_projection, dzn, grads->name_embeddings,
             grads->name_projection);
  }
  Backward(ctx, model.code_projection, dzc, grads->code_embeddings,
           grads->code_projection);
  return loss;
}

namespace {

constexpr char kMagic[8] = {'V', 'A', 'R', 'F', 'I', 'X', 'D', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Bytes(std::string_view s) { out_.append(s); }
  void Str(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    Bytes(s);
  }
  void Mat(const Matrix& m) {
    U32(static_cast<std::uint32_t>(m.rows));
    U32(static_cast<std::uint32_t>(m.cols));
    for (double x : m.data) F64(x);
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  void Need(std::size_t n) {
    if (in_.size() - pos_ < n) throw ModelFormatError("model file truncated");
  }
  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(in_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string_view Bytes(std::size_t n) {
    Need(n);
    std::string_view s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::string Str() { return std::string(Bytes(U32())); }
  Matrix Mat(std::size_t rows, std::size_t cols, const char* what) {
    const std::uint32_t r = U32();
    const std::uint32_t c = U32();
    if (r != rows || c != cols) {
      throw ModelFormatError(std::string("shape mismatch in ") + what +
                             ": stored " + std::to_string(r) + "x" +
                             std::to_string(c) + ", expected " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    Need(static_cast<std::size_t>(r) * c * 8);
    Matrix m(r, c);
    for (double& x : m.data) x = F64();
    return m;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::uint64_t Checksum(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::string SerializeModel(const DualEncoderModel& model) {
  Writer w;
  w.Bytes(std::string_view(kMagic, sizeof kMagic));
  w.U32(kFormatVersion);
  w.U32(static_cast<std::uint32_t>(model.dim));
  w.U32(static_cast<std::uint32_t>(model.vocab.size()));
  for (const std::string& t : model.vocab.tokens()) w.Str(t);
  w.Mat(model.code_embeddings);
  w.Mat(model.name_embeddings);
  w.Mat(model.code_projection);
  w.Mat(model.name_projection);
  w.F64(model.log_tau);
  w.F64(model.scoring.collision_penalty);
  w.U32(model.scoring.length_threshold);
  w.F64(model.scoring.length_penalty_per_char);
  w.U32(model.scoring.window);
  w.U8(model.scoring.hints ? 1 : 0);
  w.U64(Checksum(w.str()));
  return std::move(w.str());
}

DualEncoderModel DeserializeModel(std::string_view bytes,
                                  std::optional<std::size_t> expected_dim) {
  if (bytes.size() < sizeof kMagic + 8 ||
      bytes.substr(0, sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw ModelFormatError("not a reranker model file");
  }
  Reader r(bytes);
  r.Bytes(sizeof kMagic);
  const std::uint32_t version = r.U32();
  if (version != kFormatVersion) {
    throw ModelFormatError("unsupported model format version " +
                           std::to_string(version));
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  Reader tail(bytes.substr(bytes.size() - 8));
  if (tail.U64() != Checksum(body)) {
    throw ModelFormatError("model file checksum mismatch (truncated or corrupt)");
  }
  DualEncoderModel m;
  m.dim = r.U32();
  if (m.dim == 0) throw ModelFormatError("model dimension is zero");
  if (expected_dim && *expected_dim != m.dim) {
    throw ModelFormatError("model dimension " + std::to_string(m.dim) +
                           " does not match expected " +
                           std::to_string(*expected_dim));
  }
  const std::uint32_t v = r.U32();
  std::vector<std::string> tokens;
  tokens.reserve(v);
  for (std::uint32_t i = 0; i < v; ++i) tokens.push_back(r.Str());
  try {
    m.vocab = Vocab::FromTokens(std::move(tokens));
  } catch (const ValidationError& e) {
    throw ModelFormatError(e.what());
  }
  m.code_embeddings = r.Mat(v, m.dim, "code embeddings");
  m.name_embeddings = r.Mat(v, m.dim, "name embeddings");
  m.code_projection = r.Mat(m.dim, m.dim, "code projection");
  m.name_projection = r.Mat(m.dim, m.dim, "name projection");
  m.log_tau = r.F64();
  m.scoring.collision_penalty = r.F64();
  m.scoring.length_threshold = r.U32();
  m.scoring.length_penalty_per_char = r.F64();
  m.scoring.window = r.U32();
  m.scoring.hints = r.U8() != 0;
  if (r.remaining() != 8) throw ModelFormatError("trailing bytes in model file");
  if (!std::isfinite(m.log_tau)) throw ModelFormatError("non-finite temperature");
  return m;
}

void SaveModel(const DualEncoderModel& model,
               const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeModel(model));
}

DualEncoderModel LoadModel(const std::filesystem::path& path,
                           std::optional<std::size_t> expected_dim) {
  try {
    return DeserializeModel(ReadFile(path), expected_dim);
  } catch (const ModelFormatError& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace varfix
