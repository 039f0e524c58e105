// Copyright 2026 The facetrank Authors.
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

#include "facetrank/listwise_ranker.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "facetrank/error.h"
#include "facetrank/sft_targets.h"
#include "facetrank/text_metrics.h"

namespace facetrank {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void NormalizeInPlace(std::vector<double>& v) {
  const double norm = std::sqrt(Dot(v, v));
  if (norm == 0.0) return;
  for (double& x : v) x /= norm;
}

class Vocabulary {
 public:
  void Add(const TokenSequence& tokens) {
    for (const auto& t : tokens) ids_.emplace(t, 0);
  }
  // Ids follow lexicographic token order.
  void Freeze() {
    size_t next = 0;
    for (auto& [token, id] : ids_) id = next++;
  }
  size_t size() const { return ids_.size(); }

  std::vector<double> UnitTermVector(const TokenSequence& tokens) const {
    std::vector<double> v(ids_.size(), 0.0);
    for (const auto& t : tokens) {
      if (auto it = ids_.find(t); it != ids_.end()) v[it->second] += 1.0;
    }
    NormalizeInPlace(v);
    return v;
  }

 private:
  std::map<std::string, size_t> ids_;
};

class UniformSession : public DecodeSession {
 public:
  explicit UniformSession(size_t size) : size_(size) {}
  std::vector<double> StepScores(std::span<const size_t>) override {
    return std::vector<double>(size_, 0.0);
  }

 private:
  size_t size_;
};

// Uniform double in [0, 1) from the top 53 bits of the generator.
double NextUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t SampleIndex(std::span<const double> logprobs, std::mt19937_64& rng) {
  const double u = NextUnit(rng);
  double cumulative = 0.0;
  size_t last = logprobs.size();
  for (size_t i = 0; i < logprobs.size(); ++i) {
    if (logprobs[i] == kNegInf) continue;
    const double p = std::exp(logprobs[i]);
    if (p > 0.0) last = i;
    cumulative += p;
    if (u < cumulative) return i;
  }
  return last;
}

size_t ArgMax(std::span<const double> logprobs) {
  size_t best = logprobs.size();
  for (size_t i = 0; i < logprobs.size(); ++i) {
    if (logprobs[i] == kNegInf) continue;
    if (best == logprobs.size() || logprobs[i] > logprobs[best]) best = i;
  }
  return best;
}

}  // namespace

void ValidateRankerConfig(const RankerConfig& config, size_t pool_size) {
  if (!(config.tau > 0.0)) throw Error("tau must be positive");
  if (config.k == 0) throw Error("k must be positive");
  if (pool_size == 0) throw Error("empty candidate pool");
  if (!config.allow_repetition && config.k > pool_size) {
    throw Error("k exceeds pool");
  }
}

std::string_view DecodeModeName(DecodeMode mode) {
  return mode == DecodeMode::kGreedy ? "greedy" : "sampled";
}

std::string FormatInput(const Candidate& candidate, std::string_view query,
                        const SubAspectList& aspects) {
  std::string out = "[D" + std::to_string(candidate.pool_index) + "] ";
  out += query;
  out += " [Q] ";
  for (size_t n = 0; n < candidate.aspect_set.size(); ++n) {
    if (n > 0) out += " [E] ";
    out += aspects.aspects.at(candidate.aspect_set[n]);
  }
  out += " [S] ";
  out += candidate.doc.text;
  return out;
}

std::vector<double> StepLogProbs(std::span<const double> scores, double tau,
                                 const std::vector<bool>& masked) {
  if (!(tau > 0.0)) throw Error("tau must be positive");
  if (masked.size() != scores.size()) throw Error("mask size mismatch");
  double max_logit = kNegInf;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!masked[i]) max_logit = std::max(max_logit, scores[i] / tau);
  }
  if (max_logit == kNegInf) throw Error("no candidates available");
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!masked[i]) total += std::exp(scores[i] / tau - max_logit);
  }
  const double log_total = std::log(total);
  std::vector<double> logprobs(scores.size(), kNegInf);
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!masked[i]) logprobs[i] = scores[i] / tau - max_logit - log_total;
  }
  return logprobs;
}

std::vector<double> StepDistribution(const CandidateEncoding& encoding,
                                     std::span<const double> decoder_state,
                                     double tau,
                                     const std::vector<bool>& masked) {
  if (decoder_state.size() != encoding.dimension()) {
    throw Error("decoder state dimension mismatch");
  }
  std::vector<double> scores;
  scores.reserve(encoding.vectors.size());
  for (const auto& e : encoding.vectors) scores.push_back(Dot(decoder_state, e));
  auto probs = StepLogProbs(scores, tau, masked);
  for (size_t i = 0; i < probs.size(); ++i) {
    probs[i] = masked[i] ? 0.0 : std::exp(probs[i]);
  }
  return probs;
}

RepresentationSession::RepresentationSession(CandidateEncoding encoding)
    : encoding_(std::move(encoding)) {}

std::vector<double> RepresentationSession::StepScores(
    std::span<const size_t> selected) {
  const auto h = DecoderState(selected);
  if (h.size() != encoding_.dimension()) {
    throw Error("decoder state dimension mismatch");
  }
  std::vector<double> scores;
  scores.reserve(encoding_.vectors.size());
  for (const auto& e : encoding_.vectors) scores.push_back(Dot(h, e));
  return scores;
}

std::unique_ptr<DecodeSession> UniformBackend::Open(
    const CandidatePool& pool) const {
  return std::make_unique<UniformSession>(pool.size());
}

ReferenceBackend::Session::Session(
    CandidateEncoding encoding,
    std::vector<std::vector<double>> aspect_directions,
    std::vector<std::vector<double>> aspect_coverage)
    : RepresentationSession(std::move(encoding)),
      aspect_directions_(std::move(aspect_directions)),
      aspect_coverage_(std::move(aspect_coverage)) {}

std::vector<double> ReferenceBackend::Session::AspectWeights(
    std::span<const size_t> selected) const {
  std::vector<double> coverage(aspect_directions_.size(), 0.0);
  for (size_t doc : selected) {
    for (size_t j = 0; j < coverage.size(); ++j) {
      coverage[j] = std::max(coverage[j], aspect_coverage_.at(doc)[j]);
    }
  }
  return WeightsFromCoverage(coverage);
}

std::vector<double> ReferenceBackend::Session::DecoderState(
    std::span<const size_t> selected) {
  const auto weights = AspectWeights(selected);
  std::vector<double> h(encoding().dimension(), 0.0);
  for (size_t j = 0; j < aspect_directions_.size(); ++j) {
    for (size_t x = 0; x < h.size(); ++x) {
      h[x] += weights[j] * aspect_directions_[j][x];
    }
  }
  NormalizeInPlace(h);
  return h;
}

std::unique_ptr<ReferenceBackend::Session> ReferenceBackend::OpenReference(
    const CandidatePool& pool) const {
  if (pool.aspects.aspects.empty()) throw Error("reference backend needs aspects");
  const auto query_tokens = Tokenize(pool.query);
  std::vector<TokenSequence> aspect_queries, aspect_texts, doc_texts;
  for (const auto& aspect : pool.aspects.aspects) {
    aspect_queries.push_back(Tokenize(AspectQuery(pool.query, aspect)));
    aspect_texts.push_back(Tokenize(aspect));
  }
  for (const auto& candidate : pool.candidates) {
    doc_texts.push_back(Tokenize(candidate.doc.text));
  }

  Vocabulary vocab;
  vocab.Add(query_tokens);
  for (const auto& t : aspect_texts) vocab.Add(t);
  for (const auto& t : doc_texts) vocab.Add(t);
  vocab.Freeze();

  CandidateEncoding encoding;
  encoding.vectors.reserve(doc_texts.size());
  for (const auto& t : doc_texts) {
    encoding.vectors.push_back(vocab.UnitTermVector(t));
  }
  std::vector<std::vector<double>> directions;
  for (const auto& t : aspect_queries) {
    directions.push_back(vocab.UnitTermVector(t));
  }
  return std::make_unique<Session>(std::move(encoding), std::move(directions),
                                   CoverageMatrix(doc_texts, aspect_texts));
}

std::unique_ptr<DecodeSession> ReferenceBackend::Open(
    const CandidatePool& pool) const {
  return OpenReference(pool);
}

RankingList Rank(const CandidatePool& pool, const RankerConfig& config,
                 const ScoringBackend& backend, DecodeMode mode) {
  ValidateRankerConfig(config, pool.size());
  auto session = backend.Open(pool);
  std::mt19937_64 rng(config.seed);
  RankingList list;
  list.mode = mode;
  std::vector<bool> masked(pool.size(), false);
  for (size_t step = 0; step < config.k; ++step) {
    const auto scores = session->StepScores(list.docids);
    if (scores.size() != pool.size()) throw Error("backend score count mismatch");
    const auto logprobs = StepLogProbs(scores, config.tau, masked);
    const size_t choice =
        mode == DecodeMode::kGreedy ? ArgMax(logprobs) : SampleIndex(logprobs, rng);
    list.docids.push_back(choice);
    list.step_logprobs.push_back(logprobs[choice]);
    if (!config.allow_repetition) masked[choice] = true;
  }
  return list;
}

double SequenceLogProb(const CandidatePool& pool, const RankerConfig& config,
                       const ScoringBackend& backend,
                       std::span<const size_t> docids) {
  if (!(config.tau > 0.0)) throw Error("tau must be positive");
  if (docids.size() > config.k) throw Error("sequence longer than k");
  for (size_t doc : docids) {
    if (doc >= pool.size()) throw Error("docid outside pool");
  }
  auto session = backend.Open(pool);
  std::vector<bool> masked(pool.size(), false);
  double total = 0.0;
  for (size_t step = 0; step < docids.size(); ++step) {
    if (masked[docids[step]]) throw Error("masked docid in sequence");
    const auto scores = session->StepScores(docids.first(step));
    if (scores.size() != pool.size()) throw Error("backend score count mismatch");
    const auto logprobs = StepLogProbs(scores, config.tau, masked);
    total += logprobs[docids[step]];
    if (!config.allow_repetition) masked[docids[step]] = true;
  }
  return total;
}

}  // namespace facetrank
