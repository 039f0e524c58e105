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

#ifndef FACETRANK_LISTWISE_RANKER_H_
#define FACETRANK_LISTWISE_RANKER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/faceted_retriever.h"

namespace facetrank {

struct RankerConfig {
  size_t k = 10;
  double tau = 0.1;
  bool allow_repetition = false;
  uint64_t seed = 0;
};

// Throws Error for tau <= 0, k == 0, an empty pool, or ("k exceeds pool")
// when k > pool size without repetition.
void ValidateRankerConfig(const RankerConfig& config, size_t pool_size);

// One relevance vector per candidate, indexed by pool_index. Stacked, the
// vectors double as the output projection of the decoder.
struct CandidateEncoding {
  std::vector<std::vector<double>> vectors;

  size_t dimension() const { return vectors.empty() ? 0 : vectors[0].size(); }
};

enum class DecodeMode { kGreedy, kSampled };

std::string_view DecodeModeName(DecodeMode mode);

struct RankingList {
  std::vector<size_t> docids;
  std::vector<double> step_logprobs;
  DecodeMode mode = DecodeMode::kGreedy;
};

// "[D{i}] {query} [Q] {a1} [E] {a2} ... [S] {text}" with the candidate's
// own aspects in index order.
std::string FormatInput(const Candidate& candidate, std::string_view query,
                        const SubAspectList& aspects);

// Masked log-softmax of scores / tau. Masked entries are -infinity. Throws
// Error("no candidates available") when every entry is masked.
std::vector<double> StepLogProbs(std::span<const double> scores, double tau,
                                 const std::vector<bool>& masked);

// Probabilities over the pool for decoder state h against the reused
// projection. Masked entries are exactly zero.
std::vector<double> StepDistribution(const CandidateEncoding& encoding,
                                     std::span<const double> decoder_state,
                                     double tau,
                                     const std::vector<bool>& masked);

// Per-pool decoding state. StepScores returns the pre-temperature logit of
// every candidate given the docids chosen so far.
class DecodeSession {
 public:
  virtual ~DecodeSession() = default;
  virtual std::vector<double> StepScores(std::span<const size_t> selected) = 0;
};

class ScoringBackend {
 public:
  virtual ~ScoringBackend() = default;
  virtual std::string Name() const = 0;
  virtual std::unique_ptr<DecodeSession> Open(
      const CandidatePool& pool) const = 0;
};

// A session that produces logits as h^t . e_i over a fixed encoding.
class RepresentationSession : public DecodeSession {
 public:
  explicit RepresentationSession(CandidateEncoding encoding);

  const CandidateEncoding& encoding() const { return encoding_; }
  virtual std::vector<double> DecoderState(
      std::span<const size_t> selected) = 0;
  std::vector<double> StepScores(std::span<const size_t> selected) final;

 private:
  CandidateEncoding encoding_;
};

// Every candidate scores zero at every step.
class UniformBackend : public ScoringBackend {
 public:
  std::string Name() const override { return "uniform"; }
  std::unique_ptr<DecodeSession> Open(const CandidatePool& pool) const override;
};

// Untrained stand-in for the encoder-decoder. Candidates are unit
// term-frequency vectors over the query/aspect/pool vocabulary; the decoder
// state is the unit-normalized sum of the per-aspect query vectors weighted
// by how little each aspect is already covered by the selected prefix.
class ReferenceBackend : public ScoringBackend {
 public:
  class Session : public RepresentationSession {
   public:
    Session(CandidateEncoding encoding,
            std::vector<std::vector<double>> aspect_directions,
            std::vector<std::vector<double>> aspect_coverage);

    std::vector<double> DecoderState(std::span<const size_t> selected) override;
    std::vector<double> AspectWeights(std::span<const size_t> selected) const;

   private:
    std::vector<std::vector<double>> aspect_directions_;
    // [candidate][aspect] coverage of the aspect text by the candidate.
    std::vector<std::vector<double>> aspect_coverage_;
  };

  std::string Name() const override { return "reference"; }
  std::unique_ptr<DecodeSession> Open(const CandidatePool& pool) const override;
  std::unique_ptr<Session> OpenReference(const CandidatePool& pool) const;
};

// Step-wise decoding. Greedy takes the most probable docid (lowest
// pool_index on ties); sampled draws from each step distribution with a
// stream seeded from config.seed.
RankingList Rank(const CandidatePool& pool, const RankerConfig& config,
                 const ScoringBackend& backend,
                 DecodeMode mode = DecodeMode::kGreedy);

// Sum of step log-probabilities of `docids` under the same masked
// distributions Rank uses. Throws Error("masked docid in sequence").
double SequenceLogProb(const CandidatePool& pool, const RankerConfig& config,
                       const ScoringBackend& backend,
                       std::span<const size_t> docids);

}  // namespace facetrank

#endif  // FACETRANK_LISTWISE_RANKER_H_
