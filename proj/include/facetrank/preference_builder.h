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

#ifndef FACETRANK_PREFERENCE_BUILDER_H_
#define FACETRANK_PREFERENCE_BUILDER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/dataset.h"
#include "facetrank/listwise_ranker.h"

namespace facetrank {

// Produces the final response from the query and the ranked documents.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string Name() const = 0;
  // Throws TransportError for remote failures.
  virtual std::string Generate(const std::string& query,
                               const std::vector<std::string>& documents) = 0;
};

// Sentences are cut at '.', '!' and '?'. Each round picks the sentence
// whose not-yet-used tokens best match the query (unigram F1), preferring
// earlier documents and earlier positions on ties; picked sentences are
// joined with single spaces in pick order.
std::string OracleGenerate(std::string_view query,
                           std::span<const std::string> ranked_docs,
                           size_t budget);

class OracleGenerator : public Generator {
 public:
  explicit OracleGenerator(size_t budget) : budget_(budget) {}
  std::string Name() const override { return "oracle"; }
  std::string Generate(const std::string& query,
                       const std::vector<std::string>& documents) override {
    return OracleGenerate(query, documents, budget_);
  }

 private:
  size_t budget_;
};

// Phi(response, answer) + com-rouge over the sub-answers; in [0, 2].
double Reward(std::string_view response, std::string_view answer,
              std::span<const std::string> sub_answers);

enum class Provenance { kGreedy, kSampled };

struct RewardedList {
  RankingList list;
  std::string response;
  double reward = 0.0;
  Provenance provenance = Provenance::kGreedy;
};

struct PreferencePair {
  RewardedList winner;
  RewardedList loser;
  double gap = 0.0;
};

// One greedy list followed by `num_samples` sampled lists, sample s drawn
// with seed config.seed + s. Generator calls are retried `retries` times on
// TransportError before the error propagates.
std::vector<RewardedList> GenerateRewardedLists(
    const CandidatePool& pool, const RankerConfig& config,
    const ScoringBackend& backend, Generator& generator,
    const DatasetRecord& record, size_t num_samples, int retries = 0);

// Pairs every sampled list with the greedy list when their reward gap
// exceeds mu; the higher reward wins. Throws Error("unilaterality violated")
// unless exactly one greedy list is present.
std::vector<PreferencePair> BuildUs3Pairs(std::span<const RewardedList> lists,
                                          double mu);

// Ablation: shuffles the lists with `seed` and pairs neighbours, ignoring
// provenance and the significance threshold. Equal rewards are skipped.
std::vector<PreferencePair> BuildRandomPairs(std::span<const RewardedList> lists,
                                             uint64_t seed);

// Re-checks unilaterality and gap > mu. Returns an empty string when the
// pair is valid, otherwise the violated rule.
std::string ValidateUs3Pair(bool winner_is_greedy, bool loser_is_greedy,
                            double winner_reward, double loser_reward,
                            double gap, double mu);

// -log sigmoid(beta * ((lp_w - ref_w) - (lp_l - ref_l))).
double DpoLossValue(double policy_logprob_winner, double policy_logprob_loser,
                    double reference_logprob_winner,
                    double reference_logprob_loser, double beta);

}  // namespace facetrank

#endif  // FACETRANK_PREFERENCE_BUILDER_H_
