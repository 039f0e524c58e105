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

#include "facetrank/preference_builder.h"

#include <cmath>
#include <random>
#include <unordered_set>

#include "facetrank/error.h"
#include "facetrank/text_metrics.h"

namespace facetrank {
namespace {

struct Sentence {
  std::string text;
  TokenSequence tokens;
};

std::vector<Sentence> SplitSentences(std::string_view doc) {
  std::vector<Sentence> sentences;
  size_t start = 0;
  auto flush = [&](size_t end) {
    auto piece = doc.substr(start, end - start);
    const auto b = piece.find_first_not_of(" \t\r\n");
    if (b != std::string_view::npos) {
      piece = piece.substr(b, piece.find_last_not_of(" \t\r\n") - b + 1);
      auto tokens = Tokenize(piece);
      if (!tokens.empty()) sentences.push_back({std::string(piece), std::move(tokens)});
    }
    start = end;
  };
  for (size_t i = 0; i < doc.size(); ++i) {
    if (doc[i] == '.' || doc[i] == '!' || doc[i] == '?') flush(i + 1);
  }
  flush(doc.size());
  return sentences;
}

bool IsGreedy(const RewardedList& list) {
  return list.provenance == Provenance::kGreedy;
}

PreferencePair MakePair(const RewardedList& a, const RewardedList& b) {
  if (a.reward >= b.reward) return {a, b, a.reward - b.reward};
  return {b, a, b.reward - a.reward};
}

}  // namespace

std::string OracleGenerate(std::string_view query,
                           std::span<const std::string> ranked_docs,
                           size_t budget) {
  if (budget == 0) throw Error("generator budget must be positive");
  std::vector<Sentence> sentences;
  for (const auto& doc : ranked_docs) {
    for (auto& s : SplitSentences(doc)) sentences.push_back(std::move(s));
  }
  const auto query_tokens = Tokenize(query);
  std::unordered_set<std::string> used;
  std::vector<bool> picked(sentences.size(), false);
  std::string response;
  for (size_t round = 0; round < budget && round < sentences.size(); ++round) {
    size_t best = sentences.size();
    double best_score = 0.0;
    for (size_t i = 0; i < sentences.size(); ++i) {
      if (picked[i]) continue;
      TokenSequence novel;
      for (const auto& t : sentences[i].tokens) {
        if (!used.contains(t)) novel.push_back(t);
      }
      const double score = UnigramF1(novel, query_tokens).f1;
      if (best == sentences.size() || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    picked[best] = true;
    for (const auto& t : sentences[best].tokens) used.insert(t);
    if (!response.empty()) response += ' ';
    response += sentences[best].text;
  }
  return response;
}

double Reward(std::string_view response, std::string_view answer,
              std::span<const std::string> sub_answers) {
  if (answer.empty()) throw Error("empty answer");
  if (sub_answers.empty()) throw Error("no sub-answers");
  const auto response_tokens = Tokenize(response);
  if (response_tokens.empty()) return 0.0;
  std::vector<TokenSequence> parts;
  for (const auto& a : sub_answers) parts.push_back(Tokenize(a));
  return Phi(response_tokens, Tokenize(answer)) +
         ComRouge(response_tokens, parts);
}

std::vector<RewardedList> GenerateRewardedLists(
    const CandidatePool& pool, const RankerConfig& config,
    const ScoringBackend& backend, Generator& generator,
    const DatasetRecord& record, size_t num_samples, int retries) {
  if (num_samples == 0) throw Error("num_samples must be positive");
  std::vector<RewardedList> out;
  for (size_t s = 0; s <= num_samples; ++s) {
    RewardedList rewarded;
    if (s == 0) {
      rewarded.list = Rank(pool, config, backend, DecodeMode::kGreedy);
      rewarded.provenance = Provenance::kGreedy;
    } else {
      RankerConfig sample_config = config;
      sample_config.seed = config.seed + (s - 1);
      rewarded.list = Rank(pool, sample_config, backend, DecodeMode::kSampled);
      rewarded.provenance = Provenance::kSampled;
    }
    std::vector<std::string> docs;
    for (size_t d : rewarded.list.docids) {
      docs.push_back(pool.candidates[d].doc.text);
    }
    for (int attempt = 0;; ++attempt) {
      try {
        rewarded.response = generator.Generate(pool.query, docs);
        break;
      } catch (const TransportError&) {
        if (attempt >= retries) throw;
      }
    }
    rewarded.reward = Reward(rewarded.response, record.answer, record.sub_answers);
    out.push_back(std::move(rewarded));
  }
  return out;
}

std::vector<PreferencePair> BuildUs3Pairs(std::span<const RewardedList> lists,
                                          double mu) {
  if (!(mu >= 0.0)) throw Error("mu must be non-negative");
  const RewardedList* greedy = nullptr;
  for (const auto& list : lists) {
    if (!IsGreedy(list)) continue;
    if (greedy != nullptr) throw Error("unilaterality violated");
    greedy = &list;
  }
  if (greedy == nullptr) throw Error("unilaterality violated");
  std::vector<PreferencePair> pairs;
  for (const auto& list : lists) {
    if (IsGreedy(list)) continue;
    if (std::abs(list.reward - greedy->reward) > mu) {
      pairs.push_back(MakePair(list, *greedy));
    }
  }
  return pairs;
}

std::vector<PreferencePair> BuildRandomPairs(std::span<const RewardedList> lists,
                                             uint64_t seed) {
  std::vector<size_t> order(lists.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }
  std::vector<PreferencePair> pairs;
  for (size_t i = 0; i + 1 < order.size(); i += 2) {
    const auto& a = lists[order[i]];
    const auto& b = lists[order[i + 1]];
    if (a.reward != b.reward) pairs.push_back(MakePair(a, b));
  }
  return pairs;
}

std::string ValidateUs3Pair(bool winner_is_greedy, bool loser_is_greedy,
                            double winner_reward, double loser_reward,
                            double gap, double mu) {
  if (winner_is_greedy == loser_is_greedy) return "unilaterality";
  if (!(gap > mu)) return "significance";
  if (!(winner_reward > loser_reward)) return "orientation";
  if (std::abs((winner_reward - loser_reward) - gap) > 1e-12) return "gap";
  return {};
}

double DpoLossValue(double policy_logprob_winner, double policy_logprob_loser,
                    double reference_logprob_winner,
                    double reference_logprob_loser, double beta) {
  for (double lp : {policy_logprob_winner, policy_logprob_loser,
                    reference_logprob_winner, reference_logprob_loser}) {
    if (!std::isfinite(lp)) throw Error("non-finite log-probability");
    if (lp > 0.0) throw Error("invalid log-probability");
  }
  if (!std::isfinite(beta) || !(beta > 0.0)) throw Error("beta must be positive");
  const double margin =
      beta * ((policy_logprob_winner - reference_logprob_winner) -
              (policy_logprob_loser - reference_logprob_loser));
  // -log sigmoid(m) = softplus(-m), evaluated without overflow.
  return margin >= 0 ? std::log1p(std::exp(-margin))
                     : -margin + std::log1p(std::exp(margin));
}

}  // namespace facetrank
