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

#include "facetrank/sft_targets.h"

#include <algorithm>

#include "facetrank/error.h"

namespace facetrank {

std::vector<double> WeightsFromCoverage(std::span<const double> coverage) {
  double total = 0.0;
  for (double c : coverage) total += c;
  std::vector<double> weights(coverage.size(), 1.0);
  if (total > 0.0) {
    for (size_t i = 0; i < coverage.size(); ++i) {
      weights[i] = 1.0 - coverage[i] / total;
    }
  }
  return weights;
}

std::vector<double> AspectWeights(std::span<const std::string> selected_docs,
                                  std::span<const std::string> sub_answers) {
  if (sub_answers.empty()) throw Error("no sub-answers");
  std::vector<double> coverage(sub_answers.size(), 0.0);
  for (const auto& doc : selected_docs) {
    const auto doc_tokens = Tokenize(doc);
    for (size_t i = 0; i < sub_answers.size(); ++i) {
      coverage[i] =
          std::max(coverage[i], Phi(doc_tokens, Tokenize(sub_answers[i])));
    }
  }
  return WeightsFromCoverage(coverage);
}

double CoverageGain(std::string_view doc_text, std::span<const double> weights,
                    std::span<const std::string> sub_answers) {
  if (weights.size() != sub_answers.size()) {
    throw Error("weight/sub-answer dimension mismatch");
  }
  const auto doc_tokens = Tokenize(doc_text);
  double gain = 0.0;
  for (size_t i = 0; i < sub_answers.size(); ++i) {
    gain += weights[i] * Phi(doc_tokens, Tokenize(sub_answers[i]));
  }
  return gain;
}

std::vector<std::vector<double>> CoverageMatrix(
    std::span<const TokenSequence> docs,
    std::span<const TokenSequence> sub_answers) {
  std::vector<std::vector<double>> phi(docs.size());
  for (size_t d = 0; d < docs.size(); ++d) {
    phi[d].reserve(sub_answers.size());
    for (const auto& answer : sub_answers) {
      phi[d].push_back(Phi(docs[d], answer));
    }
  }
  return phi;
}

SilverTarget BuildSilverList(const CandidatePool& pool,
                             std::span<const std::string> sub_answers,
                             size_t k) {
  if (sub_answers.empty()) throw Error("silver lists need sub-answers");
  if (k > pool.size()) throw Error("k exceeds pool");

  std::vector<TokenSequence> docs, answers;
  for (const auto& candidate : pool.candidates) {
    docs.push_back(Tokenize(candidate.doc.text));
  }
  for (const auto& answer : sub_answers) answers.push_back(Tokenize(answer));
  const auto phi = CoverageMatrix(docs, answers);

  SilverTarget target;
  std::vector<bool> taken(pool.size(), false);
  std::vector<double> coverage(answers.size(), 0.0);
  for (size_t step = 0; step < k; ++step) {
    const auto weights = WeightsFromCoverage(coverage);
    size_t best = pool.size();
    double best_gain = 0.0;
    for (size_t d = 0; d < pool.size(); ++d) {
      if (taken[d]) continue;
      double gain = 0.0;
      for (size_t i = 0; i < answers.size(); ++i) gain += weights[i] * phi[d][i];
      if (best == pool.size() || gain > best_gain) {
        best = d;
        best_gain = gain;
      }
    }
    taken[best] = true;
    for (size_t i = 0; i < answers.size(); ++i) {
      coverage[i] = std::max(coverage[i], phi[best][i]);
    }
    target.docids.push_back(best);
    target.step_utilities.push_back(best_gain);
    target.weight_trace.push_back(weights);
  }
  return target;
}

double SftLossValue(const CandidatePool& pool, const RankerConfig& config,
                    const ScoringBackend& backend, const SilverTarget& target) {
  return -SequenceLogProb(pool, config, backend, target.docids);
}

}  // namespace facetrank
