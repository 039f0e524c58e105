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

#ifndef FACETRANK_SFT_TARGETS_H_
#define FACETRANK_SFT_TARGETS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/listwise_ranker.h"
#include "facetrank/text_metrics.h"

namespace facetrank {

// Sub-aspect importance from current coverage: w_i = 1 - c_i / sum_j c_j.
// An all-zero coverage vector normalizes to zeros, giving w = 1 everywhere.
std::vector<double> WeightsFromCoverage(std::span<const double> coverage);

// Importance after `selected_docs`: coverage of a_i is the best Phi over the
// selected docs. Throws Error when sub_answers is empty.
std::vector<double> AspectWeights(std::span<const std::string> selected_docs,
                                  std::span<const std::string> sub_answers);

// Sum_i w_i * Phi(doc, a_i). Throws Error on a dimension mismatch.
double CoverageGain(std::string_view doc_text, std::span<const double> weights,
                    std::span<const std::string> sub_answers);

// phi[d][i] = Phi(docs[d], sub_answers[i]).
std::vector<std::vector<double>> CoverageMatrix(
    std::span<const TokenSequence> docs,
    std::span<const TokenSequence> sub_answers);

struct SilverTarget {
  std::vector<size_t> docids;
  std::vector<double> step_utilities;
  std::vector<std::vector<double>> weight_trace;
};

// Greedy coverage-utility list of length k over the pool, weights
// recomputed between steps, lowest pool_index on ties.
SilverTarget BuildSilverList(const CandidatePool& pool,
                             std::span<const std::string> sub_answers,
                             size_t k);

// Next-token loss of the silver docids under the ranker's distributions.
double SftLossValue(const CandidatePool& pool, const RankerConfig& config,
                    const ScoringBackend& backend, const SilverTarget& target);

}  // namespace facetrank

#endif  // FACETRANK_SFT_TARGETS_H_
