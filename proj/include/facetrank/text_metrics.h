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

#ifndef FACETRANK_TEXT_METRICS_H_
#define FACETRANK_TEXT_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace facetrank {

// Lowercased word tokens. Never contains an empty token.
using TokenSequence = std::vector<std::string>;

struct OverlapScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

enum class RougeVariant { kBigram, kLcs };

// Lowercases ASCII letters and splits on every maximal run of characters
// that are not ASCII letters or digits. Bytes >= 0x80 are kept inside tokens
// so UTF-8 words survive intact.
TokenSequence Tokenize(std::string_view text);

// Builds a score from overlap counts; zero denominators give zero.
OverlapScore MakeOverlapScore(double overlap, double candidate_total,
                              double reference_total);

// Rouge-2 uses clipped bigram counts; Rouge-L uses the longest common
// subsequence. An empty side yields an all-zero score.
OverlapScore Rouge(std::span<const std::string> candidate,
                   std::span<const std::string> reference,
                   RougeVariant variant);

// Clipped unigram overlap.
OverlapScore UnigramF1(std::span<const std::string> candidate,
                       std::span<const std::string> reference);

size_t LcsLength(std::span<const std::string> a,
                 std::span<const std::string> b);

// Coverage function: mean of Rouge-2 F1 and Rouge-L F1.
double Phi(std::span<const std::string> candidate,
           std::span<const std::string> reference);
double Phi(std::string_view candidate_text, std::string_view reference_text);

// Token-length weights of the sub-answers, summing to one. Throws Error
// ("degenerate sub-answers") when every sub-answer is empty.
std::vector<double> SubAnswerWeights(
    std::span<const TokenSequence> sub_answers);

// Length-weighted coverage of the sub-answers by a response, using Phi.
double ComRouge(std::string_view response,
                std::span<const std::string> sub_answers);
double ComRouge(std::span<const std::string> response,
                std::span<const TokenSequence> sub_answers);

}  // namespace facetrank

#endif  // FACETRANK_TEXT_METRICS_H_
