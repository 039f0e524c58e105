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

#include "facetrank/text_metrics.h"

#include <algorithm>
#include <map>
#include <utility>

#include "facetrank/error.h"

namespace facetrank {
namespace {

bool IsTokenChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

using Bigram = std::pair<std::string_view, std::string_view>;

std::map<Bigram, int> CountBigrams(std::span<const std::string> tokens) {
  std::map<Bigram, int> counts;
  for (size_t i = 1; i < tokens.size(); ++i) {
    ++counts[{tokens[i - 1], tokens[i]}];
  }
  return counts;
}

}  // namespace

TokenSequence Tokenize(std::string_view text) {
  TokenSequence tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsTokenChar(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

OverlapScore MakeOverlapScore(double overlap, double candidate_total,
                              double reference_total) {
  OverlapScore score;
  if (candidate_total <= 0 || reference_total <= 0 || overlap <= 0) {
    return score;
  }
  score.precision = overlap / candidate_total;
  score.recall = overlap / reference_total;
  score.f1 = 2 * score.precision * score.recall /
             (score.precision + score.recall);
  return score;
}

size_t LcsLength(std::span<const std::string> a,
                 std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<size_t> prev(b.size() + 1, 0), row(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      row[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], row[j - 1]);
    }
    std::swap(prev, row);
  }
  return prev[b.size()];
}

OverlapScore Rouge(std::span<const std::string> candidate,
                   std::span<const std::string> reference,
                   RougeVariant variant) {
  if (candidate.empty() || reference.empty()) return {};
  if (variant == RougeVariant::kLcs) {
    const auto lcs = static_cast<double>(LcsLength(candidate, reference));
    return MakeOverlapScore(lcs, static_cast<double>(candidate.size()),
                            static_cast<double>(reference.size()));
  }
  const auto cand = CountBigrams(candidate);
  const auto ref = CountBigrams(reference);
  int overlap = 0;
  for (const auto& [bigram, count] : cand) {
    if (auto it = ref.find(bigram); it != ref.end()) {
      overlap += std::min(count, it->second);
    }
  }
  return MakeOverlapScore(overlap, static_cast<double>(candidate.size() - 1),
                          static_cast<double>(reference.size() - 1));
}

OverlapScore UnigramF1(std::span<const std::string> candidate,
                       std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return {};
  std::map<std::string_view, int> ref_counts;
  for (const auto& token : reference) ++ref_counts[token];
  int overlap = 0;
  for (const auto& token : candidate) {
    auto it = ref_counts.find(token);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return MakeOverlapScore(overlap, static_cast<double>(candidate.size()),
                          static_cast<double>(reference.size()));
}

double Phi(std::span<const std::string> candidate,
           std::span<const std::string> reference) {
  return (Rouge(candidate, reference, RougeVariant::kBigram).f1 +
          Rouge(candidate, reference, RougeVariant::kLcs).f1) /
         2;
}

double Phi(std::string_view candidate_text, std::string_view reference_text) {
  return Phi(Tokenize(candidate_text), Tokenize(reference_text));
}

std::vector<double> SubAnswerWeights(
    std::span<const TokenSequence> sub_answers) {
  size_t total = 0;
  for (const auto& answer : sub_answers) total += answer.size();
  if (total == 0) throw Error("degenerate sub-answers");
  std::vector<double> weights;
  weights.reserve(sub_answers.size());
  for (const auto& answer : sub_answers) {
    weights.push_back(static_cast<double>(answer.size()) /
                      static_cast<double>(total));
  }
  return weights;
}

double ComRouge(std::span<const std::string> response,
                std::span<const TokenSequence> sub_answers) {
  const auto weights = SubAnswerWeights(sub_answers);
  double score = 0.0;
  for (size_t i = 0; i < sub_answers.size(); ++i) {
    if (weights[i] > 0) score += weights[i] * Phi(response, sub_answers[i]);
  }
  return score;
}

double ComRouge(std::string_view response,
                std::span<const std::string> sub_answers) {
  std::vector<TokenSequence> tokenized;
  tokenized.reserve(sub_answers.size());
  for (const auto& answer : sub_answers) tokenized.push_back(Tokenize(answer));
  return ComRouge(Tokenize(response), tokenized);
}

}  // namespace facetrank
