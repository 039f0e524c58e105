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

#include "facetrank/evaluation.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "facetrank/error.h"
#include "facetrank/sft_targets.h"

namespace facetrank {

MetricMap EvaluateResponse(std::string_view response,
                           const DatasetRecord& record) {
  const auto r = Tokenize(response);
  const auto a = Tokenize(record.answer);
  MetricMap m;
  m["F1"] = UnigramF1(r, a).f1;
  m["R2"] = Rouge(r, a, RougeVariant::kBigram).f1;
  m["RL"] = Rouge(r, a, RougeVariant::kLcs).f1;
  std::vector<TokenSequence> parts;
  for (const auto& part : record.sub_answers) parts.push_back(Tokenize(part));
  const auto weights = SubAnswerWeights(parts);
  double cr2 = 0.0, crl = 0.0;
  for (size_t i = 0; i < parts.size(); ++i) {
    cr2 += weights[i] * Rouge(r, parts[i], RougeVariant::kBigram).f1;
    crl += weights[i] * Rouge(r, parts[i], RougeVariant::kLcs).f1;
  }
  m["CR2"] = cr2;
  m["CRL"] = crl;
  return m;
}

bool IsRelevant(std::string_view doc_text, std::string_view answer,
                double threshold) {
  return Phi(doc_text, answer) > threshold;
}

std::set<std::string> LabelRelevance(const CandidatePool& pool,
                                     std::string_view answer,
                                     double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    throw Error("relevance threshold outside [0, 1]");
  }
  const auto answer_tokens = Tokenize(answer);
  std::set<std::string> relevant;
  for (const auto& c : pool.candidates) {
    if (Phi(Tokenize(c.doc.text), answer_tokens) > threshold) {
      relevant.insert(c.doc.doc_id);
    }
  }
  return relevant;
}

RankingScores RankingMetrics(std::span<const std::string> ranked_doc_ids,
                             const std::set<std::string>& relevant,
                             std::span<const size_t> cutoffs) {
  RankingScores out;
  out.no_relevant = relevant.empty();
  double precision_sum = 0.0;
  size_t hits = 0;
  for (size_t pos = 0; pos < ranked_doc_ids.size(); ++pos) {
    if (relevant.contains(ranked_doc_ids[pos])) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(pos + 1);
    }
  }
  out.metrics["MAP"] =
      relevant.empty() ? 0.0 : precision_sum / static_cast<double>(relevant.size());
  for (size_t k : cutoffs) {
    if (k == 0) throw Error("ranking cutoff must be positive");
    double dcg = 0.0, ideal = 0.0;
    for (size_t pos = 0; pos < k && pos < ranked_doc_ids.size(); ++pos) {
      if (relevant.contains(ranked_doc_ids[pos])) {
        dcg += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
      }
    }
    for (size_t pos = 0; pos < k && pos < relevant.size(); ++pos) {
      ideal += 1.0 / std::log2(static_cast<double>(pos) + 2.0);
    }
    out.metrics["NDCG@" + std::to_string(k)] = ideal > 0 ? dcg / ideal : 0.0;
  }
  return out;
}

double Comprehensiveness(std::span<const TokenSequence> ranked_docs,
                         std::span<const TokenSequence> sub_answers) {
  const auto phi = CoverageMatrix(ranked_docs, sub_answers);
  std::vector<double> coverage(sub_answers.size(), 0.0);
  double com = 0.0;
  for (size_t t = 0; t < ranked_docs.size(); ++t) {
    const auto weights = WeightsFromCoverage(coverage);
    for (size_t i = 0; i < sub_answers.size(); ++i) {
      com += weights[i] * phi[t][i];
    }
    for (size_t i = 0; i < sub_answers.size(); ++i) {
      coverage[i] = std::max(coverage[i], phi[t][i]);
    }
  }
  return com;
}

double Ncom(std::span<const std::string> ranked_docs,
            std::span<const std::string> silver_docs,
            std::span<const std::string> sub_answers) {
  if (ranked_docs.size() != silver_docs.size()) {
    throw Error("ranking and silver list lengths differ");
  }
  auto tokenize_all = [](std::span<const std::string> texts) {
    std::vector<TokenSequence> out;
    for (const auto& t : texts) out.push_back(Tokenize(t));
    return out;
  };
  const auto answers = tokenize_all(sub_answers);
  const double silver = Comprehensiveness(tokenize_all(silver_docs), answers);
  if (silver == 0.0) return 0.0;
  return Comprehensiveness(tokenize_all(ranked_docs), answers) / silver;
}

std::vector<std::string> RrfFuse(
    const std::vector<std::vector<std::string>>& lists, double k_rrf,
    size_t top) {
  if (!(k_rrf > 0.0)) throw Error("k_rrf must be positive");
  std::unordered_map<std::string, double> scores;
  for (const auto& list : lists) {
    for (size_t rank = 0; rank < list.size(); ++rank) {
      scores[list[rank]] += 1.0 / (k_rrf + static_cast<double>(rank + 1));
    }
  }
  std::vector<std::pair<std::string, double>> fused(scores.begin(), scores.end());
  std::sort(fused.begin(), fused.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (size_t i = 0; i < fused.size() && i < top; ++i) {
    out.push_back(fused[i].first);
  }
  return out;
}

void MetricsReport::Add(const std::string& query_id, const MetricMap& metrics) {
  per_query_[query_id] = metrics;
}

MetricMap MetricsReport::Means() const {
  std::map<std::string, std::pair<double, size_t>> sums;
  for (const auto& [id, metrics] : per_query_) {
    for (const auto& [name, value] : metrics) {
      auto& [sum, count] = sums[name];
      sum += value;
      ++count;
    }
  }
  MetricMap means;
  for (const auto& [name, acc] : sums) {
    means[name] = acc.first / static_cast<double>(acc.second);
  }
  return means;
}

}  // namespace facetrank
