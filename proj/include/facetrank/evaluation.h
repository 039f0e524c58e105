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

#ifndef FACETRANK_EVALUATION_H_
#define FACETRANK_EVALUATION_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/dataset.h"
#include "facetrank/faceted_retriever.h"
#include "facetrank/text_metrics.h"

namespace facetrank {

using MetricMap = std::map<std::string, double>;

// F1, R2, RL against the answer; CR2 and CRL as length-weighted Rouge-2 and
// Rouge-L F1 against the sub-answers. All F-measures.
MetricMap EvaluateResponse(std::string_view response,
                           const DatasetRecord& record);

// Docs whose Phi against the answer strictly exceeds the threshold.
std::set<std::string> LabelRelevance(const CandidatePool& pool,
                                     std::string_view answer,
                                     double threshold = 0.5);
bool IsRelevant(std::string_view doc_text, std::string_view answer,
                double threshold = 0.5);

struct RankingScores {
  MetricMap metrics;  // "MAP", "NDCG@k" for every cutoff
  bool no_relevant = false;
};

// Binary-gain NDCG with log2(position + 1) discount and MAP normalized by
// the total relevant count. With nothing relevant every metric is 0 and the
// result is flagged.
RankingScores RankingMetrics(std::span<const std::string> ranked_doc_ids,
                             const std::set<std::string>& relevant,
                             std::span<const size_t> cutoffs);

// Sum over positions t of sum_i w^t_i * Phi(d^t, a_i), weights from the
// list's own prefix before t.
double Comprehensiveness(std::span<const TokenSequence> ranked_docs,
                         std::span<const TokenSequence> sub_answers);

// COM(list) / COM(silver), 0 when COM(silver) is 0. Throws Error when the
// two lists differ in length.
double Ncom(std::span<const std::string> ranked_docs,
            std::span<const std::string> silver_docs,
            std::span<const std::string> sub_answers);

// Reciprocal rank fusion: score(d) = sum 1 / (k_rrf + rank), ranks from 1;
// descending score, ascending doc_id on ties, truncated to `top`.
std::vector<std::string> RrfFuse(
    const std::vector<std::vector<std::string>>& lists, double k_rrf,
    size_t top);

// Per-query metric values and their means. A query may omit metrics
// (e.g. ranking metrics when it has no relevant docs); each mean is taken
// over the queries that report that metric.
class MetricsReport {
 public:
  void Add(const std::string& query_id, const MetricMap& metrics);
  const std::map<std::string, MetricMap>& per_query() const {
    return per_query_;
  }
  MetricMap Means() const;
  size_t query_count() const { return per_query_.size(); }

 private:
  std::map<std::string, MetricMap> per_query_;
};

}  // namespace facetrank

#endif  // FACETRANK_EVALUATION_H_
