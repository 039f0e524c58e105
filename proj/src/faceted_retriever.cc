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

#include "facetrank/faceted_retriever.h"

#include <algorithm>
#include <unordered_map>

#include "facetrank/error.h"

namespace facetrank {

std::string AspectQuery(std::string_view query, std::string_view aspect) {
  std::string joined(query);
  joined += ' ';
  joined += aspect;
  return joined;
}

std::vector<std::vector<ScoredDoc>> RetrievePerAspect(
    const Retriever& retriever, std::string_view query,
    const SubAspectList& aspects, size_t n) {
  if (n == 0) throw Error("retrieval depth must be positive");
  if (aspects.aspects.empty()) throw Error("no aspects to retrieve for");
  std::vector<std::vector<ScoredDoc>> lists;
  lists.reserve(aspects.aspects.size());
  for (const auto& aspect : aspects.aspects) {
    lists.push_back(retriever.Retrieve(AspectQuery(query, aspect), n));
  }
  return lists;
}

CandidatePool MergePool(std::string query, SubAspectList aspects,
                        const std::vector<std::vector<ScoredDoc>>& lists,
                        size_t capacity, const Corpus& corpus) {
  if (capacity == 0) throw Error("pool capacity must be positive");
  if (lists.size() != aspects.aspects.size()) {
    throw Error("per-aspect list count does not match aspect count");
  }
  CandidatePool pool;
  pool.query = std::move(query);
  pool.aspects = std::move(aspects);
  pool.capacity = capacity;

  std::unordered_map<std::string, size_t> admitted;
  size_t depth = 0;
  for (const auto& list : lists) depth = std::max(depth, list.size());
  for (size_t rank = 0; rank < depth; ++rank) {
    for (size_t aspect = 0; aspect < lists.size(); ++aspect) {
      if (rank >= lists[aspect].size()) continue;
      const auto& doc_id = lists[aspect][rank].doc_id;
      auto it = admitted.find(doc_id);
      if (it == admitted.end()) {
        if (pool.candidates.size() >= capacity) continue;
        Candidate candidate;
        candidate.pool_index = pool.candidates.size();
        candidate.doc = corpus.at(doc_id);
        pool.candidates.push_back(std::move(candidate));
        it = admitted.emplace(doc_id, pool.candidates.size() - 1).first;
      }
      Candidate& candidate = pool.candidates[it->second];
      // A list holds each doc once, so the first sighting is the best rank.
      if (candidate.best_rank.emplace(aspect, rank + 1).second) {
        candidate.aspect_set.insert(
            std::upper_bound(candidate.aspect_set.begin(),
                             candidate.aspect_set.end(), aspect),
            aspect);
      }
    }
  }
  return pool;
}

}  // namespace facetrank
