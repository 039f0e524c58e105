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

#ifndef FACETRANK_FACETED_RETRIEVER_H_
#define FACETRANK_FACETED_RETRIEVER_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/aspect_explorer.h"
#include "facetrank/corpus_store.h"

namespace facetrank {

struct Candidate {
  size_t pool_index = 0;
  Document doc;
  // Ascending indices into the pool's aspect list.
  std::vector<size_t> aspect_set;
  // aspect index -> 1-based rank of the doc in that aspect's list.
  std::map<size_t, size_t> best_rank;
};

struct CandidatePool {
  std::string query;
  SubAspectList aspects;
  std::vector<Candidate> candidates;
  size_t capacity = 0;

  size_t size() const { return candidates.size(); }
  bool empty() const { return candidates.empty(); }
};

// The joined retrieval query for one aspect ("query aspect").
std::string AspectQuery(std::string_view query, std::string_view aspect);

// One ranked list per aspect, retrieved with AspectQuery.
std::vector<std::vector<ScoredDoc>> RetrievePerAspect(
    const Retriever& retriever, std::string_view query,
    const SubAspectList& aspects, size_t n);

// Deduplicating merge. Visits rank 1 of every list in aspect order, then
// rank 2, and so on. The first sighting of a doc admits it with the next
// pool_index while fewer than `capacity` docs are admitted; every sighting
// of an admitted doc extends its aspect_set and best_rank. Documents are
// resolved through `corpus`.
CandidatePool MergePool(std::string query, SubAspectList aspects,
                        const std::vector<std::vector<ScoredDoc>>& lists,
                        size_t capacity, const Corpus& corpus);

}  // namespace facetrank

#endif  // FACETRANK_FACETED_RETRIEVER_H_
