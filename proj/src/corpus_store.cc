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

#include "facetrank/corpus_store.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "facetrank/error.h"
#include "facetrank/text_metrics.h"
#include "json.hpp"

namespace facetrank {

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  if (documents_.empty()) throw Error("empty corpus");
  by_id_.reserve(documents_.size());
  for (size_t i = 0; i < documents_.size(); ++i) {
    if (!by_id_.emplace(documents_[i].doc_id, i).second) {
      throw Error("duplicate doc_id " + documents_[i].doc_id);
    }
    if (Tokenize(documents_[i].text).empty()) {
      throw Error("document " + documents_[i].doc_id + " has no text tokens");
    }
  }
}

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = by_id_.find(std::string(doc_id));
  return it == by_id_.end() ? nullptr : &documents_[it->second];
}

const Document& Corpus::at(std::string_view doc_id) const {
  const Document* doc = find(doc_id);
  if (doc == nullptr) throw Error("unknown doc_id " + std::string(doc_id));
  return *doc;
}

Corpus LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path.string());
  std::vector<Document> documents;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      Document doc;
      doc.doc_id = record.at("doc_id").get<std::string>();
      doc.title = record.value("title", "");
      doc.text = record.at("text").get<std::string>();
      documents.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return Corpus(std::move(documents));
}

InvertedIndex InvertedIndex::Build(const std::vector<Document>& documents,
                                   Bm25Params params) {
  if (documents.empty()) throw Error("empty corpus");
  InvertedIndex index;
  index.params_ = params;
  std::unordered_set<std::string_view> seen;
  uint64_t total_length = 0;
  for (const auto& doc : documents) {
    if (!seen.insert(doc.doc_id).second) {
      throw Error("duplicate doc_id " + doc.doc_id);
    }
    const auto doc_number = static_cast<uint32_t>(index.doc_ids_.size());
    const auto tokens = Tokenize(doc.title + " " + doc.text);
    std::unordered_map<std::string_view, uint32_t> counts;
    std::vector<std::string_view> order;
    for (const auto& token : tokens) {
      if (counts[token]++ == 0) order.push_back(token);
    }
    for (auto token : order) {
      index.postings_[std::string(token)].push_back({doc_number, counts[token]});
    }
    index.doc_ids_.push_back(doc.doc_id);
    index.doc_lengths_.push_back(static_cast<uint32_t>(tokens.size()));
    total_length += tokens.size();
  }
  index.avg_doc_length_ = static_cast<double>(total_length) /
                          static_cast<double>(index.doc_ids_.size());
  return index;
}

double InvertedIndex::Idf(size_t document_frequency) const {
  const auto n = static_cast<double>(doc_count());
  const auto df = static_cast<double>(document_frequency);
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

std::vector<ScoredDoc> InvertedIndex::Retrieve(std::string_view query,
                                               size_t n) const {
  const auto terms = Tokenize(query);
  if (terms.empty()) throw Error("empty query");
  std::vector<double> scores(doc_ids_.size(), 0.0);
  std::vector<uint32_t> touched;
  // Guard against an all-empty corpus where avg length is zero.
  const double avg_length = avg_doc_length_ > 0 ? avg_doc_length_ : 1.0;
  for (const auto& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double idf = Idf(it->second.size());
    for (const auto& posting : it->second) {
      const double tf = posting.term_frequency;
      const double norm =
          params_.k1 * (1.0 - params_.b +
                        params_.b * doc_lengths_[posting.doc] / avg_length);
      if (scores[posting.doc] == 0.0) touched.push_back(posting.doc);
      scores[posting.doc] += idf * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }
  std::vector<ScoredDoc> results;
  results.reserve(touched.size());
  for (auto doc : touched) results.push_back({doc_ids_[doc], scores[doc]});
  auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  const size_t keep = std::min(n, results.size());
  std::partial_sort(results.begin(), results.begin() + keep, results.end(),
                    better);
  results.resize(keep);
  return results;
}

}  // namespace facetrank
