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

#ifndef FACETRANK_CORPUS_STORE_H_
#define FACETRANK_CORPUS_STORE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace facetrank {

struct Document {
  std::string doc_id;
  std::string title;
  std::string text;
};

// Documents in ingestion order with lookup by id.
class Corpus {
 public:
  Corpus() = default;
  // Throws Error on an empty corpus or a duplicate doc_id.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  size_t size() const { return documents_.size(); }
  // Throws Error for an unknown id.
  const Document& at(std::string_view doc_id) const;
  const Document* find(std::string_view doc_id) const;

 private:
  std::vector<Document> documents_;
  std::unordered_map<std::string, size_t> by_id_;
};

// Reads newline-delimited {"doc_id", "title", "text"} records. Blank lines
// are skipped.
Corpus LoadCorpus(const std::filesystem::path& path);

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

// The fixed first-stage retriever. Implementations must be safe for
// concurrent Retrieve calls.
class Retriever {
 public:
  virtual ~Retriever() = default;
  // Best-first list of at most n documents. Throws Error("empty query") when
  // the query has no tokens.
  virtual std::vector<ScoredDoc> Retrieve(std::string_view query,
                                          size_t n) const = 0;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct Posting {
  uint32_t doc = 0;  // position in the corpus
  uint32_t term_frequency = 0;
};

// Immutable BM25 index over tokenize(title + " " + text).
class InvertedIndex : public Retriever {
 public:
  // Throws Error on an empty or duplicate-id document set.
  static InvertedIndex Build(const std::vector<Document>& documents,
                             Bm25Params params = {});

  // Scores sum over query tokens, so a repeated query term counts once per
  // occurrence. Ties are broken by ascending doc_id; docs with no matching
  // term are never returned.
  std::vector<ScoredDoc> Retrieve(std::string_view query,
                                  size_t n) const override;

  const std::unordered_map<std::string, std::vector<Posting>>& postings()
      const {
    return postings_;
  }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<uint32_t>& doc_lengths() const { return doc_lengths_; }
  size_t doc_count() const { return doc_ids_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  const Bm25Params& params() const { return params_; }

  // Robertson-Sparck Jones idf with +1 inside the log; always positive.
  double Idf(size_t document_frequency) const;

 private:
  InvertedIndex() = default;

  Bm25Params params_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::string> doc_ids_;
  std::vector<uint32_t> doc_lengths_;
  double avg_doc_length_ = 0.0;
};

}  // namespace facetrank

#endif  // FACETRANK_CORPUS_STORE_H_
