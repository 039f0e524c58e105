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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "facetrank/error.h"
#include "facetrank/text_metrics.h"
#include "oracles.h"
#include "test_util.h"

namespace facetrank {
namespace {

std::vector<Document> Docs(std::initializer_list<std::pair<const char*, const char*>> items) {
  std::vector<Document> out;
  for (const auto& [id, text] : items) out.push_back({id, "", text});
  return out;
}

// Okapi BM25 straight from its definition, one doc at a time.
double Bm25(const std::vector<Document>& docs, size_t d, const std::string& query,
            double k1 = 1.2, double b = 0.75) {
  std::vector<TokenSequence> toks;
  double total = 0;
  for (const auto& doc : docs) {
    toks.push_back(Tokenize(doc.title + " " + doc.text));
    total += toks.back().size();
  }
  const double avg = total / docs.size();
  const double n = docs.size();
  double score = 0;
  for (const auto& term : Tokenize(query)) {
    double df = 0;
    for (const auto& t : toks) df += std::count(t.begin(), t.end(), term) > 0;
    if (df == 0) continue;
    const double tf = std::count(toks[d].begin(), toks[d].end(), term);
    const double idf = std::log(1 + (n - df + 0.5) / (df + 0.5));
    score += idf * tf * (k1 + 1) / (tf + k1 * (1 - b + b * toks[d].size() / avg));
  }
  return score;
}

TEST(Corpus, RejectsBadInput) {
  EXPECT_THROW(Corpus(std::vector<Document>{}), Error);
  EXPECT_THROW(Corpus(Docs({{"a", "x"}, {"a", "y"}})), Error);
  EXPECT_THROW(Corpus(Docs({{"a", "..."}})), Error);
  Corpus c(Docs({{"a", "x"}, {"b", "y"}}));
  EXPECT_EQ(c.at("b").text, "y");
  EXPECT_EQ(c.find("zz"), nullptr);
  EXPECT_THROW(c.at("zz"), Error);
}

TEST(Corpus, LoadsJsonl) {
  auto dir = testutil::TempDir("corpus");
  testutil::WriteFile(dir / "c.jsonl",
                      "{\"doc_id\":\"a\",\"title\":\"T\",\"text\":\"alpha\"}\n\n"
                      "{\"doc_id\":\"b\",\"text\":\"beta\"}\n");
  auto c = LoadCorpus(dir / "c.jsonl");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at("a").title, "T");
  testutil::WriteFile(dir / "bad.jsonl", "{\"doc_id\":\"a\",\"text\":\"x\"}\nnot json\n");
  EXPECT_THROW(LoadCorpus(dir / "bad.jsonl"), Error);
  EXPECT_THROW(LoadCorpus(dir / "missing.jsonl"), Error);
  std::filesystem::remove_all(dir);
}

TEST(InvertedIndex, HandScoredCorpus) {
  const auto docs = Docs({{"d1", "apple banana"}, {"d2", "apple apple cherry"},
                          {"d3", "cherry date"}});
  auto index = InvertedIndex::Build(docs);
  EXPECT_DOUBLE_EQ(index.avg_doc_length(), 7.0 / 3);
  EXPECT_DOUBLE_EQ(index.Idf(2), std::log(1.6));

  const auto hits = index.Retrieve("apple", 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "d2");
  EXPECT_EQ(hits[1].doc_id, "d1");
  // ln(1.6) * 4.4 / 3.457142857 and ln(1.6) * 2.2 / 2.071428571
  EXPECT_NEAR(hits[0].score, std::log(1.6) * 4.4 / (2 + 1.2 * (0.25 + 0.75 * 9.0 / 7)), 1e-12);
  EXPECT_NEAR(hits[1].score, std::log(1.6) * 2.2 / (1 + 1.2 * (0.25 + 0.75 * 6.0 / 7)), 1e-12);
  EXPECT_NEAR(hits[0].score, 0.598186, 1e-6);
}

TEST(InvertedIndex, TiesByDocIdAndNoZeroMatches) {
  auto index = InvertedIndex::Build(Docs({{"z", "same text"}, {"a", "same text"},
                                          {"m", "other words"}}));
  const auto hits = index.Retrieve("same", 5);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "a");
  EXPECT_EQ(hits[1].doc_id, "z");
  EXPECT_TRUE(index.Retrieve("absent", 5).empty());
  EXPECT_EQ(index.Retrieve("same other", 1).size(), 1u);
  EXPECT_THROW(index.Retrieve(" ?! ", 5), Error);
}

TEST(InvertedIndex, RepeatedQueryTermsCount) {
  const auto docs = Docs({{"a", "x y"}, {"b", "y z"}, {"c", "w"}});
  auto index = InvertedIndex::Build(docs);
  const auto once = index.Retrieve("x", 1)[0].score;
  const auto twice = index.Retrieve("x x", 1)[0].score;
  EXPECT_NEAR(twice, 2 * once, 1e-12);
}

TEST(InvertedIndex, TitleIsIndexed) {
  std::vector<Document> docs = {{"a", "Zebra", "stripes"}, {"b", "", "horse"}};
  auto index = InvertedIndex::Build(docs);
  ASSERT_EQ(index.Retrieve("zebra", 5).size(), 1u);
}

TEST(InvertedIndex, MatchesBruteForceScoring) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Document> docs;
    const size_t n = 1 + rng() % 20;
    for (size_t i = 0; i < n; ++i) {
      auto toks = oracle::RandomTokens(rng, 12, 8);
      toks.push_back("filler");
      docs.push_back({"doc" + std::to_string(i), "", oracle::Join(toks)});
    }
    auto index = InvertedIndex::Build(docs);
    auto query = oracle::RandomTokens(rng, 4, 8);
    query.push_back("a");
    const auto hits = index.Retrieve(oracle::Join(query), n);

    std::vector<std::pair<double, std::string>> expected;
    for (size_t d = 0; d < n; ++d) {
      const double s = Bm25(docs, d, oracle::Join(query));
      if (s > 0) expected.push_back({-s, docs[d].doc_id});
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(hits.size(), expected.size());
    for (size_t i = 0; i < hits.size(); ++i) {
      EXPECT_NEAR(hits[i].score, -expected[i].first, 1e-9);
      if (i > 0) {
        EXPECT_TRUE(hits[i - 1].score > hits[i].score ||
                    (hits[i - 1].score == hits[i].score &&
                     hits[i - 1].doc_id < hits[i].doc_id));
      }
    }
  }
}

}  // namespace
}  // namespace facetrank
