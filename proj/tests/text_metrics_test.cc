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

#include <gtest/gtest.h>

#include <random>

#include "facetrank/error.h"
#include "oracles.h"

namespace facetrank {
namespace {

TokenSequence T(std::initializer_list<const char*> words) {
  return TokenSequence(words.begin(), words.end());
}

TEST(Tokenize, LowercasesAndSplits) {
  EXPECT_EQ(Tokenize("The cat, sat!"), T({"the", "cat", "sat"}));
  EXPECT_EQ(Tokenize("a-b  C"), T({"a", "b", "c"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize(" ,;! ").empty());
  EXPECT_EQ(Tokenize("R2D2 x86"), T({"r2d2", "x86"}));
}

TEST(Tokenize, KeepsNonAsciiBytesInsideTokens) {
  EXPECT_EQ(Tokenize("Caf\xc3\xa9 au lait"), T({"caf\xc3\xa9", "au", "lait"}));
}

TEST(Rouge, BigramHandCases) {
  auto s = Rouge(T({"a", "b", "c", "d"}), T({"a", "b", "c", "d"}), RougeVariant::kBigram);
  EXPECT_DOUBLE_EQ(s.f1, 1.0);
  s = Rouge(T({"a", "b", "c", "d"}), T({"a", "b", "x", "d"}), RougeVariant::kBigram);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3);
  EXPECT_DOUBLE_EQ(s.recall, 1.0 / 3);
  EXPECT_DOUBLE_EQ(s.f1, 1.0 / 3);
}

TEST(Rouge, BigramClipsRepeats) {
  // cand has "a a" twice, ref once.
  auto s = Rouge(T({"a", "a", "a"}), T({"a", "a", "b"}), RougeVariant::kBigram);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
}

TEST(Rouge, LcsHandCase) {
  auto s = Rouge(T({"a", "b", "c", "d"}), T({"a", "c", "b", "d"}), RougeVariant::kLcs);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_DOUBLE_EQ(s.recall, 0.75);
  EXPECT_DOUBLE_EQ(s.f1, 0.75);
  EXPECT_EQ(LcsLength(T({"a", "b", "c", "d"}), T({"a", "c", "b", "d"})), 3u);
}

TEST(Rouge, EmptySideIsZero) {
  for (auto v : {RougeVariant::kBigram, RougeVariant::kLcs}) {
    auto s = Rouge(T({}), T({"a", "b"}), v);
    EXPECT_EQ(s.precision, 0.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.f1, 0.0);
    EXPECT_EQ(Rouge(T({"a", "b"}), T({}), v).f1, 0.0);
  }
  // A single token has no bigram.
  EXPECT_EQ(Rouge(T({"a"}), T({"a"}), RougeVariant::kBigram).f1, 0.0);
}

TEST(UnigramF1, HandCases) {
  EXPECT_DOUBLE_EQ(UnigramF1(T({"a", "b", "c"}), T({"a", "b", "c"})).f1, 1.0);
  EXPECT_DOUBLE_EQ(UnigramF1(T({"a", "b", "c"}), T({"b", "c", "d"})).f1, 2.0 / 3);
  EXPECT_EQ(UnigramF1(T({}), T({"a"})).f1, 0.0);
}

TEST(Phi, HandCases) {
  EXPECT_DOUBLE_EQ(Phi("a b c d", "a b x d"), 13.0 / 24);
  EXPECT_DOUBLE_EQ(Phi("same words here", "Same, words here!"), 1.0);
  EXPECT_EQ(Phi("anything at all", ""), 0.0);
}

TEST(ComRouge, HandCases) {
  const std::vector<std::string> one = {"x y z"};
  EXPECT_DOUBLE_EQ(ComRouge("x y z", one), 1.0);
  const std::vector<std::string> two = {"p q r", "s"};
  EXPECT_DOUBLE_EQ(ComRouge("p q r", two), 0.75);
  EXPECT_EQ(ComRouge("u v", two), 0.0);
}

TEST(ComRouge, DegenerateSubAnswersThrow) {
  const std::vector<std::string> empty = {"", " ."};
  EXPECT_THROW(ComRouge("a b", empty), Error);
  EXPECT_THROW(ComRouge("a b", std::vector<std::string>{}), Error);
}

TEST(SubAnswerWeights, SumToOne) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    std::vector<TokenSequence> subs(1 + n % 5);
    for (auto& s : subs) s = oracle::RandomTokens(rng, 12, 6);
    subs[0].push_back("x");
    const auto d = SubAnswerWeights(subs);
    double total = 0;
    for (double x : d) total += x;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

// Random fixtures against the brute-force oracle.
TEST(RougeProperty, MatchesOracle) {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 500; ++n) {
    const auto a = oracle::RandomTokens(rng, 10, 4);
    const auto b = oracle::RandomTokens(rng, 10, 4);
    const auto bi = Rouge(a, b, RougeVariant::kBigram);
    const auto lcs = Rouge(a, b, RougeVariant::kLcs);
    const auto uni = UnigramF1(a, b);
    EXPECT_NEAR(bi.f1, oracle::Bigram(a, b).f, 1e-12);
    EXPECT_NEAR(lcs.f1, oracle::Lcs(a, b).f, 1e-12);
    EXPECT_NEAR(uni.f1, oracle::Unigram(a, b).f, 1e-12);
    for (const auto& s : {bi, lcs, uni}) {
      EXPECT_GE(s.precision, 0.0);
      EXPECT_LE(s.precision, 1.0);
      EXPECT_GE(s.recall, 0.0);
      EXPECT_LE(s.recall, 1.0);
      EXPECT_LE(s.f1, 1.0);
      EXPECT_EQ(s.f1 == 0.0, s.precision * s.recall == 0.0);
    }
    if (a.size() >= 2) {
      EXPECT_DOUBLE_EQ(Rouge(a, a, RougeVariant::kBigram).f1, 1.0);
    }
    if (!a.empty()) {
      EXPECT_DOUBLE_EQ(Rouge(a, a, RougeVariant::kLcs).f1, 1.0);
    }
    EXPECT_LE(Phi(a, b), 1.0);
  }
}

}  // namespace
}  // namespace facetrank
