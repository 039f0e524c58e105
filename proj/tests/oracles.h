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

// Brute-force reference computations used to check the library. They are
// written from the metric definitions, share no code with src/, and favour
// obviousness over speed.

#ifndef FACETRANK_TESTS_ORACLES_H_
#define FACETRANK_TESTS_ORACLES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

struct Prf {
  double p = 0, r = 0, f = 0;
};

Prf Bigram(const Tokens& cand, const Tokens& ref);
Prf Lcs(const Tokens& cand, const Tokens& ref);
Prf Unigram(const Tokens& cand, const Tokens& ref);
double Phi(const Tokens& a, const Tokens& b);

// Token-count weighted Phi over sub-answers.
double ComPhi(const Tokens& response, const std::vector<Tokens>& subs);

// Importance weights after the docs in `prefix` (indices into docs).
std::vector<double> Weights(const std::vector<Tokens>& docs,
                            const std::vector<size_t>& prefix,
                            const std::vector<Tokens>& subs);

// Best remaining doc at the step after `prefix`, lowest index on ties.
size_t GreedyStep(const std::vector<Tokens>& docs,
                  const std::vector<size_t>& prefix,
                  const std::vector<Tokens>& subs);

// Sum over positions of weighted coverage, weights from each prefix.
double Com(const std::vector<Tokens>& list, const std::vector<Tokens>& subs);

struct Fused {
  std::string id;
  double score;
};
std::vector<Fused> Rrf(const std::vector<std::vector<std::string>>& lists,
                       double k, size_t top);

double Dpo(double pw, double pl, double rw, double rl, double beta);

// Random list of tokens drawn from the first `alphabet` letters.
Tokens RandomTokens(std::mt19937_64& rng, size_t max_len, int alphabet);
std::string Join(const Tokens& tokens);

}  // namespace oracle

#endif  // FACETRANK_TESTS_ORACLES_H_
