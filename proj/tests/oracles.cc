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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace oracle {
namespace {

Prf FromCounts(double overlap, double n_cand, double n_ref) {
  Prf s;
  if (n_cand == 0 || n_ref == 0) return s;
  s.p = overlap / n_cand;
  s.r = overlap / n_ref;
  if (s.p + s.r > 0) s.f = 2 * s.p * s.r / (s.p + s.r);
  return s;
}

// Size of the multiset intersection, by repeatedly striking out matches.
size_t StrikeOut(std::vector<std::string> a, std::vector<std::string> b) {
  size_t n = 0;
  for (const auto& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it != b.end()) {
      b.erase(it);
      ++n;
    }
  }
  return n;
}

std::vector<std::string> Bigrams(const Tokens& t) {
  std::vector<std::string> out;
  for (size_t i = 0; i + 1 < t.size(); ++i) out.push_back(t[i] + "\x1f" + t[i + 1]);
  return out;
}

}  // namespace

Prf Bigram(const Tokens& cand, const Tokens& ref) {
  const auto a = Bigrams(cand), b = Bigrams(ref);
  return FromCounts(StrikeOut(a, b), a.size(), b.size());
}

Prf Lcs(const Tokens& cand, const Tokens& ref) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> go = [&](size_t i, size_t j) -> size_t {
    if (i == cand.size() || j == ref.size()) return 0;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    size_t v = cand[i] == ref[j] ? 1 + go(i + 1, j + 1)
                                 : std::max(go(i + 1, j), go(i, j + 1));
    return memo[key] = v;
  };
  return FromCounts(go(0, 0), cand.size(), ref.size());
}

Prf Unigram(const Tokens& cand, const Tokens& ref) {
  return FromCounts(StrikeOut(cand, ref), cand.size(), ref.size());
}

double Phi(const Tokens& a, const Tokens& b) {
  return (Bigram(a, b).f + Lcs(a, b).f) / 2;
}

double ComPhi(const Tokens& response, const std::vector<Tokens>& subs) {
  double total = 0;
  for (const auto& s : subs) total += s.size();
  double v = 0;
  for (const auto& s : subs) v += s.size() / total * Phi(response, s);
  return v;
}

std::vector<double> Weights(const std::vector<Tokens>& docs,
                            const std::vector<size_t>& prefix,
                            const std::vector<Tokens>& subs) {
  std::vector<double> c(subs.size(), 0.0);
  for (size_t i = 0; i < subs.size(); ++i) {
    for (size_t d : prefix) c[i] = std::max(c[i], Phi(docs[d], subs[i]));
  }
  double sum = 0;
  for (double x : c) sum += x;
  std::vector<double> w(subs.size(), 1.0);
  if (sum > 0) {
    for (size_t i = 0; i < subs.size(); ++i) w[i] = 1.0 - c[i] / sum;
  }
  return w;
}

size_t GreedyStep(const std::vector<Tokens>& docs,
                  const std::vector<size_t>& prefix,
                  const std::vector<Tokens>& subs) {
  const auto w = Weights(docs, prefix, subs);
  size_t best = docs.size();
  double best_value = -1;
  for (size_t d = 0; d < docs.size(); ++d) {
    if (std::find(prefix.begin(), prefix.end(), d) != prefix.end()) continue;
    double u = 0;
    for (size_t i = 0; i < subs.size(); ++i) u += w[i] * Phi(docs[d], subs[i]);
    if (u > best_value) {
      best_value = u;
      best = d;
    }
  }
  return best;
}

double Com(const std::vector<Tokens>& list, const std::vector<Tokens>& subs) {
  double total = 0;
  std::vector<size_t> prefix;
  for (size_t t = 0; t < list.size(); ++t) {
    const auto w = Weights(list, prefix, subs);
    for (size_t i = 0; i < subs.size(); ++i) total += w[i] * Phi(list[t], subs[i]);
    prefix.push_back(t);
  }
  return total;
}

std::vector<Fused> Rrf(const std::vector<std::vector<std::string>>& lists,
                       double k, size_t top) {
  std::vector<std::string> ids;
  for (const auto& l : lists) {
    for (const auto& id : l) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  std::vector<Fused> out;
  for (const auto& id : ids) {
    double s = 0;
    for (const auto& l : lists) {
      for (size_t r = 0; r < l.size(); ++r) {
        if (l[r] == id) s += 1.0 / (k + r + 1);
      }
    }
    out.push_back({id, s});
  }
  std::sort(out.begin(), out.end(), [](const Fused& a, const Fused& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  if (out.size() > top) out.resize(top);
  return out;
}

double Dpo(double pw, double pl, double rw, double rl, double beta) {
  const double x = beta * ((pw - rw) - (pl - rl));
  return -std::log(1.0 / (1.0 + std::exp(-x)));
}

Tokens RandomTokens(std::mt19937_64& rng, size_t max_len, int alphabet) {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, alphabet - 1);
  Tokens t(len(rng));
  for (auto& x : t) x = std::string(1, static_cast<char>('a' + letter(rng)));
  return t;
}

std::string Join(const Tokens& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

}  // namespace oracle
