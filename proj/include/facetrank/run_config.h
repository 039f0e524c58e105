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

#ifndef FACETRANK_RUN_CONFIG_H_
#define FACETRANK_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/http_json.h"
#include "json.hpp"

namespace facetrank {

enum class AspectMode { kPredicted, kGold };
enum class Ablation { kNone, kNoSubAspects, kRandomPairs };

std::string_view AspectModeName(AspectMode mode);
AspectMode ParseAspectMode(std::string_view name);
std::string_view AblationName(Ablation ablation);
Ablation ParseAblation(std::string_view name);

struct RunConfig {
  std::string profile;  // "", "wikipassageqa" or "wikiasp"
  size_t n_per_aspect = 50;
  size_t pool_capacity = 290;
  size_t k = 10;
  double tau = 0.1;
  double mu = 0.1;
  double beta = 0.1;
  size_t num_samples = 4;
  bool allow_repetition = false;
  uint64_t seed = 0;
  AspectMode aspect_mode = AspectMode::kGold;
  Ablation ablation = Ablation::kNone;

  double bm25_k1 = 1.2;
  double bm25_b = 0.75;
  double relevance_threshold = 0.5;
  double k_rrf = 60.0;
  std::vector<size_t> ndcg_cutoffs = {1, 3, 5, 10};
  size_t pair_target = 0;  // 0 keeps every pair

  std::string backend = "reference";  // reference | uniform | remote
  HttpEndpoint backend_endpoint;
  std::string generator = "oracle";  // oracle | http
  size_t generator_budget = 8;       // sentences, oracle generator
  int generator_max_tokens = 512;
  HttpEndpoint generator_endpoint;
  std::string explorer_prompt;  // empty selects the built-in prompt
  int explorer_max_tokens = 128;
  HttpEndpoint explorer_endpoint;

  size_t workers = 1;  // not part of the fingerprint
};

// Pool capacity for a named dataset profile. Throws Error for unknown names.
size_t ProfileCapacity(std::string_view profile);

// Throws Error describing the first invalid field.
void ValidateRunConfig(const RunConfig& config);

nlohmann::json ToJson(const RunConfig& config);
// Starts from defaults, applies "profile" first and then every other key.
// Unknown keys are rejected.
RunConfig RunConfigFromJson(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Hex SHA-256 prefix of the canonical (sorted-key, compact) JSON of every
// output-affecting field.
std::string ConfigFingerprint(const RunConfig& config);

}  // namespace facetrank

#endif  // FACETRANK_RUN_CONFIG_H_
