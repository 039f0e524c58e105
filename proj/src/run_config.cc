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

#include "facetrank/run_config.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>

#include "facetrank/error.h"

namespace facetrank {
namespace {

using nlohmann::json;

json EndpointJson(const HttpEndpoint& e) {
  return {{"url", e.url}, {"timeout_ms", e.timeout_ms}, {"retries", e.retries}};
}

HttpEndpoint EndpointFromJson(const json& j, const std::string& field) {
  if (!j.is_object()) throw Error("config field " + field + " must be an object");
  HttpEndpoint e;
  for (const auto& [key, value] : j.items()) {
    if (key == "url") e.url = value.get<std::string>();
    else if (key == "timeout_ms") e.timeout_ms = value.get<int>();
    else if (key == "retries") e.retries = value.get<int>();
    else throw Error("unknown config field " + field + "." + key);
  }
  return e;
}

}  // namespace

std::string_view AspectModeName(AspectMode mode) {
  return mode == AspectMode::kGold ? "gold" : "predicted";
}

AspectMode ParseAspectMode(std::string_view name) {
  if (name == "gold") return AspectMode::kGold;
  if (name == "predicted") return AspectMode::kPredicted;
  throw Error("unknown aspect mode " + std::string(name));
}

std::string_view AblationName(Ablation ablation) {
  switch (ablation) {
    case Ablation::kNone:
      return "none";
    case Ablation::kNoSubAspects:
      return "no-sa";
    case Ablation::kRandomPairs:
      return "random-pairs";
  }
  return "none";
}

Ablation ParseAblation(std::string_view name) {
  if (name == "none") return Ablation::kNone;
  if (name == "no-sa") return Ablation::kNoSubAspects;
  if (name == "random-pairs") return Ablation::kRandomPairs;
  throw Error("unknown ablation " + std::string(name));
}

size_t ProfileCapacity(std::string_view profile) {
  if (profile == "wikipassageqa") return 290;
  if (profile == "wikiasp") return 270;
  throw Error("unknown profile " + std::string(profile));
}

void ValidateRunConfig(const RunConfig& c) {
  if (c.n_per_aspect == 0) throw Error("n_per_aspect must be positive");
  if (c.pool_capacity == 0) throw Error("pool_capacity must be positive");
  if (c.k == 0) throw Error("k must be positive");
  if (!(c.tau > 0)) throw Error("tau must be positive");
  if (!(c.mu >= 0)) throw Error("mu must be non-negative");
  if (!(c.beta > 0)) throw Error("beta must be positive");
  if (c.num_samples == 0) throw Error("num_samples must be positive");
  if (!(c.k_rrf > 0)) throw Error("k_rrf must be positive");
  if (c.relevance_threshold < 0 || c.relevance_threshold > 1) {
    throw Error("relevance_threshold must lie in [0, 1]");
  }
  for (size_t cutoff : c.ndcg_cutoffs) {
    if (cutoff == 0) throw Error("ndcg cutoffs must be positive");
  }
  if (c.backend != "reference" && c.backend != "uniform" && c.backend != "remote") {
    throw Error("unknown backend " + c.backend);
  }
  if (c.generator != "oracle" && c.generator != "http") {
    throw Error("unknown generator " + c.generator);
  }
  if (c.generator_budget == 0) throw Error("generator_budget must be positive");
  if (c.workers == 0) throw Error("workers must be positive");
  if (!c.profile.empty()) ProfileCapacity(c.profile);
  if (!c.explorer_prompt.empty()) ExplorerPrompt{c.explorer_prompt};
}

json ToJson(const RunConfig& c) {
  return {
      {"profile", c.profile},
      {"n_per_aspect", c.n_per_aspect},
      {"pool_capacity", c.pool_capacity},
      {"k", c.k},
      {"tau", c.tau},
      {"mu", c.mu},
      {"beta", c.beta},
      {"num_samples", c.num_samples},
      {"allow_repetition", c.allow_repetition},
      {"seed", c.seed},
      {"aspect_mode", AspectModeName(c.aspect_mode)},
      {"ablation", AblationName(c.ablation)},
      {"bm25_k1", c.bm25_k1},
      {"bm25_b", c.bm25_b},
      {"relevance_threshold", c.relevance_threshold},
      {"k_rrf", c.k_rrf},
      {"ndcg_cutoffs", c.ndcg_cutoffs},
      {"pair_target", c.pair_target},
      {"backend", c.backend},
      {"backend_endpoint", EndpointJson(c.backend_endpoint)},
      {"generator", c.generator},
      {"generator_budget", c.generator_budget},
      {"generator_max_tokens", c.generator_max_tokens},
      {"generator_endpoint", EndpointJson(c.generator_endpoint)},
      {"explorer_prompt", c.explorer_prompt},
      {"explorer_max_tokens", c.explorer_max_tokens},
      {"explorer_endpoint", EndpointJson(c.explorer_endpoint)},
      {"workers", c.workers},
  };
}

RunConfig RunConfigFromJson(const json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("profile")) {
      c.profile = j["profile"].get<std::string>();
      if (!c.profile.empty()) c.pool_capacity = ProfileCapacity(c.profile);
    }
    for (const auto& [key, v] : j.items()) {
      if (key == "profile") continue;
      else if (key == "n_per_aspect") c.n_per_aspect = v.get<size_t>();
      else if (key == "pool_capacity") c.pool_capacity = v.get<size_t>();
      else if (key == "k") c.k = v.get<size_t>();
      else if (key == "tau") c.tau = v.get<double>();
      else if (key == "mu") c.mu = v.get<double>();
      else if (key == "beta") c.beta = v.get<double>();
      else if (key == "num_samples") c.num_samples = v.get<size_t>();
      else if (key == "allow_repetition") c.allow_repetition = v.get<bool>();
      else if (key == "seed") c.seed = v.get<uint64_t>();
      else if (key == "aspect_mode") c.aspect_mode = ParseAspectMode(v.get<std::string>());
      else if (key == "ablation") c.ablation = ParseAblation(v.get<std::string>());
      else if (key == "bm25_k1") c.bm25_k1 = v.get<double>();
      else if (key == "bm25_b") c.bm25_b = v.get<double>();
      else if (key == "relevance_threshold") c.relevance_threshold = v.get<double>();
      else if (key == "k_rrf") c.k_rrf = v.get<double>();
      else if (key == "ndcg_cutoffs") c.ndcg_cutoffs = v.get<std::vector<size_t>>();
      else if (key == "pair_target") c.pair_target = v.get<size_t>();
      else if (key == "backend") c.backend = v.get<std::string>();
      else if (key == "backend_endpoint") c.backend_endpoint = EndpointFromJson(v, key);
      else if (key == "generator") c.generator = v.get<std::string>();
      else if (key == "generator_budget") c.generator_budget = v.get<size_t>();
      else if (key == "generator_max_tokens") c.generator_max_tokens = v.get<int>();
      else if (key == "generator_endpoint") c.generator_endpoint = EndpointFromJson(v, key);
      else if (key == "explorer_prompt") c.explorer_prompt = v.get<std::string>();
      else if (key == "explorer_max_tokens") c.explorer_max_tokens = v.get<int>();
      else if (key == "explorer_endpoint") c.explorer_endpoint = EndpointFromJson(v, key);
      else if (key == "workers") c.workers = v.get<size_t>();
      else throw Error("unknown config field " + key);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("invalid config: ") + e.what());
  }
  ValidateRunConfig(c);
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("config " + path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j);
}

std::string ConfigFingerprint(const RunConfig& config) {
  auto j = ToJson(config);
  j.erase("workers");
  for (const char* field : {"backend_endpoint", "generator_endpoint", "explorer_endpoint"}) {
    j[field].erase("timeout_ms");
    j[field].erase("retries");
  }
  const std::string canonical = j.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length,
                 EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < 8 && i < length; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace facetrank
