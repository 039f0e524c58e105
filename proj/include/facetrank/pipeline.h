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

#ifndef FACETRANK_PIPELINE_H_
#define FACETRANK_PIPELINE_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "facetrank/aspect_explorer.h"
#include "facetrank/corpus_store.h"
#include "facetrank/dataset.h"
#include "facetrank/listwise_ranker.h"
#include "facetrank/preference_builder.h"
#include "facetrank/run_config.h"
#include "json.hpp"

namespace facetrank {

enum class Stage { kIndex, kAspects, kRetrieve, kPool, kSilver, kRank, kPairs, kEval };

inline constexpr Stage kAllStages[] = {Stage::kIndex,  Stage::kAspects,
                                       Stage::kRetrieve, Stage::kPool,
                                       Stage::kSilver, Stage::kRank,
                                       Stage::kPairs,  Stage::kEval};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);
// File the stage writes inside the output directory.
std::string_view StageArtifact(Stage stage);

struct StageFailure {
  std::string query_id;
  std::string error;
};

struct StageStats {
  Stage stage = Stage::kIndex;
  size_t count = 0;    // records written
  size_t skipped = 0;  // records absent from an upstream artifact
  std::vector<StageFailure> failures;
  nlohmann::json extra = nlohmann::json::object();
  double seconds = 0.0;  // reported, never written to artifacts

  nlohmann::json ToJson() const;
};

// Re-checks every line of a pairs artifact produced with the US3 strategy:
// unilaterality, gap > mu, and gap = winner_reward - loser_reward. Returns
// one message per violating line.
std::vector<std::string> ValidatePairFile(const std::filesystem::path& path);

// Runs stages over a dataset and corpus, reading upstream artifacts from
// and writing its own to `out_dir`. Every artifact line carries the config
// fingerprint; upstream lines with another fingerprint are rejected.
class Pipeline {
 public:
  Pipeline(RunConfig config, Dataset dataset, Corpus corpus,
           std::filesystem::path out_dir);
  ~Pipeline();

  // Overrides for remote components; by default they are built from the
  // config. Implementations must tolerate concurrent calls.
  void SetLlmClient(std::shared_ptr<LlmClient> client);
  void SetGenerator(std::shared_ptr<Generator> generator);
  void SetBackend(std::shared_ptr<ScoringBackend> backend);

  // Throws Error("missing artifact: <stage>") when an upstream artifact is
  // absent, and Error naming the record on schema violations.
  StageStats RunStage(Stage stage);
  std::vector<StageStats> RunAll();

  const RunConfig& config() const { return config_; }
  const std::string& fingerprint() const { return fingerprint_; }
  const std::filesystem::path& out_dir() const { return out_dir_; }

 private:
  struct State;

  StageStats RunIndex();
  StageStats RunAspects();
  StageStats RunRetrieve();
  StageStats RunPool();
  StageStats RunSilver();
  StageStats RunRank();
  StageStats RunPairs();
  StageStats RunEval();

  const InvertedIndex& Index();
  std::map<std::string, nlohmann::json> ReadArtifact(Stage stage) const;
  void WriteLines(Stage stage, const std::vector<nlohmann::json>& lines) const;
  void WriteStats(const StageStats& stats) const;
  // Runs fn over records in parallel; results come back in id order.
  void ForEachRecord(const std::function<void(size_t)>& fn) const;

  RunConfig config_;
  std::string fingerprint_;
  Dataset dataset_;
  Corpus corpus_;
  std::filesystem::path out_dir_;
  std::unique_ptr<State> state_;
};

}  // namespace facetrank

#endif  // FACETRANK_PIPELINE_H_
