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

// Command-line driver: one subcommand per pipeline stage plus `pipeline`
// for an end-to-end run and `validate-pairs` for auditing pair files.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "facetrank/corpus_store.h"
#include "facetrank/dataset.h"
#include "facetrank/error.h"
#include "facetrank/pipeline.h"
#include "facetrank/run_config.h"

namespace {

struct Options {
  std::string config;
  std::string dataset;
  std::string corpus;
  std::string out;
  std::optional<size_t> k;
  std::optional<double> mu;
  std::optional<double> tau;
  std::optional<uint64_t> seed;
  std::optional<std::string> aspect_mode;
  bool allow_repetition = false;
  std::optional<std::string> ablation;
  std::optional<size_t> workers;
};

void AddRunOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--dataset", o.dataset, "dataset records (JSONL)")->required();
  cmd->add_option("--corpus", o.corpus, "corpus documents (JSONL)")->required();
  cmd->add_option("--out", o.out, "artifact directory")->required();
  cmd->add_option("--k", o.k, "ranking length");
  cmd->add_option("--mu", o.mu, "pair significance threshold");
  cmd->add_option("--tau", o.tau, "softmax temperature");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--aspect-mode", o.aspect_mode, "gold | predicted")
      ->check(CLI::IsMember({"gold", "predicted"}));
  cmd->add_flag("--allow-repetition", o.allow_repetition,
                "let the ranker repeat documents");
  cmd->add_option("--ablation", o.ablation, "none | no-sa | random-pairs")
      ->check(CLI::IsMember({"none", "no-sa", "random-pairs"}));
  cmd->add_option("--workers", o.workers, "records processed concurrently");
}

facetrank::RunConfig BuildConfig(const Options& o) {
  auto config = o.config.empty() ? facetrank::RunConfig{}
                                 : facetrank::LoadRunConfig(o.config);
  if (o.k) config.k = *o.k;
  if (o.mu) config.mu = *o.mu;
  if (o.tau) config.tau = *o.tau;
  if (o.seed) config.seed = *o.seed;
  if (o.aspect_mode) config.aspect_mode = facetrank::ParseAspectMode(*o.aspect_mode);
  if (o.allow_repetition) config.allow_repetition = true;
  if (o.ablation) config.ablation = facetrank::ParseAblation(*o.ablation);
  if (o.workers) config.workers = *o.workers;
  facetrank::ValidateRunConfig(config);
  return config;
}

void Report(const facetrank::StageStats& stats) {
  std::fprintf(stderr, "%-9s count=%zu skipped=%zu failed=%zu time=%.3fs\n",
               std::string(facetrank::StageName(stats.stage)).c_str(),
               stats.count, stats.skipped, stats.failures.size(), stats.seconds);
  for (const auto& f : stats.failures) {
    std::fprintf(stderr, "  %s: %s\n", f.query_id.c_str(), f.error.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-aspect retrieval, coverage-aware list-wise ranking and evaluation"};
  app.require_subcommand(1);

  Options options;
  std::string target;
  for (auto stage : facetrank::kAllStages) {
    auto name = std::string(facetrank::StageName(stage));
    auto* cmd = app.add_subcommand(name, "run the " + name + " stage");
    AddRunOptions(cmd, options);
    cmd->callback([&target, name] { target = name; });
  }
  auto* pipeline = app.add_subcommand("pipeline", "run every stage in order");
  AddRunOptions(pipeline, options);
  pipeline->callback([&target] { target = "pipeline"; });

  std::string pairs_path;
  auto* validate = app.add_subcommand("validate-pairs", "check a pairs artifact");
  validate->add_option("--pairs", pairs_path, "pairs.jsonl")->required();
  validate->callback([&target] { target = "validate-pairs"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (target == "validate-pairs") {
      const auto problems = facetrank::ValidatePairFile(pairs_path);
      for (const auto& p : problems) std::cerr << p << '\n';
      std::cout << (problems.empty() ? "ok" : "invalid") << '\n';
      return problems.empty() ? 0 : 1;
    }
    const auto config = BuildConfig(options);
    auto dataset = facetrank::LoadDataset(options.dataset);
    for (const auto& w : dataset.warnings) std::cerr << "warning: " << w << '\n';
    facetrank::Pipeline runner(config, std::move(dataset),
                               facetrank::LoadCorpus(options.corpus), options.out);
    std::cerr << "config fingerprint " << runner.fingerprint() << '\n';
    if (target == "pipeline") {
      for (const auto& stats : runner.RunAll()) Report(stats);
    } else {
      Report(runner.RunStage(facetrank::ParseStage(target)));
    }
  } catch (const facetrank::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
