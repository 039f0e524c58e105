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

#include "facetrank/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <thread>

#include "facetrank/error.h"
#include "facetrank/evaluation.h"
#include "facetrank/faceted_retriever.h"
#include "facetrank/http_json.h"
#include "facetrank/sft_targets.h"

namespace facetrank {

using nlohmann::json;

namespace {

constexpr std::string_view kFingerprintKey = "config_fingerprint";

struct Outcome {
  std::optional<json> line;
  std::optional<std::string> error;
  bool skipped = false;
};

SubAspectList AspectsFromJson(const json& j) {
  SubAspectList list;
  list.aspects = j.at("aspects").get<std::vector<std::string>>();
  list.source = ParseAspectSource(j.value("source", "predicted"));
  if (list.aspects.empty()) throw Error("empty aspect list");
  return list;
}

json PoolToJson(const std::string& query_id, const CandidatePool& pool) {
  json candidates = json::array();
  for (const auto& c : pool.candidates) {
    json best_rank = json::object();
    for (const auto& [aspect, rank] : c.best_rank) {
      best_rank[std::to_string(aspect)] = rank;
    }
    candidates.push_back({{"pool_index", c.pool_index},
                          {"doc_id", c.doc.doc_id},
                          {"aspect_set", c.aspect_set},
                          {"best_rank", best_rank}});
  }
  return {{"query_id", query_id},
          {"aspects", pool.aspects.aspects},
          {"capacity", pool.capacity},
          {"candidates", candidates}};
}

CandidatePool PoolFromJson(const json& j, const std::string& query,
                           const Corpus& corpus) {
  CandidatePool pool;
  pool.query = query;
  pool.aspects = AspectsFromJson(j);
  pool.capacity = j.at("capacity").get<size_t>();
  for (const auto& item : j.at("candidates")) {
    Candidate c;
    c.pool_index = item.at("pool_index").get<size_t>();
    if (c.pool_index != pool.candidates.size()) {
      throw Error("pool_index values are not contiguous");
    }
    c.doc = corpus.at(item.at("doc_id").get<std::string>());
    c.aspect_set = item.at("aspect_set").get<std::vector<size_t>>();
    for (const auto& [aspect, rank] : item.at("best_rank").items()) {
      c.best_rank[std::stoul(aspect)] = rank.get<size_t>();
    }
    for (size_t a : c.aspect_set) {
      if (a >= pool.aspects.aspects.size()) throw Error("aspect index out of range");
    }
    pool.candidates.push_back(std::move(c));
  }
  return pool;
}

std::vector<size_t> DocidsFromJson(const json& j, size_t pool_size) {
  auto docids = j.at("docids").get<std::vector<size_t>>();
  for (size_t d : docids) {
    if (d >= pool_size) throw Error("docid outside pool");
  }
  return docids;
}

std::vector<std::string> TextsOf(const CandidatePool& pool,
                                 std::span<const size_t> docids) {
  std::vector<std::string> texts;
  for (size_t d : docids) texts.push_back(pool.candidates.at(d).doc.text);
  return texts;
}

std::vector<std::string> IdsOf(const CandidatePool& pool,
                               std::span<const size_t> docids) {
  std::vector<std::string> ids;
  for (size_t d : docids) ids.push_back(pool.candidates.at(d).doc.doc_id);
  return ids;
}

size_t EffectiveK(const RunConfig& config, size_t pool_size) {
  return config.allow_repetition ? config.k : std::min(config.k, pool_size);
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kIndex: return "index";
    case Stage::kAspects: return "aspects";
    case Stage::kRetrieve: return "retrieve";
    case Stage::kPool: return "pool";
    case Stage::kSilver: return "silver";
    case Stage::kRank: return "rank";
    case Stage::kPairs: return "pairs";
    case Stage::kEval: return "eval";
  }
  return "index";
}

Stage ParseStage(std::string_view name) {
  for (Stage stage : kAllStages) {
    if (StageName(stage) == name) return stage;
  }
  throw Error("unknown stage " + std::string(name));
}

std::string_view StageArtifact(Stage stage) {
  switch (stage) {
    case Stage::kIndex: return "index.json";
    case Stage::kAspects: return "aspects.jsonl";
    case Stage::kRetrieve: return "retrieve.jsonl";
    case Stage::kPool: return "pool.jsonl";
    case Stage::kSilver: return "silver.jsonl";
    case Stage::kRank: return "rank.jsonl";
    case Stage::kPairs: return "pairs.jsonl";
    case Stage::kEval: return "report.json";
  }
  return "index.json";
}

json StageStats::ToJson() const {
  json failed = json::array();
  for (const auto& f : failures) {
    failed.push_back({{"query_id", f.query_id}, {"error", f.error}});
  }
  return {{"stage", StageName(stage)},
          {"count", count},
          {"skipped", skipped},
          {"failed", failures.size()},
          {"failures", failed},
          {"extra", extra}};
}

std::vector<std::string> ValidatePairFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pair file " + path.string());
  std::vector<std::string> problems;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = json::parse(line);
      const auto violation = ValidateUs3Pair(
          j.at("winner_provenance").get<std::string>() == "greedy",
          j.at("loser_provenance").get<std::string>() == "greedy",
          j.at("winner_reward").get<double>(), j.at("loser_reward").get<double>(),
          j.at("gap").get<double>(), j.at("mu").get<double>());
      if (!violation.empty()) problems.push_back(where + "violates " + violation);
    } catch (const json::exception& e) {
      problems.push_back(where + e.what());
    }
  }
  return problems;
}

struct Pipeline::State {
  std::optional<InvertedIndex> index;
  std::shared_ptr<LlmClient> llm;
  std::shared_ptr<Generator> generator;
  std::shared_ptr<ScoringBackend> backend;
};

Pipeline::Pipeline(RunConfig config, Dataset dataset, Corpus corpus,
                   std::filesystem::path out_dir)
    : config_(std::move(config)),
      dataset_(std::move(dataset)),
      corpus_(std::move(corpus)),
      out_dir_(std::move(out_dir)),
      state_(std::make_unique<State>()) {
  ValidateRunConfig(config_);
  if (dataset_.records.empty()) throw Error("empty dataset");
  fingerprint_ = ConfigFingerprint(config_);
  std::sort(dataset_.records.begin(), dataset_.records.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (size_t i = 1; i < dataset_.records.size(); ++i) {
    if (dataset_.records[i].id == dataset_.records[i - 1].id) {
      throw Error("duplicate record id " + dataset_.records[i].id);
    }
  }
  for (const auto& r : dataset_.records) ValidateRecord(r);
  std::filesystem::create_directories(out_dir_);

  if (config_.backend == "uniform") {
    state_->backend = std::make_shared<UniformBackend>();
  } else if (config_.backend == "remote") {
    state_->backend = std::make_shared<RemoteScoringBackend>(config_.backend_endpoint);
  } else {
    state_->backend = std::make_shared<ReferenceBackend>();
  }
  if (config_.generator == "http") {
    state_->generator = std::make_shared<HttpGenerator>(
        config_.generator_endpoint, config_.generator_max_tokens);
  } else {
    state_->generator = std::make_shared<OracleGenerator>(config_.generator_budget);
  }
  state_->llm = std::make_shared<HttpLlmClient>(config_.explorer_endpoint);
}

Pipeline::~Pipeline() = default;

void Pipeline::SetLlmClient(std::shared_ptr<LlmClient> client) {
  state_->llm = std::move(client);
}
void Pipeline::SetGenerator(std::shared_ptr<Generator> generator) {
  state_->generator = std::move(generator);
}
void Pipeline::SetBackend(std::shared_ptr<ScoringBackend> backend) {
  state_->backend = std::move(backend);
}

const InvertedIndex& Pipeline::Index() {
  if (!state_->index) {
    state_->index = InvertedIndex::Build(corpus_.documents(),
                                         {config_.bm25_k1, config_.bm25_b});
  }
  return *state_->index;
}

std::map<std::string, json> Pipeline::ReadArtifact(Stage stage) const {
  const auto path = out_dir_ / StageArtifact(stage);
  std::ifstream in(path);
  if (!in) throw Error("missing artifact: " + std::string(StageName(stage)));
  std::map<std::string, json> by_id;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    const auto id = j.value("query_id", std::string());
    if (id.empty()) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": missing query_id");
    }
    if (j.value(std::string(kFingerprintKey), std::string()) != fingerprint_) {
      throw Error("record " + id + ": " + std::string(StageName(stage)) +
                  " artifact was produced with a different config fingerprint");
    }
    by_id.emplace(id, std::move(j));
  }
  return by_id;
}

void Pipeline::WriteLines(Stage stage, const std::vector<json>& lines) const {
  const auto path = out_dir_ / StageArtifact(stage);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    for (const auto& line : lines) out << line.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void Pipeline::WriteStats(const StageStats& stats) const {
  std::ofstream out(out_dir_ / (std::string(StageName(stats.stage)) + ".stats.json"),
                    std::ios::binary | std::ios::trunc);
  out << stats.ToJson().dump(2) << '\n';
}

void Pipeline::ForEachRecord(const std::function<void(size_t)>& fn) const {
  const size_t n = dataset_.records.size();
  const size_t workers = std::min(config_.workers, n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

namespace {

// Runs `work` per record, tolerating per-record errors, and gathers the
// produced lines in record order.
template <typename Work>
StageStats Collect(Stage stage, const std::vector<DatasetRecord>& records,
                   const std::string& fingerprint,
                   const std::function<void(const std::function<void(size_t)>&)>& each,
                   Work work, std::vector<json>& lines) {
  std::vector<Outcome> outcomes(records.size());
  each([&](size_t i) {
    try {
      outcomes[i] = work(i);
    } catch (const std::exception& e) {
      outcomes[i].error = e.what();
    }
  });
  StageStats stats;
  stats.stage = stage;
  for (size_t i = 0; i < records.size(); ++i) {
    auto& o = outcomes[i];
    if (o.skipped) {
      ++stats.skipped;
    } else if (o.error) {
      stats.failures.push_back({records[i].id, *o.error});
    } else if (o.line) {
      (*o.line)["query_id"] = records[i].id;
      (*o.line)[std::string(kFingerprintKey)] = fingerprint;
      lines.push_back(std::move(*o.line));
      ++stats.count;
    }
  }
  return stats;
}

}  // namespace

StageStats Pipeline::RunStage(Stage stage) {
  const auto start = std::chrono::steady_clock::now();
  StageStats stats;
  switch (stage) {
    case Stage::kIndex: stats = RunIndex(); break;
    case Stage::kAspects: stats = RunAspects(); break;
    case Stage::kRetrieve: stats = RunRetrieve(); break;
    case Stage::kPool: stats = RunPool(); break;
    case Stage::kSilver: stats = RunSilver(); break;
    case Stage::kRank: stats = RunRank(); break;
    case Stage::kPairs: stats = RunPairs(); break;
    case Stage::kEval: stats = RunEval(); break;
  }
  stats.stage = stage;
  WriteStats(stats);
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

std::vector<StageStats> Pipeline::RunAll() {
  std::vector<StageStats> all;
  for (Stage stage : kAllStages) {
    try {
      all.push_back(RunStage(stage));
    } catch (const Error& e) {
      throw Error("stage " + std::string(StageName(stage)) + ": " + e.what());
    }
  }
  return all;
}

StageStats Pipeline::RunIndex() {
  const auto& index = Index();
  json manifest = {{"query_id", "*"},
                   {std::string(kFingerprintKey), fingerprint_},
                   {"doc_count", index.doc_count()},
                   {"vocabulary_size", index.postings().size()},
                   {"avg_doc_length", index.avg_doc_length()},
                   {"bm25", {{"k1", index.params().k1}, {"b", index.params().b}}}};
  {
    std::ofstream out(out_dir_ / StageArtifact(Stage::kIndex),
                      std::ios::binary | std::ios::trunc);
    out << manifest.dump() << '\n';
  }
  StageStats stats;
  stats.count = index.doc_count();
  return stats;
}

StageStats Pipeline::RunAspects() {
  const ExplorerPrompt prompt = config_.explorer_prompt.empty()
                                    ? ExplorerPrompt::Default()
                                    : ExplorerPrompt(config_.explorer_prompt);
  std::vector<json> lines;
  auto stats = Collect(
      Stage::kAspects, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        SubAspectList aspects;
        if (config_.ablation == Ablation::kNoSubAspects) {
          aspects = {{record.question}, AspectSource::kFallback};
        } else if (config_.aspect_mode == AspectMode::kGold) {
          aspects = GoldAspects(record.sub_aspects);
        } else {
          aspects = PredictAspects(record.question, prompt, *state_->llm,
                                   config_.explorer_max_tokens);
        }
        Outcome o;
        o.line = json{{"aspects", aspects.aspects},
                      {"source", AspectSourceName(aspects.source)}};
        return o;
      },
      lines);
  WriteLines(Stage::kAspects, lines);
  std::map<std::string, size_t> histogram;
  size_t fallback = 0;
  for (const auto& line : lines) {
    ++histogram[std::to_string(line["aspects"].size())];
    if (line["source"] == "fallback") ++fallback;
  }
  stats.extra = {{"aspect_count_histogram", histogram}, {"fallback", fallback}};
  return stats;
}

StageStats Pipeline::RunRetrieve() {
  ReadArtifact(Stage::kIndex);
  const auto aspects = ReadArtifact(Stage::kAspects);
  const auto& index = Index();
  std::vector<json> lines;
  auto stats = Collect(
      Stage::kRetrieve, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto it = aspects.find(record.id);
        if (it == aspects.end()) {
          o.skipped = true;
          return o;
        }
        const auto lists = RetrievePerAspect(index, record.question,
                                             AspectsFromJson(it->second),
                                             config_.n_per_aspect);
        auto to_json = [](const std::vector<ScoredDoc>& list) {
          json out = json::array();
          for (const auto& d : list) out.push_back({{"doc_id", d.doc_id}, {"score", d.score}});
          return out;
        };
        json per_aspect = json::array();
        for (const auto& list : lists) per_aspect.push_back(to_json(list));
        o.line = json{{"lists", per_aspect},
                      {"query_list", to_json(index.Retrieve(record.question,
                                                            config_.n_per_aspect))}};
        return o;
      },
      lines);
  WriteLines(Stage::kRetrieve, lines);
  return stats;
}

StageStats Pipeline::RunPool() {
  const auto aspects = ReadArtifact(Stage::kAspects);
  const auto retrieved = ReadArtifact(Stage::kRetrieve);
  std::vector<json> lines;
  size_t total_candidates = 0;
  auto stats = Collect(
      Stage::kPool, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto a = aspects.find(record.id);
        auto r = retrieved.find(record.id);
        if (a == aspects.end() || r == retrieved.end()) {
          o.skipped = true;
          return o;
        }
        std::vector<std::vector<ScoredDoc>> lists;
        for (const auto& list : r->second.at("lists")) {
          auto& out = lists.emplace_back();
          for (const auto& d : list) {
            out.push_back({d.at("doc_id").get<std::string>(), d.at("score").get<double>()});
          }
        }
        const auto pool = MergePool(record.question, AspectsFromJson(a->second),
                                    lists, config_.pool_capacity, corpus_);
        o.line = PoolToJson(record.id, pool);
        return o;
      },
      lines);
  for (const auto& line : lines) total_candidates += line["candidates"].size();
  WriteLines(Stage::kPool, lines);
  stats.extra = {{"candidates_total", total_candidates}};
  return stats;
}

StageStats Pipeline::RunSilver() {
  const auto pools = ReadArtifact(Stage::kPool);
  std::vector<json> lines;
  auto stats = Collect(
      Stage::kSilver, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto p = pools.find(record.id);
        if (p == pools.end()) {
          o.skipped = true;
          return o;
        }
        const auto pool = PoolFromJson(p->second, record.question, corpus_);
        if (pool.empty()) throw Error("empty candidate pool");
        const auto silver = BuildSilverList(pool, record.sub_answers,
                                            std::min(config_.k, pool.size()));
        o.line = json{{"docids", silver.docids},
                      {"step_utilities", silver.step_utilities}};
        return o;
      },
      lines);
  WriteLines(Stage::kSilver, lines);
  return stats;
}

StageStats Pipeline::RunRank() {
  const auto pools = ReadArtifact(Stage::kPool);
  std::vector<json> lines;
  auto stats = Collect(
      Stage::kRank, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto p = pools.find(record.id);
        if (p == pools.end()) {
          o.skipped = true;
          return o;
        }
        const auto pool = PoolFromJson(p->second, record.question, corpus_);
        if (pool.empty()) throw Error("empty candidate pool");
        RankerConfig rc{EffectiveK(config_, pool.size()), config_.tau,
                        config_.allow_repetition, config_.seed};
        const auto list = Rank(pool, rc, *state_->backend, DecodeMode::kGreedy);
        o.line = json{{"docids", list.docids},
                      {"step_logprobs", list.step_logprobs},
                      {"mode", DecodeModeName(list.mode)}};
        return o;
      },
      lines);
  WriteLines(Stage::kRank, lines);
  stats.extra = {{"backend", state_->backend->Name()}};
  return stats;
}

StageStats Pipeline::RunPairs() {
  const auto pools = ReadArtifact(Stage::kPool);
  // Frozen reference policy: the backend as configured when pairing starts.
  const std::shared_ptr<const ScoringBackend> reference = state_->backend;
  std::vector<json> lines;
  std::vector<double> losses(dataset_.records.size(), 0.0);
  std::vector<size_t> loss_counts(dataset_.records.size(), 0);
  auto stats = Collect(
      Stage::kPairs, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto p = pools.find(record.id);
        if (p == pools.end()) {
          o.skipped = true;
          return o;
        }
        const auto pool = PoolFromJson(p->second, record.question, corpus_);
        if (pool.empty()) throw Error("empty candidate pool");
        RankerConfig rc{EffectiveK(config_, pool.size()), config_.tau,
                        config_.allow_repetition, config_.seed};
        const auto lists = GenerateRewardedLists(
            pool, rc, *state_->backend, *state_->generator, record,
            config_.num_samples, config_.generator_endpoint.retries);
        const auto pairs = config_.ablation == Ablation::kRandomPairs
                               ? BuildRandomPairs(lists, config_.seed)
                               : BuildUs3Pairs(lists, config_.mu);
        json out = json::array();
        for (const auto& pair : pairs) {
          if (config_.ablation != Ablation::kRandomPairs) {
            const auto violation = ValidateUs3Pair(
                pair.winner.provenance == Provenance::kGreedy,
                pair.loser.provenance == Provenance::kGreedy, pair.winner.reward,
                pair.loser.reward, pair.gap, config_.mu);
            if (!violation.empty()) throw Error("pair violates " + violation);
          }
          const double policy_w = SequenceLogProb(pool, rc, *state_->backend, pair.winner.list.docids);
          const double policy_l = SequenceLogProb(pool, rc, *state_->backend, pair.loser.list.docids);
          const double ref_w = SequenceLogProb(pool, rc, *reference, pair.winner.list.docids);
          const double ref_l = SequenceLogProb(pool, rc, *reference, pair.loser.list.docids);
          losses[i] += DpoLossValue(policy_w, policy_l, ref_w, ref_l, config_.beta);
          ++loss_counts[i];
          out.push_back({{"winner_docids", pair.winner.list.docids},
                         {"loser_docids", pair.loser.list.docids},
                         {"winner_reward", pair.winner.reward},
                         {"loser_reward", pair.loser.reward},
                         {"winner_provenance", pair.winner.provenance == Provenance::kGreedy ? "greedy" : "sampled"},
                         {"loser_provenance", pair.loser.provenance == Provenance::kGreedy ? "greedy" : "sampled"},
                         {"gap", pair.gap},
                         {"mu", config_.mu},
                         {"beta", config_.beta}});
        }
        o.line = json{{"pairs", out}};
        return o;
      },
      lines);

  // One output line per pair, in record order, up to the target volume.
  std::vector<json> pair_lines;
  for (const auto& line : lines) {
    for (auto pair : line["pairs"]) {
      if (config_.pair_target > 0 && pair_lines.size() >= config_.pair_target) break;
      pair["query_id"] = line["query_id"];
      pair[std::string(kFingerprintKey)] = fingerprint_;
      pair_lines.push_back(std::move(pair));
    }
  }
  WriteLines(Stage::kPairs, pair_lines);
  double loss_sum = 0.0;
  size_t loss_n = 0;
  for (size_t i = 0; i < losses.size(); ++i) {
    loss_sum += losses[i];
    loss_n += loss_counts[i];
  }
  stats.extra = {{"pairs", pair_lines.size()},
                 {"strategy", config_.ablation == Ablation::kRandomPairs ? "random" : "us3"},
                 {"mean_dpo_loss_at_reference", loss_n ? loss_sum / loss_n : 0.0}};
  return stats;
}

StageStats Pipeline::RunEval() {
  const auto pools = ReadArtifact(Stage::kPool);
  const auto silvers = ReadArtifact(Stage::kSilver);
  const auto ranks = ReadArtifact(Stage::kRank);
  const auto retrieved = ReadArtifact(Stage::kRetrieve);

  static constexpr const char* kSystems[] = {"ranker", "retrieval", "rrf"};
  struct QueryResult {
    MetricMap metrics[3];
    bool no_relevant = false;
  };
  std::vector<std::optional<QueryResult>> results(dataset_.records.size());

  std::vector<json> unused;
  auto stats = Collect(
      Stage::kEval, dataset_.records, fingerprint_,
      [this](const auto& fn) { ForEachRecord(fn); },
      [&](size_t i) {
        const auto& record = dataset_.records[i];
        Outcome o;
        auto p = pools.find(record.id);
        auto s = silvers.find(record.id);
        auto r = ranks.find(record.id);
        auto q = retrieved.find(record.id);
        if (p == pools.end() || s == silvers.end() || r == ranks.end() ||
            q == retrieved.end()) {
          o.skipped = true;
          return o;
        }
        const auto pool = PoolFromJson(p->second, record.question, corpus_);
        const auto silver_ids = DocidsFromJson(s->second, pool.size());
        const auto ranked_ids = DocidsFromJson(r->second, pool.size());
        const size_t k = ranked_ids.size();

        std::vector<std::string> lists[3];
        lists[0] = IdsOf(pool, ranked_ids);
        for (const auto& d : q->second.at("query_list")) {
          if (lists[1].size() < k) lists[1].push_back(d.at("doc_id").get<std::string>());
        }
        std::vector<std::vector<std::string>> per_aspect;
        for (const auto& list : q->second.at("lists")) {
          auto& ids = per_aspect.emplace_back();
          for (const auto& d : list) ids.push_back(d.at("doc_id").get<std::string>());
        }
        lists[2] = RrfFuse(per_aspect, config_.k_rrf, k);

        // Relevance by the labeling rule over the pool and every evaluated doc.
        auto relevant = LabelRelevance(pool, record.answer, config_.relevance_threshold);
        for (const auto& list : lists) {
          for (const auto& id : list) {
            if (IsRelevant(corpus_.at(id).text, record.answer, config_.relevance_threshold)) {
              relevant.insert(id);
            }
          }
        }
        const auto silver_texts = TextsOf(pool, silver_ids);
        QueryResult result;
        result.no_relevant = relevant.empty();
        for (int sys = 0; sys < 3; ++sys) {
          std::vector<std::string> texts;
          for (const auto& id : lists[sys]) texts.push_back(corpus_.at(id).text);
          auto& m = result.metrics[sys];
          if (!relevant.empty()) {
            m = RankingMetrics(lists[sys], relevant, config_.ndcg_cutoffs).metrics;
          }
          // A short baseline list is held against the silver prefix of its
          // own length, which is the greedy list for that k.
          const std::span<const std::string> silver(silver_texts);
          m["NCOM"] = Ncom(texts, silver.first(std::min(texts.size(), silver.size())),
                           record.sub_answers);
          for (const auto& [name, value] :
               EvaluateResponse(state_->generator->Generate(record.question, texts), record)) {
            m[name] = value;
          }
        }
        results[i] = std::move(result);
        o.line = json::object();
        return o;
      },
      unused);

  MetricsReport reports[3];
  json no_relevant = json::array();
  for (size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) continue;
    for (int sys = 0; sys < 3; ++sys) {
      reports[sys].Add(dataset_.records[i].id, results[i]->metrics[sys]);
    }
    if (results[i]->no_relevant) no_relevant.push_back(dataset_.records[i].id);
  }
  auto section = [](const MetricsReport& report) {
    json per_query = json::object();
    for (const auto& [id, metrics] : report.per_query()) per_query[id] = metrics;
    return json{{"per_query", per_query}, {"means", report.Means()}};
  };
  json report = section(reports[0]);
  report["config_fingerprint"] = fingerprint_;
  report["query_count"] = reports[0].query_count();
  report["no_relevant"] = no_relevant;
  report["metric_variant"] = "rouge F-measure; NDCG binary gain";
  report["baselines"] = {{"retrieval", section(reports[1])}, {"rrf", section(reports[2])}};
  {
    std::ofstream out(out_dir_ / StageArtifact(Stage::kEval), std::ios::binary | std::ios::trunc);
    out << report.dump(2) << '\n';
  }

  // Aligned summary: one row per system, one column per metric.
  std::vector<std::string> names;
  for (const auto& [name, value] : reports[0].Means()) names.push_back(name);
  std::ofstream tsv(out_dir_ / "report.tsv", std::ios::binary | std::ios::trunc);
  tsv << "system";
  for (const auto& n : names) tsv << '\t' << n;
  tsv << '\n';
  for (int sys = 0; sys < 3; ++sys) {
    const auto means = reports[sys].Means();
    tsv << kSystems[sys];
    for (const auto& n : names) {
      char buf[32];
      auto it = means.find(n);
      std::snprintf(buf, sizeof(buf), "%.6f", it == means.end() ? 0.0 : it->second);
      tsv << '\t' << buf;
    }
    tsv << '\n';
  }
  stats.extra = {{"no_relevant", no_relevant.size()}};
  return stats;
}

}  // namespace facetrank
