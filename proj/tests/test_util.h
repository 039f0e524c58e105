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

#ifndef FACETRANK_TESTS_TEST_UTIL_H_
#define FACETRANK_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "facetrank/faceted_retriever.h"

namespace testutil {

// Pool whose candidates are `texts` in order, every one tagged with aspect 0.
inline facetrank::CandidatePool MakePool(const std::vector<std::string>& texts,
                                         std::string query = "q",
                                         std::vector<std::string> aspects = {"a"}) {
  facetrank::CandidatePool pool;
  pool.query = std::move(query);
  pool.aspects.aspects = std::move(aspects);
  pool.capacity = texts.size();
  for (size_t i = 0; i < texts.size(); ++i) {
    facetrank::Candidate c;
    c.pool_index = i;
    c.doc = {"d" + std::to_string(i), "", texts[i]};
    c.aspect_set = {0};
    c.best_rank = {{0, i + 1}};
    pool.candidates.push_back(std::move(c));
  }
  return pool;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("facetrank_" + name + "_" + std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil

#endif  // FACETRANK_TESTS_TEST_UTIL_H_
