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

#ifndef FACETRANK_DATASET_H_
#define FACETRANK_DATASET_H_

#include <filesystem>
#include <string>
#include <vector>

namespace facetrank {

struct DatasetRecord {
  std::string id;
  std::string question;
  std::string answer;
  std::vector<std::string> sub_aspects;
  std::vector<std::string> sub_answers;  // aligned with sub_aspects
  // Set when the dataset states the answer is the in-order join of the
  // sub-answers; the loader then checks it.
  bool answer_is_joined = false;
};

struct Dataset {
  std::vector<DatasetRecord> records;
  std::vector<std::string> warnings;
};

// Throws Error naming the record when a structural invariant fails:
// missing id/question/answer, |sub_aspects| != |sub_answers|, or no
// sub-aspects at all.
void ValidateRecord(const DatasetRecord& record);

// Soft checks: fewer than two aspects, or a declared join that does not
// match. Returns human-readable warnings.
std::vector<std::string> CheckRecord(const DatasetRecord& record);

// Newline-delimited JSON records {"id", "question", "answer",
// "sub_aspects", "sub_answers", optional "answer_is_joined"}. Throws
// Error("empty dataset") when no records are present and on duplicate ids.
Dataset LoadDataset(const std::filesystem::path& path);

}  // namespace facetrank

#endif  // FACETRANK_DATASET_H_
