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

#include "facetrank/dataset.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "facetrank/error.h"
#include "json.hpp"

namespace facetrank {
namespace {

std::string CollapseWhitespace(const std::string& text) {
  std::istringstream in(text);
  std::string word, out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

void ValidateRecord(const DatasetRecord& record) {
  const std::string where = "record " + record.id + ": ";
  if (record.id.empty()) throw Error("record with empty id");
  if (record.question.empty()) throw Error(where + "empty question");
  if (record.answer.empty()) throw Error(where + "empty answer");
  if (record.sub_aspects.empty()) throw Error(where + "no sub-aspects");
  if (record.sub_aspects.size() != record.sub_answers.size()) {
    throw Error(where + "sub_aspects and sub_answers differ in length");
  }
}

std::vector<std::string> CheckRecord(const DatasetRecord& record) {
  std::vector<std::string> warnings;
  if (record.sub_aspects.size() < 2) {
    warnings.push_back("record " + record.id + ": fewer than two sub-aspects");
  }
  if (record.answer_is_joined) {
    std::string joined;
    for (const auto& part : record.sub_answers) joined += part + " ";
    if (CollapseWhitespace(joined) != CollapseWhitespace(record.answer)) {
      warnings.push_back("record " + record.id +
                         ": answer is not the join of its sub-answers");
    }
  }
  return warnings;
}

Dataset LoadDataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file " + path.string());
  Dataset dataset;
  std::unordered_set<std::string> ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    DatasetRecord record;
    try {
      const auto j = nlohmann::json::parse(line);
      record.id = j.at("id").get<std::string>();
      record.question = j.at("question").get<std::string>();
      record.answer = j.at("answer").get<std::string>();
      record.sub_aspects = j.at("sub_aspects").get<std::vector<std::string>>();
      record.sub_answers = j.at("sub_answers").get<std::vector<std::string>>();
      record.answer_is_joined = j.value("answer_is_joined", false);
    } catch (const nlohmann::json::exception& e) {
      throw Error("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
    ValidateRecord(record);
    if (!ids.insert(record.id).second) {
      throw Error("duplicate record id " + record.id);
    }
    for (auto& w : CheckRecord(record)) dataset.warnings.push_back(std::move(w));
    dataset.records.push_back(std::move(record));
  }
  if (dataset.records.empty()) throw Error("empty dataset");
  return dataset;
}

}  // namespace facetrank
