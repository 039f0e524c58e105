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

#ifndef FACETRANK_HTTP_JSON_H_
#define FACETRANK_HTTP_JSON_H_

#include <string>

#include "facetrank/aspect_explorer.h"
#include "facetrank/listwise_ranker.h"
#include "facetrank/preference_builder.h"
#include "json.hpp"

namespace facetrank {

// Environment variable holding a bearer token for remote endpoints.
inline constexpr const char* kCredentialEnv = "FACETRANK_API_KEY";

struct HttpEndpoint {
  std::string url;  // http://host[:port]/path
  int timeout_ms = 30000;
  int retries = 2;
};

// POSTs a JSON body and parses the JSON reply. Connection failures and 5xx
// replies are retried; anything still failing raises TransportError.
nlohmann::json PostJson(const HttpEndpoint& endpoint,
                        const nlohmann::json& body);

// {"prompt", "max_tokens"} -> {"text"}
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
  std::string Complete(const std::string& prompt, int max_tokens) override;

 private:
  HttpEndpoint endpoint_;
};

// {"query", "documents", "max_tokens"} -> {"text"}
class HttpGenerator : public Generator {
 public:
  HttpGenerator(HttpEndpoint endpoint, int max_tokens)
      : endpoint_(std::move(endpoint)), max_tokens_(max_tokens) {}
  std::string Name() const override { return "http"; }
  std::string Generate(const std::string& query,
                       const std::vector<std::string>& documents) override;

 private:
  HttpEndpoint endpoint_;
  int max_tokens_;
};

// One request per decoding step:
// {"query", "aspects", "candidates", "selected"} -> {"scores": [M reals]}.
class RemoteScoringBackend : public ScoringBackend {
 public:
  explicit RemoteScoringBackend(HttpEndpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::string Name() const override { return "remote"; }
  std::unique_ptr<DecodeSession> Open(const CandidatePool& pool) const override;

 private:
  HttpEndpoint endpoint_;
};

}  // namespace facetrank

#endif  // FACETRANK_HTTP_JSON_H_
