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

#include "facetrank/http_json.h"

#include <cmath>
#include <cstdlib>

#include "facetrank/error.h"
#include "httplib.h"

namespace facetrank {
namespace {

struct ParsedUrl {
  std::string host_port;  // "http://host:port"
  std::string path;
};

ParsedUrl ParseUrl(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw TransportError("unsupported endpoint url '" + url +
                         "' (only http:// is supported)");
  }
  const auto slash = url.find('/', kScheme.size());
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string ReplyText(const nlohmann::json& reply, const std::string& url) {
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw TransportError("reply from " + url + " lacks a \"text\" string");
  }
  return reply["text"].get<std::string>();
}

class RemoteSession : public DecodeSession {
 public:
  RemoteSession(const HttpEndpoint& endpoint, const CandidatePool& pool)
      : endpoint_(endpoint), size_(pool.size()) {
    request_["query"] = pool.query;
    request_["aspects"] = pool.aspects.aspects;
    auto& candidates = request_["candidates"] = nlohmann::json::array();
    for (const auto& c : pool.candidates) candidates.push_back(c.doc.text);
  }

  std::vector<double> StepScores(std::span<const size_t> selected) override {
    request_["selected"] = std::vector<size_t>(selected.begin(), selected.end());
    const auto reply = PostJson(endpoint_, request_);
    if (!reply.is_object() || !reply.contains("scores") ||
        !reply["scores"].is_array()) {
      throw TransportError("reply from " + endpoint_.url + " lacks \"scores\"");
    }
    std::vector<double> scores;
    try {
      scores = reply["scores"].get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw TransportError("non-numeric scores from " + endpoint_.url);
    }
    if (scores.size() != size_) {
      throw TransportError("expected " + std::to_string(size_) +
                           " scores from " + endpoint_.url + ", got " +
                           std::to_string(scores.size()));
    }
    for (double s : scores) {
      if (!std::isfinite(s)) throw TransportError("non-finite score from " + endpoint_.url);
    }
    return scores;
  }

 private:
  HttpEndpoint endpoint_;
  size_t size_;
  nlohmann::json request_;
};

}  // namespace

nlohmann::json PostJson(const HttpEndpoint& endpoint,
                        const nlohmann::json& body) {
  if (endpoint.url.empty()) throw TransportError("no endpoint configured");
  const auto url = ParseUrl(endpoint.url);
  httplib::Client client(url.host_port);
  const auto timeout = std::chrono::milliseconds(endpoint.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (const char* key = std::getenv(kCredentialEnv); key != nullptr && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string payload = body.dump();
  std::string diagnostic;
  for (int attempt = 0; attempt <= std::max(0, endpoint.retries); ++attempt) {
    auto result = client.Post(url.path, headers, payload, "application/json");
    if (!result) {
      diagnostic = "POST " + endpoint.url + " failed: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 500) {
      diagnostic = "POST " + endpoint.url + " returned HTTP " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw TransportError("POST " + endpoint.url + " returned HTTP " +
                           std::to_string(result->status));
    }
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      throw TransportError("invalid JSON from " + endpoint.url + ": " + e.what());
    }
  }
  throw TransportError(diagnostic);
}

std::string HttpLlmClient::Complete(const std::string& prompt, int max_tokens) {
  return ReplyText(PostJson(endpoint_, {{"prompt", prompt}, {"max_tokens", max_tokens}}),
                   endpoint_.url);
}

std::string HttpGenerator::Generate(const std::string& query,
                                    const std::vector<std::string>& documents) {
  return ReplyText(PostJson(endpoint_, {{"query", query},
                                        {"documents", documents},
                                        {"max_tokens", max_tokens_}}),
                   endpoint_.url);
}

std::unique_ptr<DecodeSession> RemoteScoringBackend::Open(
    const CandidatePool& pool) const {
  return std::make_unique<RemoteSession>(endpoint_, pool);
}

}  // namespace facetrank
