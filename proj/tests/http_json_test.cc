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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "facetrank/error.h"
#include "facetrank/listwise_ranker.h"
#include "httplib.h"
#include "test_util.h"

namespace facetrank {
namespace {

using nlohmann::json;

// Local server on an ephemeral port, stopped on destruction.
class StubServer {
 public:
  StubServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Server& server() { return server_; }
  HttpEndpoint Endpoint(const std::string& path, int retries = 0) const {
    return {"http://127.0.0.1:" + std::to_string(port_) + path, 2000, retries};
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpLlmClient, SendsPromptAndReadsText) {
  StubServer stub;
  json seen;
  std::string auth;
  stub.server().Post("/complete", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(json{{"text", "[origins][impact]"}}.dump(), "application/json");
  });
  ::setenv(kCredentialEnv, "secret-token", 1);
  HttpLlmClient client(stub.Endpoint("/complete"));
  EXPECT_EQ(client.Complete("list aspects", 64), "[origins][impact]");
  ::unsetenv(kCredentialEnv);
  EXPECT_EQ(seen, (json{{"prompt", "list aspects"}, {"max_tokens", 64}}));
  EXPECT_EQ(auth, "Bearer secret-token");

  auto list = PredictAspects("q", ExplorerPrompt::Default(), client);
  EXPECT_EQ(list.aspects, (std::vector<std::string>{"origins", "impact"}));
}

TEST(HttpLlmClient, RejectsReplyWithoutText) {
  StubServer stub;
  stub.server().Post("/bad", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"completion\": \"x\"}", "application/json");
  });
  stub.server().Post("/garbled", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "text/plain");
  });
  stub.server().Post("/missing", [](const httplib::Request&, httplib::Response& res) {
    res.status = 404;
  });
  EXPECT_THROW(HttpLlmClient(stub.Endpoint("/bad")).Complete("p", 1), TransportError);
  EXPECT_THROW(HttpLlmClient(stub.Endpoint("/garbled")).Complete("p", 1), TransportError);
  EXPECT_THROW(HttpLlmClient(stub.Endpoint("/missing")).Complete("p", 1), TransportError);
}

TEST(PostJson, RetriesServerErrors) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/flaky", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    res.set_content("{\"ok\": true}", "application/json");
  });
  EXPECT_EQ(PostJson(stub.Endpoint("/flaky", 2), json::object()), (json{{"ok", true}}));
  EXPECT_EQ(calls.load(), 3);
  calls = 0;
  EXPECT_THROW(PostJson(stub.Endpoint("/flaky", 1), json::object()), TransportError);
  EXPECT_EQ(calls.load(), 2);
}

TEST(PostJson, UnreachableOrUnsupported) {
  HttpEndpoint closed{"http://127.0.0.1:1/x", 300, 1};
  EXPECT_THROW(PostJson(closed, json::object()), TransportError);
  EXPECT_THROW(PostJson({"https://example.invalid/x", 300, 0}, json::object()), TransportError);
  EXPECT_THROW(PostJson({"", 300, 0}, json::object()), TransportError);
}

TEST(HttpGenerator, WireFormat) {
  StubServer stub;
  json seen;
  stub.server().Post("/gen", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(json{{"text", "an answer"}}.dump(), "application/json");
  });
  HttpGenerator gen(stub.Endpoint("/gen"), 256);
  EXPECT_EQ(gen.Generate("who", {"doc one", "doc two"}), "an answer");
  EXPECT_EQ(seen, (json{{"query", "who"}, {"documents", {"doc one", "doc two"}},
                        {"max_tokens", 256}}));
}

TEST(RemoteScoringBackend, MatchesLocalBackendBehaviour) {
  StubServer stub;
  std::vector<json> requests;
  // Scores favour longer candidate texts.
  stub.server().Post("/score", [&](const httplib::Request& req, httplib::Response& res) {
    auto body = json::parse(req.body);
    requests.push_back(body);
    std::vector<double> scores;
    for (const auto& c : body["candidates"]) scores.push_back(c.get<std::string>().size() / 10.0);
    res.set_content(json{{"scores", scores}}.dump(), "application/json");
  });
  auto pool = testutil::MakePool({"a", "abc", "ab", "abcd"}, "query", {"x", "y"});
  RemoteScoringBackend remote(stub.Endpoint("/score"));
  RankerConfig config{.k = 3, .tau = 0.1};
  auto list = Rank(pool, config, remote);
  EXPECT_EQ(list.docids, (std::vector<size_t>{3, 1, 2}));
  ASSERT_EQ(requests.size(), 3u);
  EXPECT_EQ(requests[0]["query"], "query");
  EXPECT_EQ(requests[0]["aspects"], (json{"x", "y"}));
  EXPECT_EQ(requests[0]["candidates"], (json{"a", "abc", "ab", "abcd"}));
  EXPECT_EQ(requests[0]["selected"], json::array());
  EXPECT_EQ(requests[2]["selected"], (json{3, 1}));

  double sum = 0;
  for (double lp : list.step_logprobs) sum += lp;
  EXPECT_EQ(SequenceLogProb(pool, config, remote, list.docids), sum);
}

TEST(RemoteScoringBackend, ValidatesScores) {
  StubServer stub;
  stub.server().Post("/short", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"scores\": [1.0]}", "application/json");
  });
  stub.server().Post("/text", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"scores\": [\"a\", \"b\"]}", "application/json");
  });
  stub.server().Post("/none", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{}", "application/json");
  });
  auto pool = testutil::MakePool({"a", "b"});
  for (const char* path : {"/short", "/text", "/none"}) {
    RemoteScoringBackend remote(stub.Endpoint(path));
    EXPECT_THROW(Rank(pool, {.k = 1}, remote), TransportError) << path;
  }
}

}  // namespace
}  // namespace facetrank
