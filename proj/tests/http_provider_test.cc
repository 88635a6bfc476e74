// Copyright 2026 The Depforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <atomic>
#include <mutex>
#include <thread>

#include "depforge/augment.h"
#include "depforge/errors.h"
#include "httplib.h"
#include "json.hpp"
#include "test_support.h"

namespace depforge {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;

// In-process stand-in for the paraphrase service.
class FakeService {
 public:
  std::atomic<int> failures_before_success{0};
  std::atomic<int> status_on_failure{503};
  std::atomic<int> extra_items{0};
  std::atomic<bool> malformed{false};
  std::atomic<int> hits{0};
  std::mutex mu;
  std::vector<json> bodies;

  FakeService() {
    server_.Post("/v1/paraphrase", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      json body = json::parse(req.body);
      {
        std::lock_guard lock(mu);
        bodies.push_back(body);
      }
      if (failures_before_success > 0) {
        --failures_before_success;
        res.status = status_on_failure;
        res.set_content(R"({"error":"model busy"})", "application/json");
        return;
      }
      if (malformed) {
        res.set_content("not json", "text/plain");
        return;
      }
      json out = json::array();
      const int n = body["n"].get<int>() + extra_items;
      for (int i = 0; i < n; ++i) {
        out.push_back(body["text"].get<std::string>() + " #" + std::to_string(i));
      }
      res.set_content(json{{"paraphrases", out}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

ParaphraseRequest request(int n = 2) { return ParaphraseRequest{"Dogs bark.", n, 0.9, 5}; }

TEST(HttpProvider, PostsRequestAndParsesParaphrases) {
  FakeService service;
  HttpProvider provider(service.url(), 5s);
  auto out = provider.paraphrase(request());
  EXPECT_EQ(out, (std::vector<std::string>{"Dogs bark. #0", "Dogs bark. #1"}));
  ASSERT_EQ(service.bodies.size(), 1u);
  EXPECT_EQ(service.bodies[0], json::parse(request().to_json()));
  EXPECT_EQ(service.bodies[0]["seed"], 5);
}

TEST(HttpProvider, ServerErrorsAreTransient) {
  FakeService service;
  service.failures_before_success = 1;
  HttpProvider provider(service.url(), 5s);
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_TRUE(e.transient());
    EXPECT_NE(std::string(e.what()).find("HTTP 503: model busy"), std::string::npos);
  }
  service.failures_before_success = 1;
  service.status_on_failure = 429;
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_TRUE(e.transient());
  }
}

TEST(HttpProvider, ClientErrorsAndBadBodiesArePermanent) {
  FakeService service;
  HttpProvider provider(service.url(), 5s);
  service.failures_before_success = 1;
  service.status_on_failure = 400;
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_FALSE(e.transient());
    EXPECT_NE(std::string(e.what()).find("HTTP 400"), std::string::npos);
  }
  service.extra_items = 1;
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_FALSE(e.transient());
  }
  service.extra_items = 0;
  service.malformed = true;
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_FALSE(e.transient());
  }
}

TEST(HttpProvider, UnreachableServiceIsTransient) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpProvider provider("http://127.0.0.1:" + std::to_string(port), 500ms);
  try {
    provider.paraphrase(request());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_TRUE(e.transient());
  }
}

TEST(HttpProvider, RejectsUnsupportedUrls) {
  EXPECT_THROW(HttpProvider("https://example.com"), UsageError);
  EXPECT_THROW(HttpProvider("localhost:8000"), UsageError);
}

TEST(HttpProvider, AugmentRetriesThroughOutages) {
  FakeService service;
  service.failures_before_success = 2;
  HttpProvider provider(service.url(), 5s);
  AugmentOptions options;
  options.n = 2;
  options.seed = 42;
  options.backoff = 1ms;
  DeductionExample e = testing::expand_all(testing::load_single("hibiscus.conllu")).at(0);
  AugmentStats stats;
  auto out = augment_example(e, provider, options, 0, &stats);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[1].premises[0], e.premises[0] + " #0");
  EXPECT_EQ(stats.retries, 2u);
  EXPECT_EQ(service.hits.load(), 6);
  EXPECT_EQ(service.bodies.back()["n"], 1);
  EXPECT_EQ(service.bodies.back()["seed"], paraphrase_seed(42, 0, 2, 1));

  service.failures_before_success = 100;
  AugmentStats failed;
  options.max_retries = 1;
  auto only = augment_example(e, provider, options, 0, &failed);
  EXPECT_EQ(only.size(), 1u);
  EXPECT_EQ(failed.provider_calls, 2u);
  EXPECT_TRUE(only[0].note.has_value());
}

}  // namespace
}  // namespace depforge
