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
#include <utility>

#include "depforge/augment.h"
#include "depforge/errors.h"
#include "httplib.h"
#include "json.hpp"

namespace depforge {

HttpProvider::HttpProvider(std::string url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw UsageError("bad provider URL: " + url);
  if (url.starts_with("https://")) {
    throw UsageError("https provider URLs are not supported; use http:// or a proxy");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/paraphrase";
}

std::vector<std::string> HttpProvider::paraphrase(const ParaphraseRequest& request) {
  request.validate();
  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  const auto res = client.Post(path_, request.to_json(), "application/json");
  if (!res) {
    throw ProviderError("paraphrase request to " + scheme_host_port_ + path_ +
                            " failed: " + httplib::to_string(res.error()),
                        true);
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception&) {
    body = nullptr;
  }
  if (res->status < 200 || res->status >= 300) {
    std::string message = "HTTP " + std::to_string(res->status);
    if (body.is_object() && body.contains("error") && body["error"].is_string()) {
      message += ": " + body["error"].get<std::string>();
    }
    const bool transient = res->status == 429 || res->status >= 500;
    throw ProviderError("paraphrase service " + message, transient);
  }
  if (!body.is_object() || !body.contains("paraphrases") ||
      !body["paraphrases"].is_array()) {
    throw ProviderError("paraphrase service returned a malformed response", false);
  }
  std::vector<std::string> out;
  for (const auto& item : body["paraphrases"]) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw ProviderError("paraphrase service returned a non-string or empty paraphrase",
                          false);
    }
    out.push_back(item.get<std::string>());
  }
  if (out.size() != static_cast<std::size_t>(request.n)) {
    throw ProviderError("paraphrase service returned " + std::to_string(out.size()) +
                            " paraphrases, expected " + std::to_string(request.n),
                        false);
  }
  return out;
}

}  // namespace depforge
