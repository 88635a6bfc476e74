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
#ifndef DEPFORGE_AUGMENT_H_
#define DEPFORGE_AUGMENT_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depforge/example.h"

namespace depforge {

inline constexpr int kDefaultParaphraseCount = 2;
inline constexpr double kDefaultTopP = 0.9;

struct ParaphraseRequest {
  std::string text;
  int n = kDefaultParaphraseCount;
  double top_p = kDefaultTopP;
  std::optional<std::int64_t> seed;

  // Throws UsageError unless n >= 1 and 0 < top_p <= 1.
  void validate() const;
  // {"text":..,"n":..,"top_p":..,"seed":..|null}
  std::string to_json() const;
  static ParaphraseRequest from_json(std::string_view json);
  // Hex digest of to_json(); the fixture provider's lookup key.
  std::string hash() const;
};

struct ProviderCapabilities {
  std::string name;
  bool supports_seed = false;
};

// Implementations must be safe to call from several threads at once and
// must return exactly request.n non-empty strings or throw ProviderError.
class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual ProviderCapabilities capabilities() const = 0;
  virtual std::vector<std::string> paraphrase(const ParaphraseRequest& request) = 0;
};

// Rule-based perturbations (synonym swaps, copula flips, leading-phrase
// reordering, discourse markers) chosen deterministically from the seed.
std::vector<std::string> mock_paraphrase(const ParaphraseRequest& request);

class MockProvider : public ParaphraseProvider {
 public:
  ProviderCapabilities capabilities() const override { return {"mock", true}; }
  std::vector<std::string> paraphrase(const ParaphraseRequest& request) override;
};

// Returns the input text n times.
class IdentityProvider : public ParaphraseProvider {
 public:
  ProviderCapabilities capabilities() const override { return {"identity", true}; }
  std::vector<std::string> paraphrase(const ParaphraseRequest& request) override;
};

// Replays recorded responses. Each JSONL line is either
//   {"request": {...}, "paraphrases": [...]}  or
//   {"hash": "<ParaphraseRequest::hash()>", "paraphrases": [...]}.
// Unknown requests raise a non-transient ProviderError.
class FixtureProvider : public ParaphraseProvider {
 public:
  explicit FixtureProvider(const std::filesystem::path& path);

  ProviderCapabilities capabilities() const override { return {"fixture", true}; }
  std::vector<std::string> paraphrase(const ParaphraseRequest& request) override;
  std::size_t size() const { return responses_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> responses_;
};

// Client for the POST /paraphrase protocol. Connection failures, timeouts,
// 429 and 5xx responses are transient; other failures are not.
class HttpProvider : public ParaphraseProvider {
 public:
  // url like "http://host:port" (an optional path prefix is kept).
  explicit HttpProvider(std::string url,
                        std::chrono::milliseconds timeout = std::chrono::seconds(30));

  ProviderCapabilities capabilities() const override { return {"http", true}; }
  std::vector<std::string> paraphrase(const ParaphraseRequest& request) override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

// Builds a provider from a spec: "mock", "identity", "fixture:<path>" or an
// http:// URL.
std::unique_ptr<ParaphraseProvider> make_provider(std::string_view spec);

struct AugmentOptions {
  int n = kDefaultParaphraseCount;
  double top_p = kDefaultTopP;
  std::uint64_t seed = 0;
  unsigned max_in_flight = 1;
  int max_retries = 3;
  std::chrono::milliseconds backoff{100};  // doubled after each retry
};

struct AugmentStats {
  std::size_t originals = 0;
  std::size_t copies = 0;
  std::size_t failures = 0;
  std::size_t provider_calls = 0;
  std::size_t retries = 0;
  // Paraphrases identical to the source premise or to another copy's.
  std::size_t duplicates = 0;
  // Character edit distance between premise and paraphrase, keyed by the
  // bucket's lower bound (0, 1, 6, 11, 21, 51).
  std::map<std::size_t, std::size_t> edit_distance_histogram;

  void merge(const AugmentStats& other);
  std::string to_json() const;
};

// Request seed for premise j of copy k of the example at position index.
std::int64_t paraphrase_seed(std::uint64_t seed, std::size_t index,
                             std::size_t copy, std::size_t premise);

// Returns the original followed by n copies whose premises are each replaced
// by one sampled paraphrase; on provider failure returns only the original,
// annotated with a note.
std::vector<DeductionExample> augment_example(const DeductionExample& example,
                                              ParaphraseProvider& provider,
                                              const AugmentOptions& options,
                                              std::size_t index = 0,
                                              AugmentStats* stats = nullptr);

// Augments every example, up to max_in_flight at a time, preserving order.
std::vector<DeductionExample> augment_all(std::span<const DeductionExample> examples,
                                          ParaphraseProvider& provider,
                                          const AugmentOptions& options,
                                          AugmentStats* stats = nullptr);

}  // namespace depforge

#endif  // DEPFORGE_AUGMENT_H_
