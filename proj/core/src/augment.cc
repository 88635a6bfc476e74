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
#include "depforge/augment.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "depforge/errors.h"
#include "depforge/morphology.h"
#include "depforge/rng.h"
#include "depforge/text_util.h"
#include "json.hpp"

namespace depforge {

using json = nlohmann::ordered_json;

void ParaphraseRequest::validate() const {
  if (n < 1) throw UsageError("paraphrase count n must be at least 1");
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw UsageError("top_p must lie in (0, 1]");
  }
  if (text.empty()) throw UsageError("paraphrase text is empty");
}

std::string ParaphraseRequest::to_json() const {
  json j;
  j["text"] = text;
  j["n"] = n;
  j["top_p"] = top_p;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  return j.dump();
}

ParaphraseRequest ParaphraseRequest::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ParaphraseRequest r;
    r.text = j.at("text").get<std::string>();
    r.n = j.value("n", kDefaultParaphraseCount);
    r.top_p = j.value("top_p", kDefaultTopP);
    if (j.contains("seed") && !j["seed"].is_null()) {
      r.seed = j["seed"].get<std::int64_t>();
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed paraphrase request: ") + e.what());
  }
}

std::string ParaphraseRequest::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json())));
  return buf;
}

// ---------------------------------------------------------------------------
// Mock provider

namespace {

struct Synonym {
  std::string_view word;
  std::array<std::string_view, 2> alternatives;
};

constexpr std::array<Synonym, 32> kSynonyms = {{
    {"popular", {"well-liked", "widely enjoyed"}},
    {"very", {"quite", "really"}},
    {"provide", {"supply", "deliver"}},
    {"provides", {"supplies", "delivers"}},
    {"colonize", {"inhabit", "populate"}},
    {"colonizes", {"inhabits", "populates"}},
    {"learn", {"study", "take"}},
    {"learns", {"studies", "takes"}},
    {"large", {"big", "sizable"}},
    {"small", {"little", "tiny"}},
    {"often", {"frequently", "commonly"}},
    {"usually", {"typically", "generally"}},
    {"important", {"significant", "key"}},
    {"common", {"widespread", "frequent"}},
    {"use", {"employ", "utilize"}},
    {"uses", {"employs", "utilizes"}},
    {"help", {"assist", "aid"}},
    {"helps", {"assists", "aids"}},
    {"contain", {"include", "hold"}},
    {"contains", {"includes", "holds"}},
    {"require", {"need", "demand"}},
    {"requires", {"needs", "demands"}},
    {"produce", {"make", "generate"}},
    {"produces", {"makes", "generates"}},
    {"able", {"capable", "fit"}},
    {"especially", {"particularly", "notably"}},
    {"surface", {"exterior", "layer"}},
    {"ancient", {"old", "classical"}},
    {"water", {"fresh water", "H2O"}},
    {"lands", {"areas", "regions"}},
    {"dirty", {"filthy", "unclean"}},
    {"hungry", {"starving", "famished"}},
}};

constexpr std::array<std::string_view, 6> kMarkers = {
    "Indeed,", "In fact,", "Generally,", "Notably,", "Typically,",
    "It is true that"};

constexpr std::array<std::string_view, 8> kLeadingPreps = {
    "In", "During", "On", "At", "After", "Before", "As", "For"};

std::string strip_final(std::string_view s, char& final_char) {
  s = trim(s);
  final_char = '.';
  if (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?')) {
    final_char = s.back();
    s.remove_suffix(1);
  }
  return std::string(trim(s));
}

std::string lower_unless_name(std::string_view s) {
  if (s.size() >= 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'a' && s[1] <= 'z' &&
      !s.starts_with("I ")) {
    return lowercase_first(s);
  }
  return std::string(s);
}

// "In Egypt, X is Y" -> "X is Y in Egypt"
std::optional<std::string> reorder_leading_phrase(const std::string& body) {
  const std::size_t comma = body.find(", ");
  if (comma == std::string::npos || comma > body.size() / 2) return std::nullopt;
  const std::string_view first_word = std::string_view(body).substr(0, body.find(' '));
  if (std::find(kLeadingPreps.begin(), kLeadingPreps.end(), first_word) == kLeadingPreps.end()) {
    return std::nullopt;
  }
  const std::string rest = body.substr(comma + 2);
  if (rest.empty()) return std::nullopt;
  return capitalize_first(rest) + " " + lower_unless_name(body.substr(0, comma));
}

// "X is a Y" -> "Among Ys is X"
std::optional<std::string> flip_copula(const std::string& body) {
  for (const std::string_view marker : {" is a ", " is an "}) {
    const std::size_t at = body.find(marker);
    if (at == std::string::npos || at == 0) continue;
    const std::string subject = body.substr(0, at);
    std::string predicate = body.substr(at + marker.size());
    if (predicate.empty() || predicate.find(',') != std::string::npos) continue;
    const std::size_t last_space = predicate.rfind(' ');
    const std::size_t head = last_space == std::string::npos ? 0 : last_space + 1;
    predicate = predicate.substr(0, head) + pluralize_noun(predicate.substr(head));
    return "Among " + predicate + " is " + subject;
  }
  return std::nullopt;
}

std::optional<std::string> swap_synonym(const std::string& body, CounterRng& rng) {
  std::vector<std::string> words = split_words(body);
  std::vector<std::pair<std::size_t, const Synonym*>> hits;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    while (!w.empty() && std::string_view(",;:").find(w.back()) != std::string_view::npos) {
      w.pop_back();
    }
    const std::string lower = ascii_lower(w);
    for (const Synonym& s : kSynonyms) {
      if (s.word == lower) hits.emplace_back(i, &s);
    }
  }
  if (hits.empty()) return std::nullopt;
  const auto& [pos, syn] = hits[rng.below(hits.size())];
  std::string replacement(syn->alternatives[rng.below(syn->alternatives.size())]);
  std::string& word = words[pos];
  const std::size_t core = ascii_lower(word).find(syn->word);
  if (!word.empty() && word[0] >= 'A' && word[0] <= 'Z') {
    replacement = capitalize_first(replacement);
  }
  word = replacement + word.substr(core + syn->word.size());
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string add_marker(const std::string& body, CounterRng& rng) {
  const std::string_view marker = kMarkers[rng.below(kMarkers.size())];
  return std::string(marker) + " " + lower_unless_name(body);
}

std::string mock_variant(std::string_view text, std::uint64_t key) {
  CounterRng rng(key);
  char final_char = '.';
  std::string body = strip_final(text, final_char);
  if (body.empty()) return std::string(text);

  // Each applicable rewrite fires with probability 1/2; the discourse
  // marker is the fallback so a variant is never an exact copy.
  bool changed = false;
  if (rng.below(2) == 0) {
    if (auto r = reorder_leading_phrase(body)) { body = *r; changed = true; }
  }
  if (rng.below(2) == 0) {
    if (auto r = flip_copula(body)) { body = *r; changed = true; }
  }
  if (rng.below(2) == 0) {
    if (auto r = swap_synonym(body, rng)) { body = *r; changed = true; }
  }
  if (!changed || rng.below(4) == 0) body = add_marker(body, rng);
  return capitalize_first(body) + final_char;
}

}  // namespace

std::vector<std::string> mock_paraphrase(const ParaphraseRequest& request) {
  request.validate();
  const auto seed = static_cast<std::uint64_t>(request.seed.value_or(0));
  const std::uint64_t text_key = fnv1a64(request.text);
  std::vector<std::string> out;
  for (int i = 0; i < request.n; ++i) {
    out.push_back(mock_variant(request.text,
                               derive_seed(seed, {text_key, static_cast<std::uint64_t>(i)})));
  }
  return out;
}

std::vector<std::string> MockProvider::paraphrase(const ParaphraseRequest& request) {
  return mock_paraphrase(request);
}

std::vector<std::string> IdentityProvider::paraphrase(const ParaphraseRequest& request) {
  request.validate();
  return std::vector<std::string>(static_cast<std::size_t>(request.n), request.text);
}

// ---------------------------------------------------------------------------
// Fixture provider

FixtureProvider::FixtureProvider(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open paraphrase fixture " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      std::string key;
      if (j.contains("request")) {
        key = ParaphraseRequest::from_json(j["request"].dump()).hash();
      } else {
        key = j.at("hash").get<std::string>();
      }
      responses_[key] = j.at("paraphrases").get<std::vector<std::string>>();
    } catch (const std::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed fixture record: " + e.what());
    }
  }
}

std::vector<std::string> FixtureProvider::paraphrase(const ParaphraseRequest& request) {
  request.validate();
  const auto it = responses_.find(request.hash());
  if (it == responses_.end()) {
    throw ProviderError("no fixture response for request " + request.to_json(), false);
  }
  return it->second;
}

std::unique_ptr<ParaphraseProvider> make_provider(std::string_view spec) {
  if (spec == "mock") return std::make_unique<MockProvider>();
  if (spec == "identity") return std::make_unique<IdentityProvider>();
  if (spec.starts_with("fixture:")) {
    return std::make_unique<FixtureProvider>(std::string(spec.substr(8)));
  }
  if (spec.starts_with("http://") || spec.starts_with("https://")) {
    return std::make_unique<HttpProvider>(std::string(spec));
  }
  throw UsageError("unknown paraphrase provider '" + std::string(spec) +
                   "' (expected mock, identity, fixture:<path> or an http:// URL)");
}

// ---------------------------------------------------------------------------
// Augmentation

void AugmentStats::merge(const AugmentStats& other) {
  originals += other.originals;
  copies += other.copies;
  failures += other.failures;
  provider_calls += other.provider_calls;
  retries += other.retries;
  duplicates += other.duplicates;
  for (const auto& [bucket, count] : other.edit_distance_histogram) {
    edit_distance_histogram[bucket] += count;
  }
}

std::string AugmentStats::to_json() const {
  json j;
  j["originals"] = originals;
  j["copies"] = copies;
  j["failures"] = failures;
  j["provider_calls"] = provider_calls;
  j["retries"] = retries;
  j["duplicates"] = duplicates;
  json hist = json::object();
  for (const auto& [bucket, count] : edit_distance_histogram) {
    hist[std::to_string(bucket)] = count;
  }
  j["edit_distance_histogram"] = hist;
  return j.dump();
}

std::int64_t paraphrase_seed(std::uint64_t seed, std::size_t index,
                             std::size_t copy, std::size_t premise) {
  // Keep the value in the non-negative int64 range so it survives JSON.
  return static_cast<std::int64_t>(
      derive_seed(seed, {index, copy, premise}) >> 1);
}

namespace {

std::size_t distance_bucket(std::size_t d) {
  static constexpr std::array<std::size_t, 6> kBounds = {0, 1, 6, 11, 21, 51};
  std::size_t bucket = 0;
  for (const std::size_t b : kBounds) {
    if (d >= b) bucket = b;
  }
  return bucket;
}

std::string call_with_retries(ParaphraseProvider& provider,
                              const ParaphraseRequest& request,
                              const AugmentOptions& options, AugmentStats& stats) {
  auto delay = options.backoff;
  for (int attempt = 0;; ++attempt) {
    ++stats.provider_calls;
    try {
      std::vector<std::string> out = provider.paraphrase(request);
      if (out.size() != static_cast<std::size_t>(request.n)) {
        throw ProviderError("provider returned " + std::to_string(out.size()) +
                                " paraphrases, expected " + std::to_string(request.n),
                            false);
      }
      if (trim(out.front()).empty()) {
        throw ProviderError("provider returned an empty paraphrase", false);
      }
      return std::string(trim(out.front()));
    } catch (const ProviderError& e) {
      if (!e.transient() || attempt >= options.max_retries) throw;
      ++stats.retries;
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }
}

}  // namespace

std::vector<DeductionExample> augment_example(const DeductionExample& example,
                                              ParaphraseProvider& provider,
                                              const AugmentOptions& options,
                                              std::size_t index,
                                              AugmentStats* stats) {
  if (options.n < 0) throw UsageError("paraphrase count must not be negative");
  AugmentStats local;
  local.originals = 1;
  std::vector<DeductionExample> out{example};
  const bool seeded = provider.capabilities().supports_seed;
  try {
    std::vector<std::vector<std::string>> seen(example.premises.size());
    for (int copy = 1; copy <= options.n; ++copy) {
      DeductionExample variant = example;
      variant.variant = static_cast<std::uint32_t>(copy);
      variant.paraphrase_of = example.id();
      variant.note.reset();
      for (std::size_t p = 0; p < example.premises.size(); ++p) {
        ParaphraseRequest request;
        request.text = example.premises[p];
        request.n = 1;
        request.top_p = options.top_p;
        if (seeded) {
          request.seed = paraphrase_seed(options.seed, index,
                                         static_cast<std::size_t>(copy), p);
        }
        request.validate();
        std::string text = call_with_retries(provider, request, options, local);
        local.edit_distance_histogram[distance_bucket(
            edit_distance(example.premises[p], text))]++;
        if (text == example.premises[p] ||
            std::find(seen[p].begin(), seen[p].end(), text) != seen[p].end()) {
          ++local.duplicates;
        }
        seen[p].push_back(text);
        variant.premises[p] = std::move(text);
      }
      out.push_back(std::move(variant));
    }
    local.copies = out.size() - 1;
  } catch (const ProviderError& e) {
    out.resize(1);
    out[0].note = std::string("augmentation failed: ") + e.what();
    local.failures = 1;
    local.copies = 0;
    local.duplicates = 0;
    local.edit_distance_histogram.clear();
  }
  if (stats != nullptr) stats->merge(local);
  return out;
}

std::vector<DeductionExample> augment_all(std::span<const DeductionExample> examples,
                                          ParaphraseProvider& provider,
                                          const AugmentOptions& options,
                                          AugmentStats* stats) {
  std::vector<std::vector<DeductionExample>> slots(examples.size());
  std::vector<AugmentStats> slot_stats(examples.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  const auto worker = [&] {
    for (std::size_t i = next++; i < examples.size(); i = next++) {
      try {
        slots[i] = augment_example(examples[i], provider, options, i, &slot_stats[i]);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = examples.size();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(
      options.max_in_flight, 1, std::max<std::size_t>(examples.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<DeductionExample> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (stats != nullptr) stats->merge(slot_stats[i]);
    for (DeductionExample& e : slots[i]) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace depforge
