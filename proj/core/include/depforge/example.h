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
// Deduction examples and their JSONL form.

#ifndef DEPFORGE_EXAMPLE_H_
#define DEPFORGE_EXAMPLE_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depforge/conllu.h"
#include "depforge/pattern.h"

namespace depforge {

struct Provenance {
  SentenceRef sentence;
  std::string pattern_id;
  std::map<int, TokenId> bindings;
  std::uint32_t chunk_id = 0;
  std::uint32_t ordinal = 0;

  auto operator<=>(const Provenance&) const = default;
};

struct DeductionExample {
  std::vector<std::string> premises;
  std::string conclusion;
  Operation op = Operation::kSubstitution;
  Provenance provenance;
  // 0 for template output, k for the k-th paraphrased copy.
  std::uint32_t variant = 0;
  std::optional<std::string> paraphrase_of;
  std::optional<std::string> note;

  // Stable identifier derived from provenance and variant.
  std::string id() const;

  bool operator==(const DeductionExample&) const = default;
};

// A search hit awaiting template expansion.
struct MatchRecord {
  Operation op = Operation::kSubstitution;
  Provenance provenance;
  std::string text;  // the matched sentence, for inspection only

  bool operator==(const MatchRecord&) const = default;
};

// A match that produced no example. stage is "filter", "template" or
// "dedup".
struct SkipEntry {
  Operation op = Operation::kSubstitution;
  Provenance provenance;
  std::string stage;
  std::string reason;

  bool operator==(const SkipEntry&) const = default;
};

std::string example_to_json(const DeductionExample& example);
DeductionExample example_from_json(std::string_view line);

void write_examples(std::ostream& out, std::span<const DeductionExample> examples);
// Throws DataError naming the line on malformed records.
std::vector<DeductionExample> read_examples(std::istream& in,
                                            std::string_view source_name);

std::string match_to_json(const MatchRecord& match);
MatchRecord match_from_json(std::string_view line);
void write_matches(std::ostream& out, std::span<const MatchRecord> matches);
std::vector<MatchRecord> read_matches(std::istream& in, std::string_view source_name);

std::string skip_to_json(const SkipEntry& skip);
SkipEntry skip_from_json(std::string_view line);
void write_skips(std::ostream& out, std::span<const SkipEntry> skips);
std::vector<SkipEntry> read_skips(std::istream& in, std::string_view source_name);

}  // namespace depforge

#endif  // DEPFORGE_EXAMPLE_H_
