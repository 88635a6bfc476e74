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
#ifndef DEPFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_
#define DEPFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "depforge/conllu.h"
#include "depforge/example.h"
#include "depforge/matcher.h"
#include "depforge/pattern.h"

namespace depforge::testing {

std::filesystem::path data_dir();
std::filesystem::path source_dir();

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

ParsedSentence load_single(const std::string& file, std::size_t index = 0);

// Random labelled tree with a token count in [min_tokens, max_tokens]. Heads
// are arbitrary (not necessarily projective); labels come from a small
// vocabulary biased towards the shipped patterns.
ParsedSentence random_tree(std::mt19937_64& rng, int min_tokens, int max_tokens,
                           std::uint64_t index);

// Random pattern of 1..max_nodes nodes, produced as text and parsed.
DepPattern random_pattern(std::mt19937_64& rng, const std::string& id, int max_nodes = 4);

// Relabels tokens so that the pattern occurs in the tree, when a shape-
// compatible placement exists. Returns true on success.
bool plant(std::mt19937_64& rng, const DepPattern& pattern, ParsedSentence& sentence);

struct OracleMatch {
  std::map<int, TokenId> bindings;
  TokenId anchor = 0;
  auto operator<=>(const OracleMatch&) const = default;
};

// Brute force: filters candidates per node, takes the full cartesian
// product and keeps injective assignments whose pattern edges are tree
// edges.
std::set<OracleMatch> oracle_matches(const DepPattern& pattern, const ParsedSentence& sentence);

// Words of generated text that are neither source words, inflectional
// variants of source forms or lemmas, nor template lexicon entries.
std::vector<std::string> lexicon_violations(const std::string& generated,
                                            const ParsedSentence& source);

// Every kept example the shipped patterns produce for one sentence.
std::vector<DeductionExample> expand_all(const ParsedSentence& sentence);

}  // namespace depforge::testing

#endif  // DEPFORGE_TESTS_SUPPORT_TEST_SUPPORT_H_
