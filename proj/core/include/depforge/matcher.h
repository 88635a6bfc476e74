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
// Reference matcher: exhaustive search of one sentence for a pattern.

#ifndef DEPFORGE_MATCHER_H_
#define DEPFORGE_MATCHER_H_

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "depforge/conllu.h"
#include "depforge/pattern.h"

namespace depforge {

struct MatchBinding {
  SentenceRef sentence;
  std::string pattern_id;
  std::map<int, TokenId> bindings;  // capture index -> token id
  TokenId anchor = 0;               // token bound to the pattern root

  auto operator<=>(const MatchBinding&) const = default;

  TokenId at(int capture) const;  // throws std::out_of_range
};

// True when token satisfies the node's own arc/POS/lemma constraints.
bool node_accepts(const PatternNode& node, const Token& token);

// Every assignment of pattern nodes to distinct tokens that satisfies all
// constraints and head relations, deduplicated by capture map (the
// lexicographically first full assignment supplies the anchor) and sorted
// by capture map.
std::vector<MatchBinding> match_sentence(const DepPattern& pattern,
                                         const ParsedSentence& sentence);

}  // namespace depforge

#endif  // DEPFORGE_MATCHER_H_
