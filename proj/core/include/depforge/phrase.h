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
#ifndef DEPFORGE_PHRASE_H_
#define DEPFORGE_PHRASE_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depforge/conllu.h"

namespace depforge {

struct Phrase {
  std::string text;
  TokenId head_token = 0;
  std::vector<TokenId> token_ids;  // ascending
  std::string head_pos;
};

// Ids of the subtree rooted at id (inclusive), ascending.
std::vector<TokenId> subtree_ids(const ParsedSentence& sentence, TokenId id);
bool is_contiguous(std::span<const TokenId> sorted_ids);
bool is_punct(const Token& token);

// Surface realization of the subtree under token_id, minus the subtrees
// rooted at the tokens in prune.
Phrase extract_subtree(const ParsedSentence& sentence, TokenId token_id,
                       const std::set<TokenId>& prune = {});

// Single spaces between words; none before , . ; : % ) or English clitics
// ('s n't ...), none after (.
std::string detokenize(std::span<const std::string> words);
// Spacing decided by words, text taken from display (same length), for
// decorated output such as colored terminals.
std::string detokenize(std::span<const std::string> words,
                       std::span<const std::string> display);

}  // namespace depforge

#endif  // DEPFORGE_PHRASE_H_
