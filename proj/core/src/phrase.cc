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
#include "depforge/phrase.h"

#include <algorithm>
#include <array>

#include "depforge/text_util.h"

namespace depforge {

namespace {

constexpr std::array<std::string_view, 8> kClitics = {
    "n't", "'s", "'re", "'ve", "'ll", "'d", "'m", "'"};

bool attaches_left(std::string_view w) {
  if (w.size() == 1 && std::string_view(",.;:%)!?").find(w[0]) != std::string_view::npos) {
    return true;
  }
  const std::string lower = ascii_lower(w);
  return std::find(kClitics.begin(), kClitics.end(), lower) != kClitics.end();
}

}  // namespace

std::vector<TokenId> subtree_ids(const ParsedSentence& sentence, TokenId id) {
  std::vector<TokenId> out;
  std::vector<TokenId> stack{id};
  while (!stack.empty()) {
    const TokenId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (const TokenId c : sentence.children(cur)) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_contiguous(std::span<const TokenId> sorted_ids) {
  return sorted_ids.empty() ||
         sorted_ids.back() - sorted_ids.front() + 1 == sorted_ids.size();
}

bool is_punct(const Token& token) {
  return token.deprel == "punct" || token.xpos == "," || token.xpos == "." ||
         token.xpos == ":" || token.xpos == "" || token.xpos == "''";
}

Phrase extract_subtree(const ParsedSentence& sentence, TokenId token_id,
                       const std::set<TokenId>& prune) {
  Phrase phrase;
  phrase.head_token = token_id;
  phrase.head_pos = sentence.token(token_id).xpos;
  std::vector<TokenId> stack{token_id};
  while (!stack.empty()) {
    const TokenId cur = stack.back();
    stack.pop_back();
    phrase.token_ids.push_back(cur);
    for (const TokenId c : sentence.children(cur)) {
      if (!prune.contains(c)) stack.push_back(c);
    }
  }
  std::sort(phrase.token_ids.begin(), phrase.token_ids.end());
  std::vector<std::string> words;
  for (const TokenId id : phrase.token_ids) words.push_back(sentence.token(id).form);
  phrase.text = detokenize(words);
  return phrase;
}

std::string detokenize(std::span<const std::string> words) {
  return detokenize(words, words);
}

std::string detokenize(std::span<const std::string> words,
                       std::span<const std::string> display) {
  std::string out;
  bool suppress_next_space = true;
  for (std::size_t i = 0; i < words.size() && i < display.size(); ++i) {
    const std::string& w = words[i];
    if (w.empty()) continue;
    if (!suppress_next_space && !attaches_left(w)) out += ' ';
    out += display[i];
    suppress_next_space = w == "(";
  }
  return out;
}

}  // namespace depforge
