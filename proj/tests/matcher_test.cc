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
#include "depforge/matcher.h"

#include <gtest/gtest.h>

#include <random>

#include "test_support.h"

namespace depforge {
namespace {

std::set<testing::OracleMatch> as_set(const std::vector<MatchBinding>& ms) {
  std::set<testing::OracleMatch> out;
  for (const MatchBinding& m : ms) out.insert({m.bindings, m.anchor});
  return out;
}

TEST(Matcher, SuchAsSentenceMatchesFirstPattern) {
  ParsedSentence s = testing::load_single("hibiscus.conllu");
  auto subs = builtin_patterns(Operation::kSubstitution);
  auto ms = match_sentence(subs[0], s);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms[0].at(0), 5u);
  EXPECT_EQ(ms[0].at(1), 9u);
  EXPECT_EQ(ms[0].at(2), 11u);
  EXPECT_EQ(ms[0].anchor, 11u);
  EXPECT_EQ(ms[0].pattern_id, "sub1");
  EXPECT_EQ(ms[0].sentence, s.ref());
  EXPECT_THROW(ms[0].at(7), std::out_of_range);
  for (std::size_t i = 1; i < subs.size(); ++i) EXPECT_TRUE(match_sentence(subs[i], s).empty());
}

TEST(Matcher, RootArcRequiresHeadZeroOnly) {
  std::vector<Token> t = {{1, "dogs", "dog", "NNS", 2, "nsubj"},
                          {2, "bark", "bark", "VBP", 0, "root"}};
  ParsedSentence s("d", 0, t);
  EXPECT_EQ(match_sentence(parse_pattern("ROOT:VBP"), s).size(), 1u);
  EXPECT_TRUE(match_sentence(parse_pattern("ROOT:NNS"), s).empty());
  EXPECT_TRUE(match_sentence(parse_pattern("root:VBP"), s).size() == 1u);
}

TEST(Matcher, ResultsAreDedupedAndSortedByCaptureMap) {
  // Two dependents with the same label: an uncaptured child may bind to
  // either, but only one result per capture map survives.
  std::vector<Token> t = {{1, "a", "a", "JJ", 3, "amod"},
                          {2, "b", "b", "JJ", 3, "amod"},
                          {3, "x", "x", "NN", 0, "ROOT"}};
  ParsedSentence s("d", 0, t);
  EXPECT_EQ(match_sentence(parse_pattern("NN$0 < amod:JJ"), s).size(), 1u);
  auto ms = match_sentence(parse_pattern("NN < amod:JJ$1"), s);
  ASSERT_EQ(ms.size(), 2u);
  EXPECT_LT(ms[0].bindings, ms[1].bindings);
  // Sibling nodes never share a token.
  EXPECT_EQ(match_sentence(parse_pattern("[amod:JJ$1 > NN < amod:JJ$2]"), s).size(), 2u);
}

TEST(Matcher, AgreesWithBruteForceOracleOnRandomInputs) {
  std::mt19937_64 rng(2024);
  std::size_t nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    ParsedSentence tree = testing::random_tree(rng, 5, 20, static_cast<std::uint64_t>(i));
    for (int j = 0; j < 20; ++j) {
      DepPattern p = testing::random_pattern(rng, "r", 4);
      ParsedSentence s = tree;
      if (j % 2 == 0) testing::plant(rng, p, s);
      auto expected = testing::oracle_matches(p, s);
      auto got = match_sentence(p, s);
      ASSERT_EQ(as_set(got), expected) << format_pattern(p.root) << "\n" << s.text();
      ASSERT_EQ(got.size(), expected.size());
      nonempty += !expected.empty();
    }
  }
  EXPECT_GT(nonempty, 1000u);
}

TEST(Matcher, PlantedBuiltinsAreFound) {
  std::mt19937_64 rng(9);
  for (Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
    for (const DepPattern& p : builtin_patterns(op)) {
      int planted = 0;
      for (int i = 0; i < 400; ++i) {
        ParsedSentence s = testing::random_tree(rng, 6, 16, static_cast<std::uint64_t>(i));
        if (!testing::plant(rng, p, s)) continue;
        ++planted;
        auto got = match_sentence(p, s);
        ASSERT_FALSE(got.empty()) << p.id;
        ASSERT_EQ(as_set(got), testing::oracle_matches(p, s)) << p.id;
      }
      EXPECT_GT(planted, 10) << p.id;
    }
  }
}

}  // namespace
}  // namespace depforge
