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
#include "depforge/pattern.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "depforge/errors.h"
#include "test_support.h"

namespace depforge {
namespace {

TEST(Pattern, ParsesChainWithBracketedOperands) {
  DepPattern p = parse_pattern("[nsubj:NNS$0 < prep:IN`like' < pobj:$1]> ROOT:VBP$2", "x");
  const PatternNode& root = p.root;
  EXPECT_EQ(root.arc, "ROOT");
  EXPECT_EQ(root.pos, "VBP");
  EXPECT_EQ(root.capture, 2);
  ASSERT_EQ(root.children.size(), 1u);
  const PatternNode& subj = root.children[0];
  EXPECT_EQ(subj.arc, "nsubj");
  ASSERT_EQ(subj.children.size(), 1u);
  EXPECT_EQ(subj.children[0].lemma, "like");
  EXPECT_EQ(subj.children[0].children[0].capture, 1);
  EXPECT_FALSE(subj.children[0].children[0].pos.has_value());
  EXPECT_EQ(captures(root), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(node_count(root), 4u);
}

TEST(Pattern, DirectionOfArrowsSelectsHead) {
  // "A > B": A depends on B. "A < B": B depends on A.
  EXPECT_EQ(parse_pattern("amod:JJ > NN").root.pos, "NN");
  EXPECT_EQ(parse_pattern("amod:JJ < NN").root.pos, "JJ");
  // A single head can take dependents on both sides.
  DepPattern p = parse_pattern("[det:DT > NN < amod:JJ]");
  EXPECT_EQ(p.root.children.size(), 2u);
}

TEST(Pattern, AcceptsTypographicQuotesAndLowercasesLemmas) {
  DepPattern p = parse_pattern("prep:IN\xE2\x80\x98Such\xE2\x80\x99");
  EXPECT_EQ(p.root.lemma, "such");
  EXPECT_EQ(parse_pattern("`as'").root.lemma, "as");
}

TEST(Pattern, BuiltinsAreShippedPatternFiles) {
  for (const Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
    const std::string file = op == Operation::kSubstitution ? "substitution.pat"
                                                           : "contraposition.pat";
    auto shipped = load_pattern_file(testing::source_dir() / "patterns" / file);
    auto builtin = builtin_patterns(op);
    ASSERT_EQ(shipped.size(), builtin.size());
    for (std::size_t i = 0; i < shipped.size(); ++i) {
      EXPECT_EQ(shipped[i].id, builtin[i].id);
      EXPECT_EQ(shipped[i].root, builtin[i].root);
    }
  }
  EXPECT_EQ(builtin_patterns(Operation::kSubstitution).size(), 6u);
  EXPECT_EQ(builtin_patterns(Operation::kContraposition).size(), 2u);
}

TEST(Pattern, FormatRoundTripsRandomPatterns) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    DepPattern p = testing::random_pattern(rng, "r", 6);
    DepPattern again = parse_pattern(format_pattern(p.root));
    ASSERT_EQ(again.root, p.root) << format_pattern(p.root);
  }
  for (Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
    for (const DepPattern& p : builtin_patterns(op)) {
      EXPECT_EQ(parse_pattern(format_pattern(p.root)).root, p.root);
    }
  }
}

struct BadPattern {
  const char* text;
  std::size_t offset;
  const char* reason;
};

TEST(Pattern, SyntaxErrorsCarryOffsetAndReason) {
  const BadPattern cases[] = {
      {"", 0, "empty pattern"},
      {"[]", 1, "empty brackets"},
      {"[NN < JJ", 8, "missing ']'"},
      {"NN JJ", 3, "expected '<' or '>'"},
      {"NN$1 < JJ$1", 9, "duplicate capture $1"},
      {"NN < `as", 8, "unterminated lemma quote"},
      {":NN", 0, "empty arc label"},
      {"NN ]", 3, "unexpected ']'"},
  };
  for (const BadPattern& c : cases) {
    try {
      parse_pattern(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const PatternSyntaxError& e) {
      EXPECT_EQ(e.offset(), c.offset) << c.text;
      EXPECT_EQ(e.reason(), c.reason) << c.text;
    }
  }
}

TEST(Pattern, NodeWithTwoHeadsIsRejected) {
  EXPECT_THROW(parse_pattern("NN > VB < JJ > [NN < DT]"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("A > B < C > D"), PatternSyntaxError);
}

TEST(Pattern, StreamAssignsNamesAndReportsLines) {
  std::istringstream in("# comment\n\nfirst: NN$0 < amod:JJ\nROOT:VBP\n");
  auto ps = parse_pattern_stream(in, "mine");
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].id, "first");
  EXPECT_EQ(ps[1].id, "mine-2");
  EXPECT_EQ(ps[1].root.arc, "ROOT");

  std::istringstream bad("NN\n\nNN <\n");
  try {
    parse_pattern_stream(bad, "bad");
    FAIL();
  } catch (const PatternSyntaxError& e) {
    EXPECT_NE(e.reason().find("bad line 3"), std::string::npos);
  }
  // A name prefix is a pattern file feature only.
  EXPECT_THROW(parse_pattern("first: NN"), PatternSyntaxError);
}

TEST(Pattern, OperationNames) {
  EXPECT_EQ(parse_operation("substitution"), Operation::kSubstitution);
  EXPECT_EQ(parse_operation(operation_name(Operation::kContraposition)),
            Operation::kContraposition);
  EXPECT_FALSE(parse_operation("swap").has_value());
}

}  // namespace
}  // namespace depforge
