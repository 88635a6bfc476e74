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
#include "depforge/morphology.h"

#include <gtest/gtest.h>

namespace depforge {
namespace {

TEST(Morphology, ReinflectsPresentTenseVerbs) {
  EXPECT_EQ(reinflect_verb("colonize", VerbTarget::kSingular3rd), "colonizes");
  EXPECT_EQ(reinflect_verb("colonizes", VerbTarget::kPlural), "colonize");
  EXPECT_EQ(reinflect_verb("carry", VerbTarget::kSingular3rd), "carries");
  EXPECT_EQ(reinflect_verb("carries", VerbTarget::kBase), "carry");
  EXPECT_EQ(reinflect_verb("watch", VerbTarget::kSingular3rd), "watches");
  EXPECT_EQ(reinflect_verb("go", VerbTarget::kSingular3rd), "goes");
  EXPECT_EQ(reinflect_verb("play", VerbTarget::kSingular3rd), "plays");
  EXPECT_EQ(reinflect_verb("are", VerbTarget::kSingular3rd), "is");
  EXPECT_EQ(reinflect_verb("is", VerbTarget::kPlural), "are");
  EXPECT_EQ(reinflect_verb("have", VerbTarget::kSingular3rd), "has");
  EXPECT_EQ(reinflect_verb("has", VerbTarget::kBase), "have");
  EXPECT_EQ(reinflect_verb("need", VerbTarget::kSingular3rd), "needs");
  EXPECT_EQ(reinflect_verb("feed", VerbTarget::kSingular3rd), "feeds");
}

TEST(Morphology, LeavesUncoveredFormsAlone) {
  for (const char* w : {"learned", "swimming", "can", "must", "went"}) {
    EXPECT_EQ(reinflect_verb(w, VerbTarget::kSingular3rd), w);
  }
}

TEST(Morphology, NounNumber) {
  EXPECT_EQ(singularize_noun("teas"), "tea");
  EXPECT_EQ(singularize_noun("microorganisms"), "microorganism");
  EXPECT_EQ(singularize_noun("cities"), "city");
  EXPECT_EQ(singularize_noun("boxes"), "box");
  EXPECT_EQ(singularize_noun("children"), "child");
  EXPECT_EQ(pluralize_noun("city"), "cities");
  EXPECT_EQ(pluralize_noun("box"), "boxes");
  EXPECT_EQ(pluralize_noun("tea"), "teas");
  EXPECT_EQ(pluralize_noun("day"), "days");
  for (const char* w : {"river", "bird", "language", "church", "policy"}) {
    EXPECT_EQ(singularize_noun(pluralize_noun(w)), w);
  }
}

TEST(Morphology, Articles) {
  EXPECT_EQ(indefinite_article("ancient"), "an");
  EXPECT_EQ(indefinite_article("herbal"), "a");
  EXPECT_EQ(indefinite_article("Egyptian"), "an");
  EXPECT_TRUE(is_determiner("the"));
  EXPECT_FALSE(is_determiner("teas"));
}

TEST(Morphology, AdjustNounNumber) {
  EXPECT_EQ(adjust_noun_number("herbal teas", NounNumber::kSingular), "a herbal tea");
  EXPECT_EQ(adjust_noun_number("ancient language courses", NounNumber::kSingular),
            "an ancient language course");
  EXPECT_EQ(adjust_noun_number("the rivers", NounNumber::kSingular), "the river");
  EXPECT_EQ(adjust_noun_number("a river", NounNumber::kPlural), "rivers");
}

}  // namespace
}  // namespace depforge
