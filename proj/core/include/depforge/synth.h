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
// Deterministic generator of dependency-parsed English sentences in the
// Penn/ClearNLP label style. It produces instances of every shipped source
// pattern (substitution and contraposition shapes) mixed with near-miss
// distractors, and is used for fixtures, property tests and benchmarks.

#ifndef DEPFORGE_SYNTH_H_
#define DEPFORGE_SYNTH_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "depforge/conllu.h"

namespace depforge {

enum class SynthKind {
  kSubjectSuchAs,
  kSubjectLike,
  kSubjectIncluding,
  kObjectSuchAs,
  kObjectLike,
  kObjectIncluding,
  kRelativeClause,
  kWithPhrase,
  kStoplistModifier,
  kPronounHyponym,
  kPastTense,
  kSingularHead,
  kPlain,
};

inline constexpr int kSynthKindCount = 13;

std::string_view synth_kind_name(SynthKind kind);

struct SynthOptions {
  std::uint64_t seed = 1;
  std::string doc_prefix = "synth";
  std::size_t doc_size = 1000;  // sentences per document
  // Share of sentences drawn from the distractor kinds.
  double distractor_rate = 0.6;
};

// Sentence number index of the stream; independent of every other index.
ParsedSentence synth_sentence(const SynthOptions& options, std::uint64_t index);
SynthKind synth_kind(const SynthOptions& options, std::uint64_t index);

void write_synth_corpus(std::ostream& out, const SynthOptions& options,
                        std::uint64_t count);
Corpus synth_corpus(const SynthOptions& options, std::uint64_t count);

}  // namespace depforge

#endif  // DEPFORGE_SYNTH_H_
