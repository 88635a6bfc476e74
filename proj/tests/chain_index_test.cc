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
#include "depforge/chain_index.h"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <random>
#include <set>

#include "depforge/errors.h"
#include "depforge/synth.h"
#include "test_support.h"

namespace depforge {
namespace {

namespace fs = std::filesystem;

// Naive enumeration: every upward path prefix with every subset of lemma
// positions wildcarded.
std::multiset<ChainKey> naive_keys(const ParsedSentence& s, TokenId id, unsigned depth) {
  std::vector<TokenId> path;
  for (TokenId cur = id; cur != 0 && path.size() < depth; cur = s.token(cur).head) {
    path.push_back(cur);
  }
  std::multiset<ChainKey> out;
  for (std::size_t len = 1; len <= path.size(); ++len) {
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      ChainKey k;
      for (std::size_t j = 0; j < len; ++j) {
        const Token& t = s.token(path[j]);
        ChainStep step{t.deprel, t.xpos, t.lemma};
        if (mask & (1u << j)) step.lemma.reset();
        k.steps.push_back(step);
      }
      out.insert(k);
    }
  }
  return out;
}

std::vector<ParsedSentence> random_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<ParsedSentence> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_tree(rng, 1, 14, i));
  return out;
}

Corpus as_corpus(std::vector<ParsedSentence> sentences) {
  Corpus c;
  c.sentences = std::move(sentences);
  return c;
}

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = testing::read_file(e.path());
  }
  return out;
}

TEST(ChainKeys, MatchNaiveEnumeration) {
  for (const auto& s : random_corpus(11, 200)) {
    for (const Token& t : s.tokens()) {
      for (unsigned depth : {1u, 3u, 5u}) {
        auto keys = chain_keys(s, t.id, depth);
        std::multiset<ChainKey> got(keys.begin(), keys.end());
        ASSERT_EQ(got, naive_keys(s, t.id, depth));
      }
    }
  }
}

TEST(ChainKeys, EncodeDecodeRoundTrip) {
  ChainKey k{{{"pobj", "NN", std::nullopt}, {"prep", "IN", "as"}}};
  EXPECT_EQ(ChainKey::decode(k.encode()), k);
  EXPECT_EQ(k.to_string(), "pobj:NN:* <- prep:IN:as");
}

TEST(ChainKeys, DepthOutsideRangeIsUsageError) {
  auto s = random_corpus(1, 1)[0];
  EXPECT_THROW(chain_keys(s, 1, 0), UsageError);
  EXPECT_THROW(chain_keys(s, 1, kMaxIndexDepth + 1), UsageError);
  EXPECT_THROW(chain_keys(s, 99, 2), UsageError);
}

TEST(Index, LookupIsSoundAndComplete) {
  testing::TempDir dir;
  auto sentences = random_corpus(21, 700);
  IndexOptions opts;
  opts.chunk_size = 128;
  opts.max_depth = 3;
  build_index(as_corpus(sentences), dir.path(), opts);
  DepIndex index = DepIndex::open(dir.path());
  ASSERT_EQ(index.chunk_count(), 6u);
  index.verify();

  std::map<ChainKey, std::set<Posting>> expected;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto chunk = static_cast<std::uint32_t>(i / 128);
    const auto ordinal = static_cast<std::uint32_t>(i % 128);
    for (const Token& t : sentences[i].tokens()) {
      for (const ChainKey& k : naive_keys(sentences[i], t.id, 3)) {
        expected[k].insert({chunk, ordinal, t.id});
      }
    }
  }
  std::mt19937_64 rng(3);
  std::size_t checked = 0;
  for (const auto& [key, postings] : expected) {
    if (rng() % 8 != 0) continue;
    auto got = index.lookup(key).collect();
    ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
    ASSERT_EQ(std::set<Posting>(got.begin(), got.end()), postings) << key.to_string();
    ASSERT_EQ(got.size(), postings.size());
    ASSERT_EQ(index.posting_count(key), postings.size());
    ++checked;
  }
  EXPECT_GT(checked, 100u);
  EXPECT_TRUE(index.lookup(ChainKey{{{"nope", "XX", std::nullopt}}}).collect().empty());
  EXPECT_EQ(index.sentence(2, 5), sentences[2 * 128 + 5]);
  EXPECT_EQ(index.sentence_ref(0, 3), sentences[3].ref());
  EXPECT_THROW(index.lookup(ChainKey{std::vector<ChainStep>(4, {"a", "b", std::nullopt})}),
               UsageError);
}

TEST(Index, BuildIsByteDeterministicAcrossWorkerCounts) {
  testing::TempDir a, b;
  auto sentences = random_corpus(8, 900);
  IndexOptions opts;
  opts.chunk_size = 200;
  build_index(as_corpus(sentences), a.path(), opts);
  opts.workers = 3;
  build_index(as_corpus(sentences), b.path(), opts);
  EXPECT_EQ(dir_bytes(a.path()), dir_bytes(b.path()));
}

TEST(Index, RebuildOverDifferentContentIsRejected) {
  testing::TempDir dir;
  build_index(as_corpus(random_corpus(1, 50)), dir.path());
  const auto before = dir_bytes(dir.path());
  // Identical content is accepted.
  EXPECT_NO_THROW(build_index(as_corpus(random_corpus(1, 50)), dir.path()));
  EXPECT_THROW(build_index(as_corpus(random_corpus(2, 50)), dir.path()), IndexError);
  IndexOptions deeper;
  deeper.max_depth = 4;
  EXPECT_THROW(build_index(as_corpus(random_corpus(1, 50)), dir.path(), deeper), IndexError);
  EXPECT_EQ(dir_bytes(dir.path()), before);
}

TEST(Index, VerifyDetectsCorruption) {
  testing::TempDir dir;
  build_index(as_corpus(random_corpus(4, 60)), dir.path());
  const fs::path chunk = dir.path() / chunk_file_name(0);
  std::string bytes = testing::read_file(chunk);
  bytes[bytes.size() - 3] ^= 0x5a;
  testing::write_file(chunk, bytes);
  try {
    DepIndex::open(dir.path()).verify();
    FAIL() << "expected IndexError";
  } catch (const IndexError& e) {
    EXPECT_EQ(e.chunk_id(), 0u);
  }
}

TEST(Index, MissingOrTruncatedFilesAreIndexErrors) {
  testing::TempDir dir;
  EXPECT_THROW(DepIndex::open(dir.path()), IndexError);
  build_index(as_corpus(random_corpus(4, 20)), dir.path());
  testing::write_file(dir.path() / chunk_file_name(0), "DPI");
  EXPECT_THROW(DepIndex::open(dir.path()), IndexError);
}

TEST(Index, ManifestRoundTrips) {
  testing::TempDir dir;
  IndexManifest m = build_index(as_corpus(random_corpus(4, 20)), dir.path());
  EXPECT_EQ(IndexManifest::from_json(m.to_json()).to_json(), m.to_json());
  EXPECT_EQ(m.sentence_count, 20u);
  EXPECT_THROW(IndexManifest::from_json("{"), IndexError);
}

TEST(Index, StreamingBuilderMatchesBatchBuild) {
  testing::TempDir a, b;
  SynthOptions so;
  so.seed = 3;
  std::vector<ParsedSentence> sentences;
  for (std::uint64_t i = 0; i < 300; ++i) sentences.push_back(synth_sentence(so, i));
  build_index(as_corpus(sentences), a.path());
  {
    IndexBuilder builder(b.path(), {});
    for (const auto& s : sentences) builder.add(s);
    builder.finish();
  }
  EXPECT_EQ(dir_bytes(a.path()), dir_bytes(b.path()));
}

}  // namespace
}  // namespace depforge
