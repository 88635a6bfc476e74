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
#include "depforge/pipeline.h"

#include <gtest/gtest.h>

#include <fstream>

#include "depforge/errors.h"
#include "json.hpp"
#include "test_support.h"

namespace depforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineConfig fixture_config(const fs::path& work) {
  PipelineConfig c;
  c.corpus = {testing::data_dir() / "synth400.conllu", testing::data_dir() / "hibiscus.conllu",
              testing::data_dir() / "substitution.conllu", testing::data_dir() / "contraposition.conllu"};
  c.work_dir = work;
  c.seed = 42;
  c.chunk_size = 150;
  return c;
}

std::map<std::string, std::string> tree_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), dir).string()] = testing::read_file(e.path());
    }
  }
  return out;
}

TEST(PipelineConfig, ParsesFileWithRelativePathsAndQuotes) {
  testing::TempDir dir;
  fs::create_directories(dir / "sub");
  testing::write_file(dir / "sub" / "p.conf",
                      "# comment\n"
                      "corpus = a.conllu, /abs/b.conllu\n"
                      "work_dir = out\n"
                      "patterns = substitution:mine.pat, contra.pat\n"
                      "operation = contraposition\n"
                      "provider = identity\n"
                      "paraphrases = 3\n"
                      "top_p = 0.5\n"
                      "seed = 9\n"
                      "workers = 2\n"
                      "separator = \" || \"\n"
                      "dev_fraction = 0.1\n"
                      "max_depth = 4\n");
  PipelineConfig c = PipelineConfig::load(dir / "sub" / "p.conf");
  ASSERT_EQ(c.corpus.size(), 2u);
  EXPECT_EQ(c.corpus[0], dir / "sub" / "a.conllu");
  EXPECT_EQ(c.corpus[1], fs::path("/abs/b.conllu"));
  EXPECT_EQ(c.work_dir, dir / "sub" / "out");
  EXPECT_EQ(c.patterns[0], "substitution:" + (dir / "sub" / "mine.pat").string());
  EXPECT_EQ(c.patterns[1], (dir / "sub" / "contra.pat").string());
  EXPECT_EQ(c.operation, OperationSelection::kContraposition);
  EXPECT_EQ(c.provider, "identity");
  EXPECT_EQ(c.paraphrases, 3);
  EXPECT_DOUBLE_EQ(c.top_p, 0.5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_EQ(c.separator, " || ");
  EXPECT_EQ(c.max_depth, 4u);
  EXPECT_EQ(c.index_path(), dir / "sub" / "out" / "index");
  EXPECT_EQ(c.work_file("train.jsonl"), dir / "sub" / "out" / "train.jsonl");
}

TEST(PipelineConfig, RejectsBadKeysAndValues) {
  PipelineConfig c;
  EXPECT_THROW(c.set("colour", "blue"), UsageError);
  EXPECT_THROW(c.set("top_p", "1.5"), UsageError);
  EXPECT_THROW(c.set("top_p", "abc"), UsageError);
  EXPECT_THROW(c.set("paraphrases", "-1"), UsageError);
  EXPECT_THROW(c.set("workers", "0"), UsageError);
  EXPECT_THROW(c.set("dev_fraction", "1"), UsageError);
  EXPECT_THROW(c.set("operation", "swap"), UsageError);
  EXPECT_THROW(c.set("seed", "x1"), UsageError);
  EXPECT_THROW(c.require_seed("emit"), UsageError);
  testing::TempDir dir;
  testing::write_file(dir / "bad.conf", "seed 4\n");
  try {
    PipelineConfig::load(dir / "bad.conf");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.conf:1"), std::string::npos);
  }
  EXPECT_THROW(PipelineConfig::load(dir / "missing.conf"), UsageError);
}

TEST(PipelineConfig, ShippedConfigLoads) {
  PipelineConfig c = PipelineConfig::load(testing::source_dir() / "configs" / "pipeline.conf");
  EXPECT_EQ(c.paraphrases, 2);
  EXPECT_DOUBLE_EQ(c.top_p, 0.9);
  EXPECT_FALSE(c.patterns.empty());
  for (const OpPattern& p : resolve_patterns(c)) EXPECT_FALSE(p.pattern.id.empty());
  EXPECT_EQ(resolve_stoplist(c).lemmas(), ModifierStoplist::defaults().lemmas());
}

TEST(Pipeline, ResolvePatterns) {
  PipelineConfig c;
  EXPECT_EQ(resolve_patterns(c).size(), 8u);
  c.operation = OperationSelection::kSubstitution;
  EXPECT_EQ(resolve_patterns(c).size(), 6u);
  c.operation = OperationSelection::kBoth;
  const fs::path pats = testing::source_dir() / "patterns";
  c.patterns = {(pats / "contraposition.pat").string()};
  auto only = resolve_patterns(c);
  ASSERT_EQ(only.size(), 2u);
  EXPECT_EQ(only[0].op, Operation::kContraposition);
  c.patterns.push_back((pats / "contraposition.pat").string());
  EXPECT_THROW(resolve_patterns(c), UsageError);
  testing::TempDir dir;
  testing::write_file(dir / "mine.pat", "NNS$0 < prep:IN`like' < pobj:$1\n");
  c.patterns = {(dir / "mine.pat").string()};
  EXPECT_THROW(resolve_patterns(c), UsageError);
  c.patterns = {"substitution:" + (dir / "mine.pat").string()};
  auto custom = resolve_patterns(c);
  ASSERT_EQ(custom.size(), 1u);
  EXPECT_EQ(custom[0].pattern.id, "mine-1");
  c.patterns = {"substitution:" + (dir / "nope.pat").string()};
  EXPECT_THROW(resolve_patterns(c), UsageError);
}

TEST(Pipeline, StagesComposeToTheSameBytesAsRun) {
  testing::TempDir a, b;
  PipelineConfig whole = fixture_config(a.path());
  run_pipeline(whole, {});
  PipelineConfig staged = fixture_config(b.path());
  stage_index(staged, {});
  stage_search(staged, {});
  stage_expand(staged, {});
  stage_augment(staged, {});
  stage_emit(staged, {});
  auto left = tree_bytes(a.path());
  EXPECT_EQ(left, tree_bytes(b.path()));
  EXPECT_TRUE(left.contains("train.jsonl"));
  EXPECT_TRUE(left.contains("stats.json"));
  EXPECT_TRUE(left.contains("index/manifest.json"));
  EXPECT_FALSE(left.contains("dev.jsonl"));
}

TEST(Pipeline, RunIsDeterministicAcrossWorkerCounts) {
  testing::TempDir a, b;
  PipelineConfig one = fixture_config(a.path());
  run_pipeline(one, {});
  PipelineConfig many = fixture_config(b.path());
  many.workers = 3;
  run_pipeline(many, {});
  EXPECT_EQ(tree_bytes(a.path()), tree_bytes(b.path()));
}

TEST(Pipeline, FixtureCorpusStatsMatchGolden) {
  testing::TempDir dir;
  PipelineConfig c = fixture_config(dir.path());
  c.corpus.resize(1);
  run_pipeline(c, {});
  const json got = json::parse(testing::read_file(dir / "stats.json"));
  const json want = json::parse(testing::read_file(testing::data_dir() / "synth400_stats.json"));
  EXPECT_EQ(got, want) << got.dump(2);
}

TEST(Pipeline, DevSplitAndPassThroughProvider) {
  testing::TempDir dir;
  PipelineConfig c = fixture_config(dir.path());
  c.provider = "none";
  c.dev_fraction = 0.25;
  DatasetStats s = run_pipeline(c, {});
  EXPECT_EQ(s.paraphrased, 0u);
  EXPECT_EQ(s.records, s.originals);
  EXPECT_GT(s.dev_records, 0u);
  EXPECT_EQ(s.dev_records + s.train_records, s.records);
  EXPECT_TRUE(fs::exists(dir / "dev.jsonl"));
  // Turning the split off again removes the stale dev file.
  c.dev_fraction = 0;
  stage_emit(c, {});
  EXPECT_FALSE(fs::exists(dir / "dev.jsonl"));
}

TEST(Pipeline, StagesExplainMissingInputs) {
  testing::TempDir dir;
  PipelineConfig c = fixture_config(dir.path());
  try {
    stage_search(c, {});
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("depforge index"), std::string::npos);
  }
  stage_index(c, {});
  EXPECT_THROW(stage_expand(c, {}), UsageError);
  c.seed.reset();
  EXPECT_THROW(run_pipeline(c, {}), UsageError);
}

TEST(Pipeline, TamperedMatchesAreDataErrors) {
  testing::TempDir dir;
  PipelineConfig c = fixture_config(dir.path());
  stage_index(c, {});
  stage_search(c, {});
  std::string matches = testing::read_file(dir / "matches.jsonl");
  testing::write_file(dir / "matches.jsonl", matches + "{not json\n");
  EXPECT_THROW(stage_expand(c, {}), DataError);
}

TEST(Pipeline, IndexStageRefusesChangedCorpusUnlessForced) {
  testing::TempDir dir;
  PipelineConfig c = fixture_config(dir.path());
  stage_index(c, {});
  c.corpus.pop_back();
  EXPECT_THROW(stage_index(c, {}), IndexError);
  IndexStageOptions force;
  force.force = true;
  EXPECT_EQ(stage_index(c, {}, force).sentence_count, 403u);
}

}  // namespace
}  // namespace depforge
