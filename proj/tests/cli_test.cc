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
#include "cli.h"

#include <gtest/gtest.h>

#include <sstream>

#include "depforge/synth.h"
#include "depforge/version.h"
#include "json.hpp"
#include "test_support.h"

namespace depforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (testing::data_dir() / name).string(); }

std::map<std::string, std::string> tree_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = testing::read_file(e.path());
  }
  return out;
}

TEST(Cli, VersionAndHelp) {
  Result r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string("depforge ") + DEPFORGE_VERSION_STRING + " (index format 1)\n");
  r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("synth"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"index", "--no-such-flag"}).code, 1);
  Result r = run({"--json-errors", "search", "--work-dir", "/nonexistent/work"});
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.err);
  EXPECT_EQ(j["error"], "usage");
  EXPECT_EQ(j["exit_code"], 1);
  EXPECT_NE(j["message"].get<std::string>().find("depforge index"), std::string::npos);
}

TEST(Cli, DataErrorsExitTwo) {
  testing::TempDir dir;
  Result r = run({"index", "--work-dir", dir.path().string(), "--corpus", data("malformed.conllu")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("malformed.conllu:7"), std::string::npos);
  ASSERT_EQ(run({"-q", "index", "--work-dir", dir.path().string(), "--corpus", data("hibiscus.conllu")}).code, 0);
  r = run({"--json-errors", "search", "--work-dir", dir.path().string(), "--pattern", "NN <"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "data");
}

TEST(Cli, SeedIsRequiredForRandomStages) {
  testing::TempDir dir;
  Result r = run({"run", "--work-dir", dir.path().string(), "--corpus", data("hibiscus.conllu")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST(Cli, SearchPrintsMatches) {
  testing::TempDir dir;
  const std::string work = dir.path().string();
  ASSERT_EQ(run({"-q", "index", "--work-dir", work, "--corpus", data("hibiscus.conllu"),
                 "--corpus", data("substitution.conllu")}).code, 0);
  Result human = run({"-q", "search", "--work-dir", work, "--color", "never"});
  EXPECT_EQ(human.code, 0);
  EXPECT_NE(human.out.find("hibiscus#0  sub1 (substitution)"), std::string::npos) << human.out;
  EXPECT_NE(human.out.find("$1 = Hibiscus tea"), std::string::npos);
  EXPECT_NE(human.out.find("3 match(es)"), std::string::npos);
  EXPECT_EQ(human.out.find("\x1b["), std::string::npos);

  Result jsonl = run({"-q", "search", "--work-dir", work, "--format", "jsonl",
                      "--pattern", "nsubj:NNS$0 < prep:IN < pobj:$1"});
  EXPECT_EQ(jsonl.code, 0);
  std::istringstream lines(jsonl.out);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) EXPECT_TRUE(json::parse(line).is_object());
  EXPECT_EQ(count, 2);

  Result colored = run({"-q", "search", "--work-dir", work, "--color", "always", "--limit", "1"});
  EXPECT_NE(colored.out.find("\x1b["), std::string::npos);
  EXPECT_NE(colored.out.find("1 shown"), std::string::npos);
}

TEST(Cli, StagesComposeToTheSameBytesAsRun) {
  testing::TempDir a, b;
  const std::vector<std::string> corpus = {"--corpus", data("synth400.conllu"), "--corpus",
                                           data("contraposition.conllu")};
  std::vector<std::string> whole = {"-q", "--seed", "42", "run", "--work-dir", a.path().string()};
  whole.insert(whole.end(), corpus.begin(), corpus.end());
  ASSERT_EQ(run(whole).code, 0);

  const std::string work = b.path().string();
  std::vector<std::string> index = {"-q", "index", "--work-dir", work};
  index.insert(index.end(), corpus.begin(), corpus.end());
  ASSERT_EQ(run(index).code, 0);
  ASSERT_EQ(run({"-q", "search", "--work-dir", work}).code, 0);
  ASSERT_EQ(run({"-q", "expand", "--work-dir", work}).code, 0);
  ASSERT_EQ(run({"-q", "--seed", "42", "augment", "--work-dir", work}).code, 0);
  ASSERT_EQ(run({"-q", "--seed", "42", "emit", "--work-dir", work}).code, 0);
  EXPECT_EQ(tree_bytes(a.path()), tree_bytes(b.path()));
}

TEST(Cli, ConfigFileAndOverrides) {
  testing::TempDir dir;
  testing::write_file(dir / "p.conf", "corpus = " + data("hibiscus.conllu") +
                                          "\nwork_dir = w\nseed = 1\nparaphrases = 3\n");
  Result r = run({"--config", (dir / "p.conf").string(), "run", "--paraphrases", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json stats = json::parse(testing::read_file(dir / "w" / "stats.json"));
  EXPECT_EQ(stats["records"], 2);
  EXPECT_NE(r.err.find("[depforge]"), std::string::npos);
}

TEST(Cli, SynthWritesTheLibraryCorpus) {
  Result r = run({"--seed", "7", "synth", "--count", "25"});
  ASSERT_EQ(r.code, 0);
  SynthOptions so;
  so.seed = 7;
  std::ostringstream want;
  write_synth_corpus(want, so, 25);
  EXPECT_EQ(r.out, want.str());
  EXPECT_EQ(run({"synth", "--distractor-rate", "2"}).code, 1);
}

}  // namespace
}  // namespace depforge
