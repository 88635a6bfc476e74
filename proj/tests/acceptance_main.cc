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
// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any
// failure.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "depforge/chain_index.h"
#include "depforge/pipeline.h"
#include "depforge/search.h"
#include "depforge/synth.h"
#include "json.hpp"
#include "test_support.h"

namespace depforge::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(precision);
  o << v;
  return o.str();
}

const std::vector<std::string> kFixtureCorpus = {"synth400.conllu", "hibiscus.conllu", "substitution.conllu",
                                                 "contraposition.conllu"};

struct Golden {
  std::string file;
  std::size_t sentence;
  std::vector<std::string> premises;  // empty: not checked
  std::string conclusion;
};

Outcome check_golden(const Golden& g) {
  const Corpus corpus = parse_conllu_file((testing::data_dir() / g.file).string());
  const auto examples = testing::expand_all(corpus.sentences.at(g.sentence));
  if (examples.size() != 1) {
    return {false, g.file + ": expected one example, got " + std::to_string(examples.size())};
  }
  const DeductionExample& e = examples[0];
  if (!g.premises.empty() && e.premises != g.premises) {
    return {false, g.file + ": premises differ: " + json(e.premises).dump()};
  }
  if (e.conclusion != g.conclusion) return {false, g.file + ": got \"" + e.conclusion + "\""};
  return {true, ""};
}

Outcome hibiscus_golden() {
  const auto start = Clock::now();
  Outcome o = check_golden({"hibiscus.conllu",
                            0,
                            {"In Egypt, herbal teas are very popular.",
                             "Hibiscus tea is a herbal tea."},
                            "In Egypt, Hibiscus tea is very popular."});
  const double t = seconds_since(start);
  if (o.pass && t >= 1.0) o = {false, "took " + fmt(t) + " s"};
  if (o.pass) o.detail = fmt(t * 1000, 1) + " ms";
  return o;
}

Outcome published_goldens() {
  const std::vector<Golden> goldens = {
      {"substitution.conllu", 0, {}, "Staphylococcus epidermis colonizes the skin surface."},
      {"substitution.conllu", 1, {}, "During the undergraduate years, seminarians learn Latin."},
      {"contraposition.conllu",
       0,
       {},
       "As such, rivers that do not provide water for irrigation in the surrounding lands do "
       "not have headwaters in the mountains."},
      {"contraposition.conllu",
       1,
       {},
       "Dogs that are able to participate in contests are not especially dirty or hungry."},
  };
  for (const Golden& g : goldens) {
    Outcome o = check_golden(g);
    if (!o.pass) return o;
  }
  return {true, "4/4 conclusions exact"};
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::vector<DepPattern> patterns;
  for (Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
    for (DepPattern& p : builtin_patterns(op)) patterns.push_back(std::move(p));
  }
  for (int i = 0; i < 200; ++i) {
    patterns.push_back(testing::random_pattern(rng, "rand" + std::to_string(i)));
  }
  // Every third tree carries a planted instance so that matches are common.
  Corpus corpus;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    ParsedSentence s = testing::random_tree(rng, 5, 20, i);
    if (i % 3 == 0) testing::plant(rng, patterns[rng() % patterns.size()], s);
    corpus.sentences.push_back(std::move(s));
  }
  testing::TempDir dir;
  IndexOptions opts;
  opts.chunk_size = 256;
  build_index(corpus, dir.path(), opts);
  const DepIndex index = DepIndex::open(dir.path());

  std::size_t discrepancies = 0;
  std::size_t total = 0;
  for (const DepPattern& p : patterns) {
    std::set<std::pair<SentenceRef, testing::OracleMatch>> got;
    for (const SearchHit& h : search(index, p)) {
      got.insert({h.match.sentence, {h.match.bindings, h.match.anchor}});
    }
    std::set<std::pair<SentenceRef, testing::OracleMatch>> want;
    for (const ParsedSentence& s : corpus.sentences) {
      for (const auto& m : testing::oracle_matches(p, s)) want.insert({s.ref(), m});
    }
    total += want.size();
    if (got != want) ++discrepancies;
  }
  const double t = seconds_since(start);
  const bool pass = discrepancies == 0 && t < 120.0;
  return {pass, std::to_string(patterns.size()) + " patterns, " + std::to_string(total) +
                    " matches, " + std::to_string(discrepancies) + " discrepant patterns, " +
                    fmt(t, 1) + " s"};
}

double median_seconds(const std::function<std::size_t()>& fn, int reps, std::size_t& result) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    result = fn();
    times.push_back(seconds_since(start));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

Outcome index_speedup() {
  constexpr std::uint64_t kSentences = 1000000;
  testing::TempDir dir;
  SynthOptions so;
  so.seed = 1;
  so.distractor_rate = 0.95;
  const auto build_start = Clock::now();
  {
    IndexBuilder builder(dir.path(), {});
    for (std::uint64_t i = 0; i < kSentences; ++i) builder.add(synth_sentence(so, i));
    builder.finish();
  }
  const double build = seconds_since(build_start);
  const DepIndex index = DepIndex::open(dir.path());
  // sub3: lemma-constrained "include" modifier.
  const DepPattern pattern = builtin_patterns(Operation::kSubstitution).at(2);
  std::size_t indexed_hits = 0;
  std::size_t scan_hits = 0;
  const double indexed =
      median_seconds([&] { return search(index, pattern).size(); }, 5, indexed_hits);
  const double scan = median_seconds([&] { return full_scan(index, pattern).size(); }, 3, scan_hits);
  const double speedup = scan / std::max(indexed, 1e-9);
  const bool pass = indexed_hits == scan_hits && indexed_hits > 0 && speedup >= 10.0;
  return {pass, std::to_string(kSentences) + " sentences, " + std::to_string(indexed_hits) +
                    " hits, indexed " + fmt(indexed * 1000, 1) + " ms vs scan " +
                    fmt(scan * 1000, 1) + " ms = " + fmt(speedup, 1) + "x (build " +
                    fmt(build, 1) + " s)"};
}

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = testing::read_file(e.path());
  }
  return out;
}

Outcome index_determinism() {
  SynthOptions so;
  so.seed = 9;
  const Corpus corpus = synth_corpus(so, 50000);
  testing::TempDir a, b;
  IndexOptions opts;
  opts.chunk_size = 8000;
  build_index(corpus, a.path(), opts);
  opts.workers = 4;
  build_index(corpus, b.path(), opts);
  const auto left = dir_bytes(a.path());
  const bool pass = left == dir_bytes(b.path()) && left.size() == 8;
  return {pass, std::to_string(left.size() - 1) + " chunks + manifest identical"};
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

std::vector<std::string> fixture_args() {
  std::vector<std::string> args;
  for (const std::string& f : kFixtureCorpus) {
    args.push_back("--corpus");
    args.push_back((testing::data_dir() / f).string());
  }
  return args;
}

Outcome pipeline_determinism() {
  testing::TempDir a, b;
  for (const fs::path& work : {a.path(), b.path()}) {
    std::vector<std::string> args = {"-q", "--seed", "42", "run", "--provider", "mock",
                                     "--work-dir", work.string()};
    const auto corpus = fixture_args();
    args.insert(args.end(), corpus.begin(), corpus.end());
    if (cli(args) != 0) return {false, "run failed"};
  }
  for (const char* f : {"train.jsonl", "stats.json"}) {
    if (testing::read_file(a / f) != testing::read_file(b / f)) {
      return {false, std::string(f) + " differs"};
    }
  }
  const std::string train = testing::read_file(a / "train.jsonl");
  const auto lines = std::count(train.begin(), train.end(), '\n');
  return {true, "train.jsonl (" + std::to_string(lines) + " records) and stats.json identical"};
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  std::vector<json> out;
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

Outcome augmentation_cardinality() {
  testing::TempDir dir;
  std::vector<std::string> args = {"-q", "--seed", "42", "run", "--provider", "mock",
                                   "--paraphrases", "2", "--work-dir", dir.path().string()};
  const auto corpus = fixture_args();
  args.insert(args.end(), corpus.begin(), corpus.end());
  if (cli(args) != 0) return {false, "run failed"};
  const auto examples = read_jsonl(dir / "examples.jsonl");
  const auto records = read_jsonl(dir / "train.jsonl");
  std::map<std::string, std::string> target_of;
  for (const json& r : records) {
    if (!r["meta"].contains("paraphrase_of")) target_of[r["meta"]["id"]] = r["target"];
  }
  std::size_t copies = 0;
  for (const json& r : records) {
    if (!r["meta"].contains("paraphrase_of")) continue;
    ++copies;
    const auto it = target_of.find(r["meta"]["paraphrase_of"].get<std::string>());
    if (it == target_of.end() || it->second != r["target"]) {
      return {false, "copy " + r["meta"]["id"].get<std::string>() + " changed its conclusion"};
    }
  }
  const json stats = json::parse(testing::read_file(dir / "augment_stats.json"));
  const bool pass = !examples.empty() && records.size() == 3 * examples.size() &&
                    copies == 2 * examples.size() && stats["failures"] == 0;
  return {pass, std::to_string(examples.size()) + " examples -> " +
                    std::to_string(records.size()) + " records, conclusions unchanged"};
}

Outcome lexical_conservatism() {
  testing::TempDir dir;
  PipelineConfig config;
  for (const std::string& f : kFixtureCorpus) config.corpus.push_back(testing::data_dir() / f);
  config.work_dir = dir.path();
  stage_index(config, {});
  stage_search(config, {});
  const ExpandResult result = stage_expand(config, {});
  const DepIndex index = DepIndex::open(config.index_path());
  std::size_t sentences = 0;
  for (const DeductionExample& e : result.examples) {
    const ParsedSentence source = index.sentence(e.provenance.chunk_id, e.provenance.ordinal);
    std::vector<std::string> texts = e.premises;
    texts.push_back(e.conclusion);
    for (const std::string& text : texts) {
      ++sentences;
      const auto bad = testing::lexicon_violations(text, source);
      if (!bad.empty()) return {false, "\"" + text + "\" introduces \"" + bad.front() + "\""};
    }
  }
  return {!result.examples.empty(), std::to_string(sentences) + " generated sentences from " +
                                        std::to_string(result.examples.size()) +
                                        " examples, 0 violations"};
}

}  // namespace
}  // namespace depforge::acceptance

int main() {
  using namespace depforge::acceptance;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden-hibiscus", hibiscus_golden},
      {"golden-published-examples", published_goldens},
      {"oracle-equivalence", oracle_equivalence},
      {"index-speedup", index_speedup},
      {"index-determinism", index_determinism},
      {"pipeline-determinism", pipeline_determinism},
      {"augmentation-cardinality", augmentation_cardinality},
      {"lexical-conservatism", lexical_conservatism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << (o.detail.empty() ? "" : "  " + o.detail)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
