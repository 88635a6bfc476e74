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
#include <benchmark/benchmark.h>

#include <filesystem>
#include <unistd.h>

#include "depforge/chain_index.h"
#include "depforge/search.h"
#include "depforge/synth.h"

namespace {

namespace fs = std::filesystem;
using depforge::DepIndex;

fs::path scratch_dir(const std::string& name) {
  return fs::temp_directory_path() /
         ("depforge-bench-" + std::to_string(::getpid()) + "-" + name);
}

depforge::Corpus corpus_of(std::int64_t size) {
  depforge::SynthOptions so;
  so.seed = 1;
  so.distractor_rate = 0.9;
  return depforge::synth_corpus(so, static_cast<std::uint64_t>(size));
}

void BM_BuildIndex(benchmark::State& state) {
  const depforge::Corpus corpus = corpus_of(state.range(0));
  const fs::path dir = scratch_dir("build");
  for (auto _ : state) {
    fs::remove_all(dir);
    depforge::build_index(corpus, dir);
  }
  fs::remove_all(dir);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(10000)->Arg(100000)->UseRealTime()->Unit(benchmark::kMillisecond);

// Shared index for the query benchmarks.
const DepIndex& query_index() {
  static const fs::path dir = [] {
    const fs::path d = scratch_dir("query");
    fs::remove_all(d);
    depforge::build_index(corpus_of(200000), d);
    return d;
  }();
  static const DepIndex index = DepIndex::open(dir);
  return index;
}

const depforge::DepPattern& pattern(std::int64_t i) {
  static const auto patterns = [] {
    auto all = depforge::builtin_patterns(depforge::Operation::kSubstitution);
    for (auto& p : depforge::builtin_patterns(depforge::Operation::kContraposition)) {
      all.push_back(std::move(p));
    }
    return all;
  }();
  return patterns.at(static_cast<std::size_t>(i));
}

void BM_IndexedSearch(benchmark::State& state) {
  const DepIndex& index = query_index();
  const auto& p = pattern(state.range(0));
  std::size_t hits = 0;
  for (auto _ : state) {
    hits = depforge::search(index, p).size();
    benchmark::DoNotOptimize(hits);
  }
  state.SetLabel(p.id);
  state.counters["hits"] = static_cast<double>(hits);
}
BENCHMARK(BM_IndexedSearch)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);

void BM_FullScan(benchmark::State& state) {
  const DepIndex& index = query_index();
  const auto& p = pattern(state.range(0));
  std::size_t hits = 0;
  for (auto _ : state) {
    hits = depforge::full_scan(index, p).size();
    benchmark::DoNotOptimize(hits);
  }
  state.SetLabel(p.id);
  state.counters["hits"] = static_cast<double>(hits);
}
BENCHMARK(BM_FullScan)->Arg(0)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
