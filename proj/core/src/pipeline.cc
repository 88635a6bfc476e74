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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <tuple>
#include <unordered_set>

#include "depforge/errors.h"
#include "depforge/search.h"
#include "depforge/text_util.h"

namespace depforge {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kIngestSkips = "ingest_skips.jsonl";
constexpr std::string_view kMatches = "matches.jsonl";
constexpr std::string_view kExamples = "examples.jsonl";
constexpr std::string_view kExpandSkips = "expand_skips.jsonl";
constexpr std::string_view kAugmented = "augmented.jsonl";
constexpr std::string_view kAugmentStats = "augment_stats.json";
constexpr std::string_view kTrain = "train.jsonl";
constexpr std::string_view kDev = "dev.jsonl";
constexpr std::string_view kStats = "stats.json";

std::string unquote(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

std::vector<std::string> list_value(std::string_view v) {
  std::vector<std::string> out;
  for (const std::string_view item : split(v, ',')) {
    std::string s = unquote(item);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

template <typename T>
T number_value(std::string_view key, std::string_view v) {
  const std::string text = unquote(v);
  T out{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("invalid value '" + text + "' for " + std::string(key));
  }
  return out;
}

double double_value(std::string_view key, std::string_view v) {
  const std::string text = unquote(v);
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double out = 0;
  if (!(in >> out) || !in.eof()) {
    throw UsageError("invalid value '" + text + "' for " + std::string(key));
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

void require_file(const fs::path& path, std::string_view produced_by) {
  if (!fs::exists(path)) {
    throw UsageError("missing " + path.string() + "; run '" + std::string(produced_by) +
                     "' first");
  }
}

template <typename T, typename Read>
std::vector<T> read_jsonl_file(const fs::path& path, Read read) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  return read(in, path.string());
}

std::string to_lines(auto const& items, auto write) {
  std::ostringstream out;
  write(out, items);
  return out.str();
}

void noop(const std::string&) {}

}  // namespace

std::optional<OperationSelection> parse_operation_selection(std::string_view text) {
  if (text == "substitution") return OperationSelection::kSubstitution;
  if (text == "contraposition") return OperationSelection::kContraposition;
  if (text == "both") return OperationSelection::kBoth;
  return std::nullopt;
}

std::string_view operation_selection_name(OperationSelection selection) {
  switch (selection) {
    case OperationSelection::kSubstitution: return "substitution";
    case OperationSelection::kContraposition: return "contraposition";
    case OperationSelection::kBoth: return "both";
  }
  return "both";
}

void PipelineConfig::set(std::string_view key, std::string_view value,
                         const fs::path& base_dir) {
  const std::string v = unquote(value);
  if (key == "corpus") {
    corpus.clear();
    for (const std::string& item : list_value(value)) corpus.push_back(resolve(base_dir, item));
  } else if (key == "work_dir") {
    work_dir = resolve(base_dir, v);
  } else if (key == "index_dir") {
    index_dir = resolve(base_dir, v);
  } else if (key == "patterns") {
    patterns.clear();
    for (const std::string& item : list_value(value)) {
      const std::size_t colon = item.find(':');
      if (colon != std::string::npos && parse_operation(item.substr(0, colon))) {
        patterns.push_back(item.substr(0, colon + 1) +
                           resolve(base_dir, item.substr(colon + 1)).string());
      } else {
        patterns.push_back(resolve(base_dir, item).string());
      }
    }
  } else if (key == "stoplist") {
    stoplist = resolve(base_dir, v);
  } else if (key == "operation") {
    const auto op = parse_operation_selection(v);
    if (!op) {
      throw UsageError("operation must be substitution, contraposition or both, not '" +
                       v + "'");
    }
    operation = *op;
  } else if (key == "provider") {
    provider = v.starts_with("fixture:") ? "fixture:" + resolve(base_dir, v.substr(8)).string()
                                         : v;
  } else if (key == "paraphrases") {
    paraphrases = number_value<int>(key, value);
    if (paraphrases < 0) throw UsageError("paraphrases must not be negative");
  } else if (key == "top_p") {
    top_p = double_value(key, value);
    if (!(top_p > 0.0 && top_p <= 1.0)) throw UsageError("top_p must lie in (0, 1]");
  } else if (key == "seed") {
    seed = number_value<std::uint64_t>(key, value);
  } else if (key == "workers") {
    workers = number_value<unsigned>(key, value);
    if (workers == 0) throw UsageError("workers must be at least 1");
  } else if (key == "chunk_size") {
    chunk_size = number_value<std::size_t>(key, value);
  } else if (key == "max_depth") {
    max_depth = number_value<unsigned>(key, value);
  } else if (key == "separator") {
    separator = v;
  } else if (key == "dev_fraction") {
    dev_fraction = double_value(key, value);
    if (dev_fraction < 0.0 || dev_fraction >= 1.0) {
      throw UsageError("dev_fraction must lie in [0, 1)");
    }
  } else if (key == "retries") {
    retries = number_value<int>(key, value);
  } else if (key == "provider_timeout_ms") {
    provider_timeout_ms = number_value<int>(key, value);
  } else {
    throw UsageError("unknown configuration key '" + std::string(key) + "'");
  }
}

void PipelineConfig::merge_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  const fs::path base = path.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    try {
      set(trim(body.substr(0, eq)), body.substr(eq + 1), base);
    } catch (const UsageError& e) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  PipelineConfig config;
  config.merge_file(path);
  return config;
}

fs::path PipelineConfig::index_path() const {
  return index_dir.value_or(work_dir / "index");
}

fs::path PipelineConfig::work_file(std::string_view name) const { return work_dir / name; }

std::uint64_t PipelineConfig::require_seed(std::string_view stage) const {
  if (!seed) {
    throw UsageError(std::string(stage) + " needs a seed; pass --seed or set 'seed' in the config");
  }
  return *seed;
}

std::vector<OpPattern> resolve_patterns(const PipelineConfig& config) {
  const auto wanted = [&](Operation op) {
    return config.operation == OperationSelection::kBoth ||
           (op == Operation::kSubstitution) ==
               (config.operation == OperationSelection::kSubstitution);
  };
  std::vector<OpPattern> out;
  if (config.patterns.empty()) {
    for (const Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
      if (!wanted(op)) continue;
      for (DepPattern& p : builtin_patterns(op)) out.push_back({op, std::move(p)});
    }
    return out;
  }
  std::set<std::string> ids;
  for (const std::string& spec : config.patterns) {
    std::optional<Operation> op;
    fs::path path(spec);
    const std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
      if (auto explicit_op = parse_operation(spec.substr(0, colon))) {
        op = explicit_op;
        path = spec.substr(colon + 1);
      }
    }
    if (!op) {
      const std::string stem = ascii_lower(path.stem().string());
      if (stem.starts_with("sub")) op = Operation::kSubstitution;
      if (stem.starts_with("contra")) op = Operation::kContraposition;
    }
    if (!op) {
      throw UsageError("cannot tell the operation of pattern file " + path.string() +
                       "; prefix it with substitution: or contraposition:");
    }
    if (!fs::exists(path)) throw UsageError("pattern file not found: " + path.string());
    if (!wanted(*op)) continue;
    for (DepPattern& p : load_pattern_file(path)) {
      if (!ids.insert(p.id).second) throw UsageError("duplicate pattern id " + p.id);
      out.push_back({*op, std::move(p)});
    }
  }
  return out;
}

ModifierStoplist resolve_stoplist(const PipelineConfig& config) {
  return config.stoplist ? ModifierStoplist::load(*config.stoplist)
                         : ModifierStoplist::defaults();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw DataError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------

IndexManifest stage_index(const PipelineConfig& config, const StageLog& log_in,
                          const IndexStageOptions& options) {
  const StageLog& log = log_in ? log_in : StageLog(noop);
  if (config.corpus.empty()) throw UsageError("no corpus files given");
  std::vector<std::string> paths;
  for (const fs::path& p : config.corpus) {
    if (!fs::exists(p)) throw UsageError("corpus file not found: " + p.string());
    paths.push_back(p.string());
  }
  const fs::path dir = config.index_path();
  if (options.force && fs::exists(dir)) fs::remove_all(dir);

  const Corpus corpus = ingest_files(paths, config.workers);
  log("ingested " + std::to_string(corpus.sentences.size()) + " sentences, skipped " +
      std::to_string(corpus.skipped.size()) + " malformed");
  std::ostringstream skips;
  write_skip_report(skips, corpus.skipped);

  IndexOptions index_options;
  index_options.chunk_size = config.chunk_size;
  index_options.max_depth = config.max_depth;
  index_options.workers = config.workers;
  IndexManifest manifest = build_index(corpus, dir, index_options);
  write_file_atomic(dir / kIngestSkips, skips.str());
  log("index at " + dir.string() + ": " + std::to_string(manifest.chunks.size()) +
      " chunk(s)");
  return manifest;
}

std::vector<MatchRecord> collect_matches(const DepIndex& index,
                                         std::span<const OpPattern> patterns,
                                         unsigned workers, const StageLog& log) {
  struct Keyed {
    std::tuple<std::uint32_t, std::uint32_t, std::size_t> order;
    MatchRecord record;
  };
  std::vector<Keyed> all;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    SearchOptions options;
    options.workers = workers;
    options.warn = [&](const std::string& message) {
      if (log) log(patterns[p].pattern.id + ": " + message);
    };
    const std::vector<SearchHit> hits = search(index, patterns[p].pattern, options);
    if (log) log(patterns[p].pattern.id + ": " + std::to_string(hits.size()) + " match(es)");
    for (const SearchHit& hit : hits) {
      MatchRecord r;
      r.op = patterns[p].op;
      r.provenance.sentence = hit.match.sentence;
      r.provenance.pattern_id = hit.match.pattern_id;
      r.provenance.bindings = hit.match.bindings;
      r.provenance.chunk_id = hit.chunk_id;
      r.provenance.ordinal = hit.ordinal;
      all.push_back({{hit.chunk_id, hit.ordinal, p}, std::move(r)});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Keyed& a, const Keyed& b) { return a.order < b.order; });
  std::vector<MatchRecord> out;
  out.reserve(all.size());
  std::uint64_t cached_key = ~std::uint64_t{0};
  std::string cached_text;
  for (Keyed& k : all) {
    const std::uint64_t key =
        (std::uint64_t{k.record.provenance.chunk_id} << 32) | k.record.provenance.ordinal;
    if (key != cached_key) {
      cached_text = index.sentence(k.record.provenance.chunk_id, k.record.provenance.ordinal)
                        .text();
      cached_key = key;
    }
    k.record.text = cached_text;
    out.push_back(std::move(k.record));
  }
  return out;
}

ExpandResult expand_matches(const DepIndex& index, std::span<const MatchRecord> matches,
                            const ModifierStoplist& stoplist) {
  ExpandResult result;
  std::unordered_set<std::string> seen;
  std::optional<ParsedSentence> sentence;
  std::uint64_t cached_key = ~std::uint64_t{0};
  for (const MatchRecord& m : matches) {
    const Provenance& prov = m.provenance;
    if (prov.chunk_id >= index.chunk_count() ||
        prov.ordinal >= index.chunk_sentence_count(prov.chunk_id)) {
      throw DataError("match for " + prov.sentence.doc_id + "#" +
                      std::to_string(prov.sentence.sent_index) +
                      " points outside the index; rerun search");
    }
    const std::uint64_t key = (std::uint64_t{prov.chunk_id} << 32) | prov.ordinal;
    if (key != cached_key) {
      sentence = index.sentence(prov.chunk_id, prov.ordinal);
      cached_key = key;
    }
    if (sentence->ref() != prov.sentence) {
      throw DataError("match for " + prov.sentence.doc_id + "#" +
                      std::to_string(prov.sentence.sent_index) +
                      " does not agree with the index; rerun search");
    }
    MatchBinding binding;
    binding.sentence = prov.sentence;
    binding.pattern_id = prov.pattern_id;
    binding.bindings = prov.bindings;
    for (const auto& [capture, token] : prov.bindings) {
      if (!sentence->contains(token)) {
        throw DataError("binding $" + std::to_string(capture) + " out of range for " +
                        prov.sentence.doc_id);
      }
    }

    const FilterDecision decision = filter_match(binding, *sentence, stoplist);
    if (!decision.keep) {
      result.skips.push_back({m.op, prov, "filter", decision.reason});
      continue;
    }
    Expansion expansion = expand(m.op, binding, *sentence);
    if (!expansion.example) {
      result.skips.push_back({m.op, prov, "template", expansion.skip_reason});
      continue;
    }
    DeductionExample& example = *expansion.example;
    example.provenance = prov;
    std::string signature = example.conclusion;
    for (const std::string& premise : example.premises) signature += '\n' + premise;
    if (!seen.insert(std::move(signature)).second) {
      result.skips.push_back({m.op, prov, "dedup", "duplicate example"});
      continue;
    }
    result.examples.push_back(std::move(example));
  }
  return result;
}

std::vector<MatchRecord> stage_search(const PipelineConfig& config, const StageLog& log) {
  const fs::path dir = config.index_path();
  if (!fs::exists(dir / "manifest.json")) {
    throw UsageError("no index at " + dir.string() + "; run 'depforge index' first");
  }
  const DepIndex index = DepIndex::open(dir);
  const std::vector<OpPattern> patterns = resolve_patterns(config);
  std::vector<MatchRecord> matches = collect_matches(index, patterns, config.workers, log);
  write_file_atomic(config.work_file(kMatches),
                    to_lines(matches, [](std::ostream& o, const auto& m) { write_matches(o, m); }));
  return matches;
}

ExpandResult stage_expand(const PipelineConfig& config, const StageLog& log) {
  require_file(config.work_file(kMatches), "depforge search");
  const std::vector<MatchRecord> matches =
      read_jsonl_file<MatchRecord>(config.work_file(kMatches), read_matches);
  const DepIndex index = DepIndex::open(config.index_path());
  ExpandResult result = expand_matches(index, matches, resolve_stoplist(config));
  write_file_atomic(config.work_file(kExamples),
                    to_lines(result.examples,
                             [](std::ostream& o, const auto& e) { write_examples(o, e); }));
  write_file_atomic(config.work_file(kExpandSkips),
                    to_lines(result.skips, [](std::ostream& o, const auto& s) { write_skips(o, s); }));
  if (log) {
    log("expanded " + std::to_string(result.examples.size()) + " example(s), skipped " +
        std::to_string(result.skips.size()));
  }
  return result;
}

std::vector<DeductionExample> stage_augment(const PipelineConfig& config,
                                            const StageLog& log) {
  require_file(config.work_file(kExamples), "depforge expand");
  const std::vector<DeductionExample> examples =
      read_jsonl_file<DeductionExample>(config.work_file(kExamples), read_examples);
  std::vector<DeductionExample> out;
  AugmentStats stats;
  if (config.provider == "none" || config.paraphrases == 0) {
    out = examples;
    stats.originals = examples.size();
  } else {
    AugmentOptions options;
    options.n = config.paraphrases;
    options.top_p = config.top_p;
    options.seed = config.require_seed("augment");
    options.max_in_flight = config.workers;
    options.max_retries = config.retries;
    std::unique_ptr<ParaphraseProvider> provider;
    if (config.provider.starts_with("http://")) {
      provider = std::make_unique<HttpProvider>(
          config.provider, std::chrono::milliseconds(config.provider_timeout_ms));
    } else {
      provider = make_provider(config.provider);
    }
    out = augment_all(examples, *provider, options, &stats);
  }
  write_file_atomic(config.work_file(kAugmented),
                    to_lines(out, [](std::ostream& o, const auto& e) { write_examples(o, e); }));
  write_file_atomic(config.work_file(kAugmentStats), stats.to_json() + "\n");
  if (log) {
    std::string histogram;
    for (const auto& [bucket, count] : stats.edit_distance_histogram) {
      histogram += " " + std::to_string(bucket) + "+:" + std::to_string(count);
    }
    log("augmented " + std::to_string(stats.originals) + " example(s) into " +
        std::to_string(out.size()) + ", " + std::to_string(stats.failures) +
        " failure(s); edit distance" + (histogram.empty() ? " n/a" : histogram));
  }
  return out;
}

DatasetStats stage_emit(const PipelineConfig& config, const StageLog& log) {
  EmitOptions options;
  options.seed = config.require_seed("emit");
  options.separator = config.separator;
  options.dev_fraction = config.dev_fraction;
  require_file(config.work_file(kAugmented), "depforge augment");
  const std::vector<DeductionExample> examples =
      read_jsonl_file<DeductionExample>(config.work_file(kAugmented), read_examples);
  std::vector<SkipEntry> skips;
  if (fs::exists(config.work_file(kExpandSkips))) {
    skips = read_jsonl_file<SkipEntry>(config.work_file(kExpandSkips), read_skips);
  }
  std::ostringstream train;
  std::ostringstream dev;
  const EmitSummary summary =
      emit_records(examples, options, train, options.dev_fraction > 0 ? &dev : nullptr);
  write_file_atomic(config.work_file(kTrain), train.str());
  if (options.dev_fraction > 0) {
    write_file_atomic(config.work_file(kDev), dev.str());
  } else if (fs::exists(config.work_file(kDev))) {
    fs::remove(config.work_file(kDev));
  }
  DatasetStats stats = compute_stats(examples, skips, &summary);
  write_file_atomic(config.work_file(kStats), stats.to_json() + "\n");
  if (log) {
    log("wrote " + std::to_string(summary.train_records) + " training record(s)" +
        (options.dev_fraction > 0 ? ", " + std::to_string(summary.dev_records) + " dev" : ""));
  }
  return stats;
}

DatasetStats run_pipeline(const PipelineConfig& config, const StageLog& log,
                          const IndexStageOptions& index_options) {
  config.require_seed("run");
  stage_index(config, log, index_options);
  stage_search(config, log);
  stage_expand(config, log);
  stage_augment(config, log);
  return stage_emit(config, log);
}

}  // namespace depforge
