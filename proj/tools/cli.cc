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

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "depforge/errors.h"
#include "depforge/phrase.h"
#include "depforge/pipeline.h"
#include "depforge/search.h"
#include "depforge/synth.h"
#include "depforge/version.h"
#include "json.hpp"

namespace depforge::cli {

namespace {

namespace fs = std::filesystem;

// Flag values collected before the config is assembled; flags override the
// config file.
struct Flags {
  std::string config_file;
  bool json_errors = false;
  bool quiet = false;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> corpus;
  std::vector<std::string> patterns;

  // index
  bool force = false;
  // search
  std::string query;
  std::string format = "human";
  std::string color = "auto";
  bool full_scan = false;
  std::size_t limit = 0;
  // synth
  std::uint64_t count = 1000;
  std::string out_path;
  double distractor_rate = 0.6;
  std::string doc_prefix = "synth";
};

void add_override(CLI::App* app, Flags& flags, const std::string& name,
                  const std::string& key, const std::string& help) {
  app->add_option_function<std::string>(
      name, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
}

void add_work_options(CLI::App* app, Flags& flags) {
  add_override(app, flags, "--work-dir", "work_dir", "Directory shared by all stages");
  add_override(app, flags, "--index-dir", "index_dir", "Index directory (default <work-dir>/index)");
}

void add_index_options(CLI::App* app, Flags& flags) {
  app->add_option("--corpus", flags.corpus, "CoNLL-U files to index");
  add_override(app, flags, "--chunk-size", "chunk_size", "Sentences per index chunk");
  add_override(app, flags, "--max-depth", "max_depth", "Chain prefix depth");
  app->add_flag("--force", flags.force, "Replace an existing index");
}

void add_pattern_options(CLI::App* app, Flags& flags) {
  app->add_option("--patterns", flags.patterns,
                  "Pattern files, optionally prefixed with substitution: or contraposition:");
  add_override(app, flags, "--operation", "operation", "substitution, contraposition or both");
}

void add_expand_options(CLI::App* app, Flags& flags) {
  add_override(app, flags, "--stoplist", "stoplist", "Disallowed-modifier lemma list");
}

void add_augment_options(CLI::App* app, Flags& flags) {
  add_override(app, flags, "--provider", "provider",
               "mock, identity, fixture:<path>, http://host:port or none");
  add_override(app, flags, "--paraphrases", "paraphrases", "Paraphrased copies per example");
  add_override(app, flags, "--top-p", "top_p", "Nucleus sampling cutoff");
  add_override(app, flags, "--retries", "retries", "Retries for transient provider errors");
  add_override(app, flags, "--provider-timeout-ms", "provider_timeout_ms",
               "HTTP provider timeout");
}

void add_emit_options(CLI::App* app, Flags& flags) {
  add_override(app, flags, "--separator", "separator", "Premise separator in source text");
  add_override(app, flags, "--dev-fraction", "dev_fraction",
               "Share of source sentences held out in dev.jsonl");
}

PipelineConfig build_config(const Flags& flags) {
  PipelineConfig config;
  if (!flags.config_file.empty()) config.merge_file(flags.config_file);
  for (const auto& [key, value] : flags.overrides) config.set(key, value);
  if (!flags.corpus.empty()) {
    config.corpus.assign(flags.corpus.begin(), flags.corpus.end());
  }
  if (!flags.patterns.empty()) config.patterns = flags.patterns;
  return config;
}

bool use_color(const std::string& mode) {
  if (mode == "always") return true;
  if (mode == "never") return false;
  return ::isatty(STDOUT_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
}

constexpr const char* kCaptureColors[] = {"\033[31m", "\033[32m", "\033[34m",
                                          "\033[35m", "\033[36m", "\033[33m"};

// Sentence text with each token colored by the innermost capture whose
// subtree contains it.
std::string render_sentence(const ParsedSentence& s, const std::map<int, TokenId>& bindings,
                            bool color) {
  std::vector<int> owner(s.size() + 1, -1);
  std::vector<std::size_t> owner_size(s.size() + 1, ~std::size_t{0});
  for (const auto& [capture, token] : bindings) {
    const std::vector<TokenId> ids = subtree_ids(s, token);
    for (const TokenId id : ids) {
      if (ids.size() < owner_size[id]) {
        owner[id] = capture;
        owner_size[id] = ids.size();
      }
    }
  }
  std::vector<std::string> words;
  std::vector<std::string> display;
  for (const Token& t : s.tokens()) {
    words.push_back(t.form);
    if (color && owner[t.id] >= 0) {
      display.push_back(std::string(kCaptureColors[owner[t.id] % 6]) + t.form + "\033[0m");
    } else {
      display.push_back(t.form);
    }
  }
  return detokenize(words, display);
}

void print_hit(std::ostream& out, const ParsedSentence& s, const Provenance& p,
               std::string_view op, bool color) {
  out << p.sentence.doc_id << '#' << p.sentence.sent_index << "  " << p.pattern_id << " ("
      << op << ")\n  " << render_sentence(s, p.bindings, color) << '\n';
  for (const auto& [capture, token] : p.bindings) {
    out << "    ";
    if (color) out << kCaptureColors[capture % 6];
    out << '$' << capture;
    if (color) out << "\033[0m";
    out << " = " << extract_subtree(s, token).text << '\n';
  }
}

int cmd_index(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  const IndexManifest m = stage_index(config, log, {flags.force});
  out << "indexed " << m.sentence_count << " sentences into " << m.chunks.size()
      << " chunk(s) at " << config.index_path().string() << '\n';
  return kOk;
}

int cmd_search(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  if (flags.format != "human" && flags.format != "jsonl") {
    throw UsageError("--format must be human or jsonl");
  }
  const fs::path dir = config.index_path();
  if (!fs::exists(dir / "manifest.json")) {
    throw UsageError("no index at " + dir.string() +
                     "; build one with 'depforge index --corpus <files>' or pass --index-dir");
  }
  std::vector<MatchRecord> matches;
  const DepIndex index = DepIndex::open(dir);
  if (!flags.query.empty()) {
    const DepPattern pattern = parse_pattern(flags.query, "query");
    SearchOptions options;
    options.workers = config.workers;
    options.force_full_scan = flags.full_scan;
    options.warn = log;
    Operation op = Operation::kSubstitution;
    if (config.operation == OperationSelection::kContraposition) {
      op = Operation::kContraposition;
    }
    std::vector<OpPattern> one{{op, pattern}};
    if (flags.full_scan) {
      for (const SearchHit& hit : full_scan(index, pattern, config.workers)) {
        MatchRecord r;
        r.op = op;
        r.provenance = {hit.match.sentence, hit.match.pattern_id, hit.match.bindings,
                        hit.chunk_id, hit.ordinal};
        r.text = index.sentence(hit.chunk_id, hit.ordinal).text();
        matches.push_back(std::move(r));
      }
    } else {
      matches = collect_matches(index, one, config.workers, log);
    }
  } else {
    matches = stage_search(config, log);
  }

  const bool color = flags.format == "human" && use_color(flags.color);
  std::size_t shown = 0;
  for (const MatchRecord& m : matches) {
    if (flags.limit > 0 && shown == flags.limit) break;
    ++shown;
    if (flags.format == "jsonl") {
      out << match_to_json(m) << '\n';
    } else {
      const ParsedSentence s = index.sentence(m.provenance.chunk_id, m.provenance.ordinal);
      print_hit(out, s, m.provenance, operation_name(m.op), color);
    }
  }
  if (flags.format == "human") {
    out << matches.size() << " match(es)";
    if (shown < matches.size()) out << ", " << shown << " shown";
    out << '\n';
  }
  return kOk;
}

int cmd_expand(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  const ExpandResult r = stage_expand(config, log);
  out << r.examples.size() << " example(s), " << r.skips.size() << " skipped\n";
  return kOk;
}

int cmd_augment(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  const auto examples = stage_augment(config, log);
  out << examples.size() << " example(s) after augmentation\n";
  return kOk;
}

int cmd_emit(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  const DatasetStats stats = stage_emit(config, log);
  out << stats.train_records << " training record(s) in "
      << config.work_file("train.jsonl").string() << '\n';
  return kOk;
}

int cmd_run(const Flags& flags, const StageLog& log, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  const DatasetStats stats = run_pipeline(config, log, {flags.force});
  out << stats.records << " record(s) from " << stats.originals << " example(s); stats in "
      << config.work_file("stats.json").string() << '\n';
  return kOk;
}

int cmd_synth(const Flags& flags, std::ostream& out) {
  const PipelineConfig config = build_config(flags);
  SynthOptions options;
  options.seed = config.seed.value_or(1);
  options.distractor_rate = flags.distractor_rate;
  options.doc_prefix = flags.doc_prefix;
  if (flags.out_path.empty() || flags.out_path == "-") {
    write_synth_corpus(out, options, flags.count);
    return kOk;
  }
  std::ofstream file(flags.out_path);
  if (!file) throw UsageError("cannot write " + flags.out_path);
  write_synth_corpus(file, options, flags.count);
  return kOk;
}

void report(std::ostream& err, bool json, std::string_view kind, const std::string& message,
            int code) {
  if (json) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    err << j.dump() << '\n';
  } else {
    err << "depforge: " << message << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  flags.json_errors = std::find(args.begin(), args.end(), "--json-errors") != args.end();

  CLI::App app{"Dependency-pattern corpus search and deduction-example generation"};
  app.name("depforge");
  app.set_version_flag("--version", std::string("depforge ") + DEPFORGE_VERSION_STRING +
                                        " (index format " +
                                        std::to_string(kIndexFormatVersion) + ")");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", flags.config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_flag("--json-errors", flags.json_errors, "Report errors as one JSON line");
  app.add_flag("-q,--quiet", flags.quiet, "Suppress progress messages");
  add_override(&app, flags, "--seed", "seed", "Seed for every random choice");
  add_override(&app, flags, "--workers", "workers",
               "Parallelism for indexing, search and provider calls");

  CLI::App* index = app.add_subcommand("index", "Ingest CoNLL-U files and build the index");
  add_work_options(index, flags);
  add_index_options(index, flags);

  CLI::App* search = app.add_subcommand("search", "List pattern matches");
  add_work_options(search, flags);
  add_pattern_options(search, flags);
  search->add_option("--pattern", flags.query, "Ad hoc pattern instead of pattern files");
  search->add_option("--format", flags.format, "human or jsonl");
  search->add_option("--color", flags.color, "auto, always or never");
  search->add_flag("--full-scan", flags.full_scan, "Skip the index (ad hoc patterns)");
  search->add_option("--limit", flags.limit, "Print at most this many matches");

  CLI::App* expand = app.add_subcommand("expand", "Turn matches into deduction examples");
  add_work_options(expand, flags);
  add_expand_options(expand, flags);

  CLI::App* augment = app.add_subcommand("augment", "Add paraphrased copies of premises");
  add_work_options(augment, flags);
  add_augment_options(augment, flags);

  CLI::App* emit = app.add_subcommand("emit", "Write train.jsonl and stats.json");
  add_work_options(emit, flags);
  add_emit_options(emit, flags);

  CLI::App* run_cmd = app.add_subcommand("run", "index, search, expand, augment and emit");
  add_work_options(run_cmd, flags);
  add_index_options(run_cmd, flags);
  add_pattern_options(run_cmd, flags);
  add_expand_options(run_cmd, flags);
  add_augment_options(run_cmd, flags);
  add_emit_options(run_cmd, flags);

  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic parsed corpus");
  synth->add_option("--count", flags.count, "Number of sentences");
  synth->add_option("--out", flags.out_path, "Output file (default stdout)");
  synth->add_option("--distractor-rate", flags.distractor_rate,
                    "Share of sentences that match no pattern")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--doc-prefix", flags.doc_prefix, "Document id prefix");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, flags.json_errors, "usage", e.what(), kUsage);
    return kUsage;
  }

  const StageLog log = [&](const std::string& message) {
    if (!flags.quiet) err << "[depforge] " << message << '\n';
  };
  try {
    if (index->parsed()) return cmd_index(flags, log, out);
    if (search->parsed()) return cmd_search(flags, log, out);
    if (expand->parsed()) return cmd_expand(flags, log, out);
    if (augment->parsed()) return cmd_augment(flags, log, out);
    if (emit->parsed()) return cmd_emit(flags, log, out);
    if (run_cmd->parsed()) return cmd_run(flags, log, out);
    if (synth->parsed()) return cmd_synth(flags, out);
  } catch (const UsageError& e) {
    report(err, flags.json_errors, "usage", e.what(), kUsage);
    return kUsage;
  } catch (const ProviderError& e) {
    report(err, flags.json_errors, "provider", e.what(), kProvider);
    return kProvider;
  } catch (const DataError& e) {
    report(err, flags.json_errors, "data", e.what(), kData);
    return kData;
  } catch (const fs::filesystem_error& e) {
    report(err, flags.json_errors, "data", e.what(), kData);
    return kData;
  } catch (const std::exception& e) {
    report(err, flags.json_errors, "internal", e.what(), kProvider);
    return kProvider;
  }
  report(err, flags.json_errors, "usage", "no subcommand given", kUsage);
  return kUsage;
}

}  // namespace depforge::cli
