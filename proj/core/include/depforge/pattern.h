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
// Dependency pattern language.
//
//   node := [arc ':'] [POS] [quoted-lemma] ['$' int]
//   expr := node | '[' expr (('<' | '>') expr)* ']'
//
// Operators relate neighbouring operands, and an operand that is a bracketed
// expression stands for that expression's topmost node. "A < B" makes B a
// dependent of A, "A > B" makes A a dependent of B, so "X < Y < Z" is the
// chain X -> Y -> Z and "A > X < B" gives X two dependents. An arc of
// "ROOT" requires the sentence root. Lemmas may be quoted with ', `, or the
// typographic quotes. The top level of a pattern is itself an expr sequence
// without the surrounding brackets.
//
// Parsing normalizes direction: every node lists its dependents, in a
// canonical order, so two spellings of the same tree compare equal.

#ifndef DEPFORGE_PATTERN_H_
#define DEPFORGE_PATTERN_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace depforge {

inline constexpr std::string_view kRootArc = "ROOT";

struct PatternNode {
  std::optional<std::string> arc;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;  // lowercased
  std::optional<int> capture;
  std::vector<PatternNode> children;  // dependents

  bool requires_root() const { return arc && *arc == kRootArc; }
  bool operator==(const PatternNode&) const = default;
};

enum class Operation { kSubstitution, kContraposition };

std::string_view operation_name(Operation op);
std::optional<Operation> parse_operation(std::string_view name);

struct DepPattern {
  std::string id;
  PatternNode root;
  std::string raw_text;
};

// Throws PatternSyntaxError (with byte offset) on malformed input,
// duplicate capture indices, empty brackets or constraint-free nodes.
DepPattern parse_pattern(std::string_view text, std::string id = {});

// Canonical text; parse_pattern(format_pattern(p)).root == p.root.
std::string format_pattern(const PatternNode& root);
std::string format_node_head(const PatternNode& node);

// Capture indices in ascending order.
std::vector<int> captures(const PatternNode& root);
std::size_t node_count(const PatternNode& root);

// One pattern per line, optional "name: " prefix, '#' comment lines.
// Unnamed patterns are called "<stem>-<line ordinal>".
std::vector<DepPattern> parse_pattern_stream(std::istream& in,
                                             std::string_view stem);
std::vector<DepPattern> load_pattern_file(const std::filesystem::path& path);

// The six substitution and two contraposition source patterns shipped in
// patterns/*.pat, also compiled in so the tool works without data files.
std::vector<DepPattern> builtin_patterns(Operation op);
std::string_view builtin_pattern_file(Operation op);

}  // namespace depforge

#endif  // DEPFORGE_PATTERN_H_
