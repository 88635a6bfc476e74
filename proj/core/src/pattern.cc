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
#include "depforge/pattern.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "depforge/errors.h"
#include "depforge/text_util.h"

namespace depforge {

namespace {

constexpr std::string_view kSubstitutionPatterns =
    "# Substitution source patterns: hypernym phrase $0 with a such-as / like /\n"
    "# including modifier whose object is the hyponym $1. $2 is the main verb.\n"
    "sub1: [nsubj:NNS$0 <[amod:`such' > prep:IN`as' < pobj:$1]]> ROOT:VBP$2\n"
    "sub2: [nsubj:NNS$0 < prep:IN`like' < pobj:$1]> ROOT:VBP$2\n"
    "sub3: [nsubj:NNS$0 < prep:VBG`include' < pobj:$1]> ROOT:VBP$2\n"
    "sub4: ROOT:VBP$2 <[dobj:NNS$0 <[amod:`such' > prep:IN`as' < pobj:$1]]\n"
    "sub5: ROOT:VBP$2 <[dobj:NNS$0 < prep:IN`like' < pobj:$1]\n"
    "sub6: ROOT:VBP$2 <[dobj:NNS$0 < prep:VBG`include' < pobj:$1]\n";

constexpr std::string_view kContrapositionPatterns =
    "# Contraposition source patterns: plural subject $0 restricted by a\n"
    "# relative clause ($1 is its verb) or a with-phrase ($1 is its object).\n"
    "con1: [nsubj:NNS$0 <[nsubj:WDT`that' > relcl:VBP$1]] > ROOT:VBP$2\n"
    "con2: [nsubj:NNS$0 <[prep:IN`with' < pobj:$1]] > ROOT:VBP$2\n";

// Scratch tree used while parsing; children are linked afterwards.
struct RawNode {
  PatternNode fields;
  int parent = -1;
  std::size_t offset = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PatternNode Parse() {
    SkipSpace();
    if (pos_ == text_.size()) Fail("empty pattern");
    const int root = Sequence(/*bracketed=*/false);
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return Build(root);
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw PatternSyntaxError(pos_, what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool AtDelimiter() const {
    if (pos_ >= text_.size()) return true;
    const char c = text_[pos_];
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '[' ||
           c == ']' || c == '<' || c == '>';
  }

  // Length of an opening quote at pos_, or 0.
  std::size_t QuoteAt(std::size_t at) const {
    if (at >= text_.size()) return 0;
    if (text_[at] == '\'' || text_[at] == '`') return 1;
    // U+2018 / U+2019 in UTF-8.
    if (text_.substr(at, 3) == "\xE2\x80\x98" || text_.substr(at, 3) == "\xE2\x80\x99") {
      return 3;
    }
    return 0;
  }

  bool CaptureAt(std::size_t at) const {
    return at + 1 < text_.size() && text_[at] == '$' && text_[at + 1] >= '0' &&
           text_[at + 1] <= '9';
  }

  int Sequence(bool bracketed) {
    int prev = Operand();
    std::vector<int> operands{prev};
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size() || text_[pos_] == ']') break;
      const char op = text_[pos_];
      if (op != '<' && op != '>') Fail("expected '<' or '>'");
      ++pos_;
      SkipSpace();
      const int next = Operand();
      const int dependent = op == '<' ? next : prev;
      const int head = op == '<' ? prev : next;
      if (nodes_[dependent].parent != -1) {
        pos_ = nodes_[dependent].offset;
        Fail("node is attached to two heads");
      }
      nodes_[dependent].parent = head;
      operands.push_back(next);
      prev = next;
    }
    if (bracketed && (pos_ >= text_.size() || text_[pos_] != ']')) {
      Fail("missing ']'");
    }
    // Exactly one operand root stays unattached.
    for (const int r : operands) {
      if (nodes_[r].parent == -1) return r;
    }
    Fail("expression has no root");
  }

  // Returns the index of the operand's topmost node.
  int Operand() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("expected a node or '['");
    if (text_[pos_] == '[') {
      ++pos_;
      SkipSpace();
      if (pos_ < text_.size() && text_[pos_] == ']') Fail("empty brackets");
      const int root = Sequence(/*bracketed=*/true);
      ++pos_;  // ']'
      return root;
    }
    return Node();
  }

  int Node() {
    const std::size_t start = pos_;
    std::string head;
    while (!AtDelimiter() && QuoteAt(pos_) == 0 && !CaptureAt(pos_)) {
      head.push_back(text_[pos_++]);
    }
    RawNode node;
    node.offset = start;
    if (!head.empty()) {
      const std::size_t colon = head.rfind(':');
      if (colon == std::string::npos) {
        node.fields.pos = head;
      } else {
        if (colon == 0) {
          pos_ = start;
          Fail("empty arc label");
        }
        node.fields.arc = head.substr(0, colon);
        if (colon + 1 < head.size()) node.fields.pos = head.substr(colon + 1);
      }
    }
    if (const std::size_t q = QuoteAt(pos_); q > 0) {
      pos_ += q;
      std::string lemma;
      while (pos_ < text_.size() && QuoteAt(pos_) == 0) lemma.push_back(text_[pos_++]);
      if (pos_ >= text_.size()) Fail("unterminated lemma quote");
      if (lemma.empty()) Fail("empty lemma");
      pos_ += QuoteAt(pos_);
      node.fields.lemma = ascii_lower(lemma);
    }
    if (CaptureAt(pos_)) {
      const std::size_t cap_start = pos_;
      ++pos_;
      int value = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        value = value * 10 + (text_[pos_++] - '0');
        if (value > 1000000) Fail("capture index too large");
      }
      if (!captures_.insert(value).second) {
        pos_ = cap_start;
        Fail("duplicate capture $" + std::to_string(value));
      }
      node.fields.capture = value;
    }
    if (!AtDelimiter()) Fail("unexpected character in node");
    if (!node.fields.arc && !node.fields.pos && !node.fields.lemma &&
        !node.fields.capture) {
      Fail("expected a node");
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size() - 1);
  }

  PatternNode Build(int index) {
    PatternNode out = nodes_[index].fields;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      if (nodes_[i].parent == index) out.children.push_back(Build(i));
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawNode> nodes_;
  std::set<int> captures_;
};

void canonicalize(PatternNode& node) {
  for (PatternNode& c : node.children) canonicalize(c);
  std::stable_sort(node.children.begin(), node.children.end(),
                   [](const PatternNode& a, const PatternNode& b) {
                     return format_pattern(a) < format_pattern(b);
                   });
}

void collect_captures(const PatternNode& node, std::vector<int>& out) {
  if (node.capture) out.push_back(*node.capture);
  for (const PatternNode& c : node.children) collect_captures(c, out);
}

}  // namespace

std::string_view operation_name(Operation op) {
  return op == Operation::kSubstitution ? "substitution" : "contraposition";
}

std::optional<Operation> parse_operation(std::string_view name) {
  if (name == "substitution") return Operation::kSubstitution;
  if (name == "contraposition") return Operation::kContraposition;
  return std::nullopt;
}

DepPattern parse_pattern(std::string_view text, std::string id) {
  DepPattern pattern;
  pattern.id = std::move(id);
  pattern.raw_text = std::string(text);
  pattern.root = Parser(text).Parse();
  canonicalize(pattern.root);
  return pattern;
}

std::string format_node_head(const PatternNode& node) {
  std::string out;
  if (node.arc) out += *node.arc + ":";
  if (node.pos) out += *node.pos;
  if (node.lemma) out += "'" + *node.lemma + "'";
  if (node.capture) out += "$" + std::to_string(*node.capture);
  return out;
}

std::string format_pattern(const PatternNode& root) {
  const std::string head = format_node_head(root);
  const auto& kids = root.children;
  if (kids.empty()) return head;
  if (kids.size() == 1) return "[" + head + " < " + format_pattern(kids[0]) + "]";
  std::string middle = head;
  for (std::size_t i = kids.size() - 2; i >= 1; --i) {
    middle = "[" + format_pattern(kids[i]) + " > " + middle + "]";
  }
  return "[" + format_pattern(kids.front()) + " > " + middle + " < " +
         format_pattern(kids.back()) + "]";
}

std::vector<int> captures(const PatternNode& root) {
  std::vector<int> out;
  collect_captures(root, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t node_count(const PatternNode& root) {
  std::size_t n = 1;
  for (const PatternNode& c : root.children) n += node_count(c);
  return n;
}

std::vector<DepPattern> parse_pattern_stream(std::istream& in,
                                             std::string_view stem) {
  std::vector<DepPattern> patterns;
  std::string line;
  std::size_t line_no = 0;
  std::size_t ordinal = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    ++ordinal;
    std::string id = std::string(stem) + "-" + std::to_string(ordinal);
    // "name: pattern" needs whitespace after the colon; "ROOT:VBP" has none.
    std::size_t name_end = 0;
    while (name_end < body.size() &&
           (is_ascii_alpha(body[name_end]) ||
            (body[name_end] >= '0' && body[name_end] <= '9') ||
            body[name_end] == '_' || body[name_end] == '-' || body[name_end] == '.')) {
      ++name_end;
    }
    if (name_end > 0 && name_end + 1 < body.size() && body[name_end] == ':' &&
        (body[name_end + 1] == ' ' || body[name_end + 1] == '\t')) {
      id = std::string(body.substr(0, name_end));
      body = trim(body.substr(name_end + 1));
    }
    try {
      patterns.push_back(parse_pattern(body, id));
    } catch (const PatternSyntaxError& e) {
      throw PatternSyntaxError(e.offset(), std::string(stem) + " line " +
                                               std::to_string(line_no) + ": " +
                                               e.reason());
    }
  }
  return patterns;
}

std::vector<DepPattern> load_pattern_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open pattern file " + path.string());
  return parse_pattern_stream(in, path.stem().string());
}

std::string_view builtin_pattern_file(Operation op) {
  return op == Operation::kSubstitution ? kSubstitutionPatterns
                                        : kContrapositionPatterns;
}

std::vector<DepPattern> builtin_patterns(Operation op) {
  std::istringstream in{std::string(builtin_pattern_file(op))};
  return parse_pattern_stream(in, operation_name(op));
}

}  // namespace depforge
