// Copyright 2026 The attu Authors
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

#include "attu/trees.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace attu {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

// ------------------------------------------------------------------------
// RankedAlphabet

RankedAlphabet::RankedAlphabet(
    std::initializer_list<std::pair<const std::string, int>> init) {
  for (const auto& [name, rank] : init) add(name, rank);
}

void RankedAlphabet::add(const std::string& symbol, int rank) {
  if (symbol == kRootMarker) throw Error("symbol name '#' is reserved");
  if (!is_valid_name(symbol)) throw Error("invalid symbol name '" + symbol + "'");
  if (rank < 0) throw Error("negative rank for symbol '" + symbol + "'");
  auto [it, inserted] = ranks_.emplace(symbol, rank);
  if (!inserted && it->second != rank)
    throw Error("symbol '" + symbol + "' declared with ranks " +
                std::to_string(it->second) + " and " + std::to_string(rank));
}

bool RankedAlphabet::contains(const std::string& symbol) const {
  return ranks_.count(symbol) != 0;
}

int RankedAlphabet::rank(const std::string& symbol) const {
  auto it = ranks_.find(symbol);
  if (it == ranks_.end()) throw Error("unknown symbol '" + symbol + "'");
  return it->second;
}

std::optional<int> RankedAlphabet::find(const std::string& symbol) const {
  auto it = ranks_.find(symbol);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

bool RankedAlphabet::has_nullary() const {
  return std::any_of(ranks_.begin(), ranks_.end(),
                     [](const auto& e) { return e.second == 0; });
}

// ------------------------------------------------------------------------
// Names

namespace {

bool is_delimiter(char c) {
  switch (c) {
    case '(': case ')': case ',': case ';': case ':':
    case '{': case '}': case '/':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

}  // namespace

std::size_t scan_name(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  while (i < text.size()) {
    char c = text[i];
    if (c == '@' && i + 1 < text.size() && text[i + 1] == '{') {
      std::size_t j = i + 2;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == ','))
        ++j;
      if (j >= text.size() || text[j] != '}') break;
      i = j + 1;
      continue;
    }
    if (c == '@' || is_delimiter(c)) break;
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') break;
    ++i;
  }
  return i - pos;
}

bool is_valid_name(std::string_view name) {
  return !name.empty() && name != kRootMarker &&
         scan_name(name, 0) == name.size();
}

// ------------------------------------------------------------------------
// Trees

bool operator<(const Tree& a, const Tree& b) {
  if (a.label != b.label) return a.label < b.label;
  return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                      b.children.begin(), b.children.end());
}

std::string render_address(const NodeAddress& v) {
  if (v.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(v[i]);
  }
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree parse() {
    Tree t = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  Tree parse_node() {
    skip_ws();
    std::size_t n = scan_name(text_, pos_);
    if (n == 0) fail("expected symbol name");
    Tree t(std::string(text_.substr(pos_, n)));
    pos_ += n;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      for (;;) {
        t.children.push_back(parse_node());
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated child list");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const Tree& t, std::string& out) {
  out += t.label;
  if (t.children.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ',';
    render_into(t.children[i], out);
  }
  out += ')';
}

void check_node(const Tree& t, const RankedAlphabet& alphabet,
                NodeAddress& at) {
  auto rank = alphabet.find(t.label);
  if (!rank)
    throw Error("unknown symbol '" + t.label + "' at node " +
                render_address(at));
  if (static_cast<std::size_t>(*rank) != t.children.size())
    throw Error("arity mismatch at node " + render_address(at) + ": '" +
                t.label + "' has rank " + std::to_string(*rank) + " but " +
                std::to_string(t.children.size()) + " children");
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    at.push_back(static_cast<int>(i + 1));
    check_node(t.children[i], alphabet, at);
    at.pop_back();
  }
}

}  // namespace

Tree parse_tree(std::string_view text, const RankedAlphabet* alphabet) {
  Tree t = TreeParser(text).parse();
  if (alphabet) check_tree(t, *alphabet);
  return t;
}

std::string render_tree(const Tree& t) {
  std::string out;
  render_into(t, out);
  return out;
}

void check_tree(const Tree& t, const RankedAlphabet& alphabet) {
  NodeAddress at;
  check_node(t, alphabet, at);
}

bool conforms(const Tree& t, const RankedAlphabet& alphabet) {
  try {
    check_tree(t, alphabet);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::size_t size(const Tree& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += size(c);
  return n;
}

std::size_t height(const Tree& t) {
  std::size_t h = 0;
  for (const auto& c : t.children) h = std::max(h, height(c));
  return h + 1;
}

bool is_valid_address(const Tree& t, const NodeAddress& v) {
  const Tree* cur = &t;
  for (int i : v) {
    if (i < 1 || static_cast<std::size_t>(i) > cur->children.size())
      return false;
    cur = &cur->children[i - 1];
  }
  return true;
}

const Tree& subtree_at(const Tree& t, const NodeAddress& v) {
  if (!is_valid_address(t, v))
    throw Error("invalid address " + render_address(v) + " in " +
                render_tree(t));
  const Tree* cur = &t;
  for (int i : v) cur = &cur->children[i - 1];
  return *cur;
}

Tree replace_at(const Tree& t, const NodeAddress& v, Tree u) {
  if (!is_valid_address(t, v))
    throw Error("invalid address " + render_address(v) + " in " +
                render_tree(t));
  Tree out = t;
  Tree* cur = &out;
  for (int i : v) cur = &cur->children[i - 1];
  *cur = std::move(u);
  return out;
}

namespace {

void collect_addresses(const Tree& t, NodeAddress& at,
                       std::vector<NodeAddress>& out) {
  out.push_back(at);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    at.push_back(static_cast<int>(i + 1));
    collect_addresses(t.children[i], at, out);
    at.pop_back();
  }
}

}  // namespace

std::vector<NodeAddress> addresses(const Tree& t) {
  std::vector<NodeAddress> out;
  NodeAddress at;
  collect_addresses(t, at, out);
  return out;
}

// ------------------------------------------------------------------------
// Enumeration

std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet,
                                  std::size_t max_size) {
  // by_size[n] holds every tree with exactly n nodes.
  std::vector<std::vector<Tree>> by_size(max_size + 1);
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::vector<Tree>& bucket = by_size[n];
    for (const auto& [symbol, rank] : alphabet) {
      if (rank == 0) {
        if (n == 1) bucket.emplace_back(symbol);
        continue;
      }
      if (n < 1 + static_cast<std::size_t>(rank)) continue;
      // Distribute n-1 nodes over `rank` children, each at least one.
      std::vector<Tree> kids(rank);
      auto emit = [&](auto&& self, int pos, std::size_t left) -> void {
        if (pos == rank - 1) {
          for (const Tree& c : by_size[left]) {
            kids[pos] = c;
            bucket.emplace_back(symbol, kids);
          }
          return;
        }
        std::size_t reserve = static_cast<std::size_t>(rank - 1 - pos);
        for (std::size_t take = 1; take + reserve <= left; ++take) {
          for (const Tree& c : by_size[take]) {
            kids[pos] = c;
            self(self, pos + 1, left - take);
          }
        }
      };
      emit(emit, 0, n - 1);
    }
    std::vector<std::pair<std::string, Tree>> keyed;
    keyed.reserve(bucket.size());
    for (auto& t : bucket) keyed.emplace_back(render_tree(t), std::move(t));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    bucket.clear();
    for (auto& [key, t] : keyed) bucket.push_back(std::move(t));
  }
  std::vector<Tree> out;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (const Tree& t : by_size[n]) out.push_back(t);
  return out;
}

// ------------------------------------------------------------------------
// TreeSet

TreeSet::TreeSet(std::initializer_list<Tree> trees) {
  for (const Tree& t : trees) insert(t);
}

bool TreeSet::insert(const Tree& t) {
  return trees_.emplace(render_tree(t), t).second;
}

bool TreeSet::contains(const Tree& t) const {
  return trees_.count(render_tree(t)) != 0;
}

bool TreeSet::contains(const std::string& rendering) const {
  return trees_.count(rendering) != 0;
}

void TreeSet::merge(const TreeSet& other) {
  for (const auto& [key, t] : other.trees_) trees_.emplace(key, t);
}

std::vector<std::string> TreeSet::renderings() const {
  std::vector<std::string> out;
  for (const auto& [key, t] : trees_) out.push_back(key);
  return out;
}

std::vector<Tree> TreeSet::trees() const {
  std::vector<Tree> out;
  for (const auto& [key, t] : trees_) out.push_back(t);
  return out;
}

std::string TreeSet::render() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, t] : trees_) {
    if (!first) out += ", ";
    first = false;
    out += key;
  }
  return out + "}";
}

}  // namespace attu
