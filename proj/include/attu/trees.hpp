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

// Ranked alphabets, ordered labeled trees and Dewey node addresses.

#ifndef ATTU_TREES_HPP_
#define ATTU_TREES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace attu {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in tree or DSL text, with a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The virtual root marker. Never a member of a user alphabet.
inline constexpr std::string_view kRootMarker = "#";

/// Finite map from symbol names to ranks. Iteration is by name.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;
  RankedAlphabet(std::initializer_list<std::pair<const std::string, int>> init);

  /// Throws if the symbol is already present with a different rank, or if
  /// the name is reserved.
  void add(const std::string& symbol, int rank);
  bool contains(const std::string& symbol) const;
  /// Throws for unknown symbols.
  int rank(const std::string& symbol) const;
  std::optional<int> find(const std::string& symbol) const;
  bool empty() const { return ranks_.empty(); }
  std::size_t size() const { return ranks_.size(); }
  bool has_nullary() const;

  const std::map<std::string, int>& symbols() const { return ranks_; }
  auto begin() const { return ranks_.begin(); }
  auto end() const { return ranks_.end(); }

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

 private:
  std::map<std::string, int> ranks_;
};

/// True if `name` is usable as a symbol, attribute or state name: non-empty
/// and free of whitespace and the DSL delimiters. The "@{...}" suffix of
/// generated annotated symbols is accepted.
bool is_valid_name(std::string_view name);

/// Length of the longest name token starting at `text[pos]` (possibly 0).
std::size_t scan_name(std::string_view text, std::size_t pos);

struct Tree {
  std::string label;
  std::vector<Tree> children;

  Tree() = default;
  explicit Tree(std::string l, std::vector<Tree> c = {})
      : label(std::move(l)), children(std::move(c)) {}

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const Tree& a, const Tree& b) {
    return a.label == b.label && a.children == b.children;
  }
};

/// Structural order: label first, then children lexicographically.
bool operator<(const Tree& a, const Tree& b);

/// 1-based child indices from the root; the empty path is the root.
using NodeAddress = std::vector<int>;

/// "eps" for the root, otherwise "1.2.1".
std::string render_address(const NodeAddress& v);

Tree parse_tree(std::string_view text,
                const RankedAlphabet* alphabet = nullptr);
std::string render_tree(const Tree& t);

/// Throws Error naming the first offending node.
void check_tree(const Tree& t, const RankedAlphabet& alphabet);
bool conforms(const Tree& t, const RankedAlphabet& alphabet);

std::size_t size(const Tree& t);
std::size_t height(const Tree& t);
bool is_valid_address(const Tree& t, const NodeAddress& v);
const Tree& subtree_at(const Tree& t, const NodeAddress& v);
Tree replace_at(const Tree& t, const NodeAddress& v, Tree u);
/// All addresses of `t` in pre-order.
std::vector<NodeAddress> addresses(const Tree& t);

/// Every tree over `alphabet` with at most `max_size` nodes, each exactly
/// once, ordered by size and then by rendering.
std::vector<Tree> enumerate_trees(const RankedAlphabet& alphabet,
                                  std::size_t max_size);

/// Set of trees keyed and ordered by canonical rendering.
class TreeSet {
 public:
  TreeSet() = default;
  TreeSet(std::initializer_list<Tree> trees);

  bool insert(const Tree& t);
  bool contains(const Tree& t) const;
  bool contains(const std::string& rendering) const;
  bool empty() const { return trees_.empty(); }
  std::size_t size() const { return trees_.size(); }
  void merge(const TreeSet& other);

  std::vector<std::string> renderings() const;
  std::vector<Tree> trees() const;
  /// "{t1, t2}" with members in canonical order.
  std::string render() const;

  auto begin() const { return trees_.begin(); }
  auto end() const { return trees_.end(); }

  friend bool operator==(const TreeSet& a, const TreeSet& b) {
    return a.trees_ == b.trees_;
  }

 private:
  std::map<std::string, Tree> trees_;
};

}  // namespace attu

#endif  // ATTU_TREES_HPP_
