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

// Attributed tree transducers, bottom-up and top-down relabelings, and
// look-around.
//
// An att has synthesized attributes S (computed at a node from below) and
// inherited attributes I (supplied by the parent, or by the virtual root
// marker "#" for the root). Rules are kept per input symbol in declaration
// order; that order is the tie-breaking order used by every construction.

#ifndef ATTU_MODEL_HPP_
#define ATTU_MODEL_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attu/trees.hpp"

namespace attu {

/// Right-hand side of a rule: an output tree whose leaves may be a(pi.i)
/// (synthesized attribute of child i) or b(pi) (inherited attribute of the
/// current node).
struct RhsTerm {
  enum class Kind { kOutput, kSyn, kInh };

  Kind kind = Kind::kOutput;
  std::string name;  // output symbol or attribute
  int child = 0;     // kSyn only, 1-based
  std::vector<RhsTerm> args;

  static RhsTerm output(std::string symbol, std::vector<RhsTerm> args = {});
  static RhsTerm syn(std::string attr, int child);
  static RhsTerm inh(std::string attr);

  friend bool operator==(const RhsTerm&, const RhsTerm&) = default;
};

/// Left-hand side a(pi) or b(pi.i).
struct Lhs {
  bool synthesized = true;
  std::string attr;
  int child = 0;  // 0 for synthesized

  static Lhs syn(std::string attr) { return {true, std::move(attr), 0}; }
  static Lhs inh(std::string attr, int child) {
    return {false, std::move(attr), child};
  }

  friend bool operator==(const Lhs&, const Lhs&) = default;
  friend bool operator<(const Lhs& a, const Lhs& b) {
    if (a.synthesized != b.synthesized) return a.synthesized;
    if (a.attr != b.attr) return a.attr < b.attr;
    return a.child < b.child;
  }
};

struct Rule {
  Lhs lhs;
  RhsTerm rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string render_lhs(const Lhs& lhs);
std::string render_rhs(const RhsTerm& rhs);
std::string render_rule(const Rule& rule);

struct Att {
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;
  std::vector<std::string> syn;
  std::vector<std::string> inh;
  std::string initial;
  std::map<std::string, std::vector<Rule>> rules;
  std::vector<Rule> root_rules;

  /// Empty list for symbols without rules.
  const std::vector<Rule>& rules_at(const std::string& symbol) const;
  bool is_syn(const std::string& attr) const;
  bool is_inh(const std::string& attr) const;

  friend bool operator==(const Att&, const Att&) = default;
};

struct Violation {
  std::string where;  // "rules f[2]", "root[0]", "attributes", ...
  std::string message;
};

std::vector<Violation> validate_att(const Att& a);
/// Throws Error listing every violation.
void require_valid(const Att& a);

/// No rule set, R_# included, has two rules with the same left-hand side.
bool is_deterministic(const Att& a);
bool root_rules_unambiguous(const Att& a);

/// All subsets of `rules` with at most one rule per left-hand side, as
/// ascending index lists, in lexicographic order. Always includes {}.
std::vector<std::vector<std::size_t>> unambiguous_subsets(
    const std::vector<Rule>& rules);

/// Equivalent att whose root rules are unambiguous. Returns the input if
/// they already are.
Att normalize_root_rules(const Att& a);

// ------------------------------------------------------------------------
// Relabelings

struct BuKey {
  std::string symbol;
  std::vector<int> children;

  friend bool operator==(const BuKey&, const BuKey&) = default;
  friend auto operator<=>(const BuKey&, const BuKey&) = default;
};

struct BuTarget {
  int state = -1;
  std::string output;

  friend bool operator==(const BuTarget&, const BuTarget&) = default;
};

/// Deterministic, possibly partial, bottom-up relabeling.
class BottomUpRelabeling {
 public:
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;

  int add_state(const std::string& state_name, bool final = false);
  std::optional<int> find_state(const std::string& state_name) const;
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  bool is_final(int state) const { return finals_.at(state); }
  void set_final(int state, bool final = true) { finals_.at(state) = final; }

  /// Throws if the key already has a transition.
  void add_transition(BuKey key, BuTarget target);
  const BuTarget* find(const BuKey& key) const;
  const std::map<BuKey, BuTarget>& transitions() const { return transitions_; }

  friend bool operator==(const BottomUpRelabeling&,
                         const BottomUpRelabeling&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<bool> finals_;
  std::map<BuKey, BuTarget> transitions_;
};

struct TdRule {
  int state = -1;
  std::string symbol;
  std::string output;
  std::vector<int> child_states;

  friend bool operator==(const TdRule&, const TdRule&) = default;
};

/// Top-down relabeling q(s(x1..xk)) -> s'(q1(x1)..qk(xk)) with a set of
/// initial states.
class TopDownRelabeling {
 public:
  std::string name;
  RankedAlphabet input;
  RankedAlphabet output;

  int add_state(const std::string& state_name);
  std::optional<int> find_state(const std::string& state_name) const;
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }

  void add_initial(int state);
  const std::vector<int>& initials() const { return initials_; }

  void add_rule(TdRule rule);
  const std::vector<TdRule>& rules() const { return rules_; }
  /// Indices into rules(), in declaration order.
  const std::vector<std::size_t>& rules_for(int state,
                                            const std::string& symbol) const;

  /// Single initial state and at most one rule per (state, symbol).
  bool is_deterministic() const;

  friend bool operator==(const TopDownRelabeling& a,
                         const TopDownRelabeling& b) {
    return a.name == b.name && a.input == b.input && a.output == b.output &&
           a.states_ == b.states_ && a.initials_ == b.initials_ &&
           a.rules_ == b.rules_;
  }

 private:
  std::vector<std::string> states_;
  std::vector<int> initials_;
  std::vector<TdRule> rules_;
  std::map<std::pair<int, std::string>, std::vector<std::size_t>> index_;
};

struct LookAround {
  std::string name;
  BottomUpRelabeling bottom;
  TopDownRelabeling top;

  const RankedAlphabet& input() const { return bottom.input; }
  const RankedAlphabet& output() const { return top.output; }

  friend bool operator==(const LookAround&, const LookAround&) = default;
};

struct AttWithLookAround {
  LookAround around;
  Att core;

  bool is_deterministic() const { return attu::is_deterministic(core); }

  friend bool operator==(const AttWithLookAround&,
                         const AttWithLookAround&) = default;
};

std::vector<Violation> validate_bottomup(const BottomUpRelabeling& b);
std::vector<Violation> validate_topdown(const TopDownRelabeling& t);
std::vector<Violation> validate_lookaround(const LookAround& u);
std::vector<Violation> validate_attu(const AttWithLookAround& a);

BottomUpRelabeling identity_bottomup(const RankedAlphabet& alphabet);
TopDownRelabeling identity_topdown(const RankedAlphabet& alphabet);
/// Look-around realizing the identity on every tree over `alphabet`.
LookAround identity_lookaround(const RankedAlphabet& alphabet);

/// A name not in `taken`, derived from `base` by appending primes.
std::string fresh_name(const std::string& base,
                       const std::vector<std::string>& taken);

}  // namespace attu

#endif  // ATTU_MODEL_HPP_
