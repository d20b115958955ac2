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


// Domain automata.
//
// For a deterministic att the state reached at a node summarizes, for each
// synthesized attribute a, whether a has a normal form built from the
// subtree alone and which inherited attributes of the node occur in it.
// Whether an occurrence grounds in a context depends only on that set, so
// these summaries form a finite deterministic bottom-up automaton.

#ifndef ATTU_DOMAIN_HPP_
#define ATTU_DOMAIN_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "attu/model.hpp"
#include "attu/trees.hpp"

namespace attu {

/// Deterministic, possibly partial, bottom-up tree automaton.
class BottomUpAutomaton {
 public:
  std::string name;
  RankedAlphabet alphabet;

  int add_state(const std::string& state_name, bool accepting = false);
  std::optional<int> find_state(const std::string& state_name) const;
  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  bool is_accepting(int state) const { return accepting_.at(state); }
  void set_accepting(int state, bool accepting = true) {
    accepting_.at(state) = accepting;
  }

  /// Throws if the key already has a transition.
  void add_transition(BuKey key, int target);
  std::optional<int> next(const BuKey& key) const;
  const std::map<BuKey, int>& transitions() const { return transitions_; }

  /// State at the root, absent if some node has no transition.
  std::optional<int> run(const Tree& s) const;
  bool accepts(const Tree& s) const;

  friend bool operator==(const BottomUpAutomaton&,
                         const BottomUpAutomaton&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<bool> accepting_;
  std::map<BuKey, int> transitions_;
};

bool automaton_accepts(const BottomUpAutomaton& m, const Tree& s);

/// Calls `visit` once for every symbol and tuple of states, repeating as
/// long as visits add states. `state_count` reports the current number.
void for_each_reachable_key(const RankedAlphabet& alphabet,
                            const std::function<std::size_t()>& state_count,
                            const std::function<void(const BuKey&)>& visit);

/// Builds every reachable state: `step` maps a symbol and child states to a
/// target state (or nullopt) and may add states to `m`. Tuples are visited
/// in a fixed order, so the result is reproducible.
void saturate(BottomUpAutomaton& m,
              const std::function<std::optional<int>(const std::string&,
                                                     const std::vector<int>&)>&
                  step);

/// Per synthesized attribute (in Att::syn order): -1 if undefined, else a
/// bit set over Att::inh of the inherited attributes in its normal form.
struct DomainSummary {
  std::vector<std::int64_t> entries;

  bool defined(std::size_t a) const { return entries.at(a) >= 0; }

  friend bool operator==(const DomainSummary&, const DomainSummary&) = default;
  friend auto operator<=>(const DomainSummary&, const DomainSummary&) = default;
};

/// "a:{b} a':-".
std::string render_summary(const Att& d, const DomainSummary& summary);

/// Throws Error if `d` is not deterministic or has more than 62 inherited
/// attributes.
DomainSummary summary_transition(const Att& d, const std::string& symbol,
                                 const std::vector<DomainSummary>& children);

/// Whether a0 grounds at the root given the root's summary. Throws Error if
/// R_# is ambiguous.
bool root_accepts(const Att& d, const DomainSummary& summary);

/// Automaton over d's input alphabet with L = dom(d). States are named
/// d0, d1, ... in discovery order; `summaries`, if given, receives the
/// summary of each state.
BottomUpAutomaton datt_domain_automaton(
    const Att& d, std::vector<DomainSummary>* summaries = nullptr);

/// Automaton over the look-around's input alphabet accepting exactly the
/// trees on which eval_dattU grounds.
BottomUpAutomaton dattU_domain_automaton(const AttWithLookAround& d);

}  // namespace attu

#endif  // ATTU_DOMAIN_HPP_
