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


// Semantics of atts and relabelings.
//
// Addresses inside this module are relative to the real input root (the
// root is the empty address). Occurrences are rendered for users with the
// virtual root marker as node 1, so the root's synthesized attribute a is
// shown as a(1) and the inherited b of its second child as b(1.2).

#ifndef ATTU_EVAL_HPP_
#define ATTU_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "attu/model.hpp"
#include "attu/trees.hpp"

namespace attu {

struct AttrOccurrence {
  std::string attr;
  NodeAddress node;

  friend bool operator==(const AttrOccurrence&, const AttrOccurrence&) = default;
  friend auto operator<=>(const AttrOccurrence&, const AttrOccurrence&) = default;
};

/// "a(1.2)": the node is shown below the root marker.
std::string render_occurrence(const AttrOccurrence& occ);

/// Output tree whose leaves may be attribute occurrences.
struct SententialForm {
  std::string label;  // output symbol, or attribute name when occurrence
  bool occurrence = false;
  NodeAddress node;  // occurrences only
  std::vector<SententialForm> children;

  static SententialForm of(const AttrOccurrence& occ);
  bool ground() const;
  /// Only valid for ground forms.
  Tree to_tree() const;

  friend bool operator==(const SententialForm&, const SententialForm&) = default;
};

std::string render_form(const SententialForm& t);

/// Identifies a rule: `symbol` is an input symbol or "#" for R_#.
struct RuleLocator {
  std::string symbol;
  std::size_t index = 0;

  friend bool operator==(const RuleLocator&, const RuleLocator&) = default;
};

std::string render_locator(const Att& a, const RuleLocator& loc);

struct DerivationStep {
  SententialForm form;
  RuleLocator rule;
  AttrOccurrence rewritten;
};

enum class LeafSelection { kAll, kLeftmost };

/// One-step successors of `t` on input `s`. With kLeftmost only the
/// leftmost attribute leaf is rewritten.
std::vector<DerivationStep> derivation_step(
    const Att& a, const Tree& s, const SententialForm& t,
    LeafSelection selection = LeafSelection::kAll);

struct EvalOutcome {
  enum class Kind { kGround, kStuck, kDivergent };

  Kind kind = Kind::kStuck;
  Tree output;                        // kGround
  AttrOccurrence stuck;               // kStuck
  std::vector<AttrOccurrence> cycle;  // kDivergent; first == last

  bool ground() const { return kind == Kind::kGround; }
  std::string render() const;
};

/// Demand-driven evaluation of a deterministic att. Throws Error if `d` is
/// not deterministic.
EvalOutcome eval_datt(const Att& d, const Tree& s);

/// Leftmost derivation from a0(1), following the first applicable rule at
/// each step. Stops at a ground form, a stuck leaf, a repeated form or
/// after `max_steps` steps.
std::vector<DerivationStep> trace_derivation(const Att& a, const Tree& s,
                                             std::size_t max_steps = 1000);

// ------------------------------------------------------------------------
// Relabelings

struct BottomUpRun {
  int state = -1;
  bool final = false;
  Tree output;
};

std::optional<BottomUpRun> run_bottomup_relabeling(const BottomUpRelabeling& b,
                                                   const Tree& s);

/// Every output over every initial state and rule choice.
TreeSet run_topdown_relabeling_all(const TopDownRelabeling& t, const Tree& s);

/// Output of a deterministic top-down relabeling, if its run is complete.
std::optional<Tree> run_topdown_deterministic(const TopDownRelabeling& t,
                                              const Tree& s);

/// Whether some complete run of `t` on `s` produces `r`.
bool topdown_accepts_pair(const TopDownRelabeling& t, const Tree& s,
                          const Tree& r);
/// Whether `t` has a complete run on `s`.
bool topdown_in_domain(const TopDownRelabeling& t, const Tree& s);

std::optional<Tree> run_lookaround(const LookAround& u, const Tree& s);

/// Absent when `s` is outside the look-around's domain.
std::optional<EvalOutcome> eval_dattU(const AttWithLookAround& d,
                                      const Tree& s);

// ------------------------------------------------------------------------
// Nondeterministic oracles

/// Outputs of uniform translations of `a` on `s`. Throws Error if R_# is
/// ambiguous.
TreeSet enumerate_uniform(const Att& a, const Tree& s);

/// Same set, computed by evaluating every assignment of an unambiguous rule
/// subset to every node. Exponential; small trees only.
TreeSet enumerate_uniform_exhaustive(const Att& a, const Tree& s);

/// Outputs of the deterministic `applier` over every output of the top-down
/// relabeling `t` on `s`, with labels chosen lazily as nodes are visited.
TreeSet composed_fiber(const TopDownRelabeling& t, const Att& applier,
                       const Tree& s);

/// Same set by running `applier` on every member of
/// run_topdown_relabeling_all(t, s).
TreeSet composed_fiber_exhaustive(const TopDownRelabeling& t,
                                  const Att& applier, const Tree& s);

struct BoundedResult {
  TreeSet outputs;
  bool complete = false;   // the search ran out of forms before the budget
  std::size_t expanded = 0;
};

/// Breadth-first search over sentential forms from a0(1). Forms are
/// deduplicated; `budget` bounds the number of forms expanded.
BoundedResult enumerate_derivations_bounded(const Att& a, const Tree& s,
                                            std::size_t budget);

/// Exact test whether (s, target) is in the translation of `a`. Terminates
/// for every att, circular ones included.
bool derives(const Att& a, const Tree& s, const Tree& target);

/// Fiber of an att with look-around: the uniform fiber of its core on the
/// look-around output (empty outside the look-around's domain).
TreeSet enumerate_uniform_attU(const AttWithLookAround& a, const Tree& s);

}  // namespace attu

#endif  // ATTU_EVAL_HPP_
