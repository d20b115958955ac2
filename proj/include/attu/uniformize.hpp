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


// Uniformization of atts.
//
// A top-down relabeling T guesses, at every node, one unambiguous subset of
// that node's rules and writes it into the label as sigma@{i,j,...}. The
// deterministic rule applier D' evaluates with exactly the rules named in
// the label. The range of T is cut down to the domain of D', and look-ahead
// then lets a deterministic relabeling pick the first annotation that still
// leads to an output.

#ifndef ATTU_UNIFORMIZE_HPP_
#define ATTU_UNIFORMIZE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "attu/domain.hpp"
#include "attu/model.hpp"

namespace attu {

struct AnnotatedSymbol {
  std::string base;
  std::vector<std::size_t> subset;  // ascending rule indices into R_base

  /// "f@{0,2}", or "f@{}" for the empty subset.
  std::string name() const;
  /// Inverse of name(); nullopt for names without an "@{...}" suffix.
  static std::optional<AnnotatedSymbol> parse(const std::string& name);

  friend bool operator==(const AnnotatedSymbol&, const AnnotatedSymbol&) = default;
};

/// Single state q; q(s(...)) -> s@{R}(q(x1),...) for every unambiguous R.
TopDownRelabeling build_annotation_relabeling(const Att& a);

/// Deterministic att over annotated symbols using the rules named in each
/// label; R_# is copied.
Att build_rule_applier(const Att& a);

/// Product of `t` with `m` over t's output: states "q&d", keeping exactly
/// the outputs accepted by m.
TopDownRelabeling restrict_range(const TopDownRelabeling& t,
                                 const BottomUpAutomaton& m);

/// Bottom-up relabeling whose state at a node is the set of t-states with a
/// complete run on the subtree. The node is relabeled "s[P|P1|...|Pk]" with
/// the state indices of the node and its children.
/// `members`, if given, receives the t-states behind each of its states.
BottomUpRelabeling state_domain_lookahead(
    const TopDownRelabeling& t,
    std::vector<std::vector<int>>* members = nullptr);

/// Deterministic look-around realizing a uniformizer of t. At each node the
/// first rule (in declaration order) whose child states can still complete
/// is used; the start state is the first initial state that can complete.
LookAround uniformize_topdown(const TopDownRelabeling& t);

struct UniformizerBundle {
  Att normalized;
  TopDownRelabeling annotation;
  Att applier;
  BottomUpAutomaton applier_domain;
  TopDownRelabeling restricted;
  LookAround around;
  AttWithLookAround result;
};

/// Throws Error for invalid atts and for input symbols containing "@".
UniformizerBundle uniformize_att(const Att& a);

/// Uniformizes the core and composes the given look-around in front.
AttWithLookAround uniformize_attU(const AttWithLookAround& a);

}  // namespace attu

#endif  // ATTU_UNIFORMIZE_HPP_
