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


// Closure constructions: composition of bottom-up relabelings and of
// look-arounds, and restriction of an att's outputs to a regular language.

#ifndef ATTU_COMPOSE_HPP_
#define ATTU_COMPOSE_HPP_

#include "attu/domain.hpp"
#include "attu/model.hpp"

namespace attu {

/// Runs b1 then b2. States are "[p1|p2]".
BottomUpRelabeling compose_bottomup(const BottomUpRelabeling& b1,
                                    const BottomUpRelabeling& b2);

/// Look-around applying u1 and then u2.
LookAround compose_lookarounds(const LookAround& u1, const LookAround& u2);

/// Att whose translation keeps the pairs of `a` with output in L(m).
/// Attributes are paired with automaton states ("a&d3"); a fresh initial
/// attribute stands for a0 paired with any accepting state.
Att restrict_att_output(const Att& a, const BottomUpAutomaton& m);

}  // namespace attu

#endif  // ATTU_COMPOSE_HPP_
