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


// Random transducers for property tests. Every generator is a pure function
// of its seed and sizes.

#ifndef ATTU_GENERATE_HPP_
#define ATTU_GENERATE_HPP_

#include <cstdint>

#include "attu/model.hpp"

namespace attu {

struct RandomSizes {
  int input_symbols = 3;   // ranks cycle 0, 2, 1, 0, ...
  int output_symbols = 3;  // ranks cycle 0, 1, 2, 0, ...
  int syn = 2;
  int inh = 1;
  int max_rules = 2;       // per left-hand side
};

/// Valid att with right-hand sides of depth at most 2. Some left-hand sides
/// get no rule, some get several, and R_# is occasionally ambiguous.
Att random_att(std::uint64_t seed, const RandomSizes& sizes = {});

/// Like random_att with at most one rule per left-hand side.
Att random_datt(std::uint64_t seed, const RandomSizes& sizes = {});

/// Top-down relabeling over `input_symbols` symbols mapping each symbol to
/// itself or its primed copy. Up to two rules per state and symbol.
TopDownRelabeling random_topdown(std::uint64_t seed, int input_symbols = 3,
                                 int states = 1);

}  // namespace attu

#endif  // ATTU_GENERATE_HPP_
