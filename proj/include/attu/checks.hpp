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


// Executable property checks over all input trees up to a size bound.
//
// Fibers are compared as sets of canonical renderings. Nondeterministic
// atts are explored with the budgeted derivation search; when a search is
// cut off the check falls back to exact membership tests, and reports
// "inconclusive" if those cannot decide.

#ifndef ATTU_CHECKS_HPP_
#define ATTU_CHECKS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "attu/dsl.hpp"
#include "attu/model.hpp"
#include "attu/trees.hpp"

namespace attu {

enum class Verdict { kPass, kFail, kPreconditionFailed, kInconclusive };

/// "pass", "fail", "precondition-failed", "inconclusive".
std::string verdict_name(Verdict v);

struct Counterexample {
  Tree input;
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  Verdict verdict = Verdict::kPass;
  std::string message;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> objects;  // DSL of every checked object
  std::size_t trees = 0;
  double seconds = 0;

  bool passed() const { return verdict == Verdict::kPass; }
  /// Deterministic text; the DSL of the objects is included unless the
  /// check passed. Timing only on request.
  std::string render(bool timing = false) const;
};

struct CheckOptions {
  std::size_t max_size = 5;
  std::size_t budget = 20000;  // forms per bounded derivation search
};

struct Fiber {
  TreeSet trees;
  bool exact = true;
};

const RankedAlphabet& input_alphabet(const Evaluable& x);
const RankedAlphabet& output_alphabet(const Evaluable& x);
std::string evaluable_dsl(const Evaluable& x);

/// Outputs of `x` on `s`: eval for deterministic cores, the bounded search
/// otherwise (inexact when it runs out of budget).
Fiber fiber_of(const Evaluable& x, const Tree& s, std::size_t budget);

/// Exact membership of (s, t) in the translation of `x`.
bool in_translation(const Evaluable& x, const Tree& s, const Tree& t);

/// Uniformizes `a` and checks, on every input, that the result has one
/// outcome, that a ground output is a uniform output of `a`, and that it is
/// ground exactly when `a` has a uniform output.
CheckReport check_uniformizer(const Att& a, const CheckOptions& opts = {});

/// Equal fibers on every input. Throws Error if the alphabets differ.
CheckReport check_equivalence(const Evaluable& x, const Evaluable& y,
                              const CheckOptions& opts = {});

/// Checks that the chain is functional on the inputs (precondition-failed
/// otherwise), then builds one deterministic stage per stage, restricting
/// each to outputs in the domain of the next, and compares the composed
/// fibers. Throws Error if the alphabets do not chain.
CheckReport check_composition(const std::vector<Evaluable>& chain,
                              const CheckOptions& opts = {});

/// Annotating with unambiguous rule subsets and then applying them gives
/// exactly the uniform fibers.
CheckReport check_lemma2(const Att& a, const CheckOptions& opts = {});

/// The look-ahead uniformizer of `t` is deterministic, stays inside the
/// relation of `t` and has the same domain.
CheckReport check_prop4(const TopDownRelabeling& t,
                        const CheckOptions& opts = {});

}  // namespace attu

#endif  // ATTU_CHECKS_HPP_
