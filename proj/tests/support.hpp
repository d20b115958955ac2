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


// Shared helpers for the unit tests.

#ifndef ATTU_TESTS_SUPPORT_HPP_
#define ATTU_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "attu/dsl.hpp"
#include "attu/eval.hpp"
#include "attu/fixtures.hpp"
#include "attu/trees.hpp"

namespace attu::test {

inline Tree T(const std::string& text) { return parse_tree(text); }

inline Tree d_power(int n) {
  Tree t("e");
  for (int i = 0; i < n; ++i) t = Tree("d", {t});
  return t;
}

inline bool has_violation(const std::vector<Violation>& vs,
                          const std::string& needle) {
  for (const auto& v : vs)
    if (v.message.find(needle) != std::string::npos) return true;
  return false;
}

template <class T>
T item(const Document& doc, const std::string& name) {
  for (const auto& it : doc.items)
    if (const T* p = std::get_if<T>(&it); p && p->name == name) return *p;
  throw Error("no item " + name);
}

/// Fiber by bounded search; fails the calling test if the budget is short.
inline TreeSet complete_fiber(const Att& a, const Tree& s,
                              std::size_t budget = 20000) {
  BoundedResult r = enumerate_derivations_bounded(a, s, budget);
  if (!r.complete) throw Error("bounded search incomplete on " + render_tree(s));
  return r.outputs;
}

}  // namespace attu::test

#endif  // ATTU_TESTS_SUPPORT_HPP_
