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


#include "attu/generate.hpp"

#include <algorithm>
#include <random>

namespace attu {

namespace {

const char* const k_input_names[] = {"e", "f", "g", "h", "k", "m", "n", "r"};
const int k_input_ranks[] = {0, 2, 1};
const char* const k_output_names[] = {"c", "d", "p", "q", "s", "t", "u", "v"};
const int k_output_ranks[] = {0, 1, 2};

RankedAlphabet input_alphabet(int n) {
  RankedAlphabet out;
  for (int i = 0; i < n && i < 8; ++i) out.add(k_input_names[i], k_input_ranks[i % 3]);
  return out;
}

class Generator {
 public:
  Generator(std::uint64_t seed, const RandomSizes& sizes, bool deterministic)
      : rng_(seed), sizes_(sizes), deterministic_(deterministic) {}

  Att run(const std::string& name) {
    Att a;
    a.name = name;
    a.input = input_alphabet(std::max(1, sizes_.input_symbols));
    for (int i = 0; i < std::max(1, sizes_.output_symbols) && i < 8; ++i)
      a.output.add(k_output_names[i], k_output_ranks[i % 3]);
    for (int i = 0; i < std::max(1, sizes_.syn); ++i)
      a.syn.push_back("a" + std::to_string(i));
    for (int i = 0; i < sizes_.inh; ++i) a.inh.push_back("b" + std::to_string(i));
    a.initial = a.syn.front();
    out_ = &a;
    for (const auto& [sym, rank] : a.input) {
      std::vector<Lhs> lhss;
      for (const auto& s : a.syn) lhss.push_back(Lhs::syn(s));
      for (int i = 1; i <= rank; ++i)
        for (const auto& b : a.inh) lhss.push_back(Lhs::inh(b, i));
      for (const Lhs& lhs : lhss)
        for (int n = rule_count(); n > 0; --n)
          add_new(a.rules[sym], {lhs, term(2, rank, false)});
    }
    for (const auto& b : a.inh) {
      int n = deterministic_ || pick(100) >= 15 ? 1 : 2;
      for (int i = 0; i < n; ++i)
        add_new(a.root_rules, {Lhs::inh(b, 1), term(2, 1, true)});
    }
    return a;
  }

 private:
  static void add_new(std::vector<Rule>& rules, Rule r) {
    if (std::find(rules.begin(), rules.end(), r) == rules.end())
      rules.push_back(std::move(r));
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  int rule_count() {
    int max = deterministic_ ? 1 : std::max(1, sizes_.max_rules);
    // Keep missing rules rare enough that most domains are non-empty.
    if (pick(5) == 0) return 0;
    return 1 + pick(max);
  }

  RhsTerm leaf(int rank, bool at_root) {
    std::vector<RhsTerm> options;
    for (const auto& [sym, r] : out_->output)
      if (r == 0) options.push_back(RhsTerm::output(sym));
    for (const auto& s : out_->syn)
      for (int i = 1; i <= rank; ++i) options.push_back(RhsTerm::syn(s, i));
    if (!at_root)
      for (const auto& b : out_->inh) options.push_back(RhsTerm::inh(b));
    return options[pick(static_cast<int>(options.size()))];
  }

  RhsTerm term(int depth, int rank, bool at_root) {
    if (depth <= 1 || pick(2) == 0) return leaf(rank, at_root);
    std::vector<std::pair<std::string, int>> inner;
    for (const auto& [sym, r] : out_->output)
      if (r > 0) inner.emplace_back(sym, r);
    if (inner.empty()) return leaf(rank, at_root);
    const auto& [sym, r] = inner[pick(static_cast<int>(inner.size()))];
    RhsTerm t = RhsTerm::output(sym);
    for (int i = 0; i < r; ++i) t.args.push_back(term(depth - 1, rank, at_root));
    return t;
  }

  std::mt19937_64 rng_;
  RandomSizes sizes_;
  bool deterministic_;
  const Att* out_ = nullptr;
};

}  // namespace

Att random_att(std::uint64_t seed, const RandomSizes& sizes) {
  return Generator(seed, sizes, false).run("random" + std::to_string(seed));
}

Att random_datt(std::uint64_t seed, const RandomSizes& sizes) {
  return Generator(seed, sizes, true).run("drandom" + std::to_string(seed));
}

TopDownRelabeling random_topdown(std::uint64_t seed, int input_symbols,
                                 int states) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  TopDownRelabeling t;
  t.name = "trandom" + std::to_string(seed);
  t.input = input_alphabet(std::max(1, input_symbols));
  for (const auto& [sym, rank] : t.input) {
    t.output.add(sym, rank);
    t.output.add(sym + "'", rank);
  }
  const int n = std::max(1, states);
  for (int q = 0; q < n; ++q) t.add_state("q" + std::to_string(q));
  t.add_initial(0);
  if (n > 1 && pick(2) == 0) t.add_initial(1);
  for (int q = 0; q < n; ++q) {
    for (const auto& [sym, rank] : t.input) {
      int count = pick(6) == 0 ? 0 : 1 + pick(2);
      for (int i = 0; i < count; ++i) {
        TdRule r{q, sym, pick(2) ? sym + "'" : sym, {}};
        for (int k = 0; k < rank; ++k) r.child_states.push_back(pick(n));
        t.add_rule(std::move(r));
      }
    }
  }
  return t;
}

}  // namespace attu
