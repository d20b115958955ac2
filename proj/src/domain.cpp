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


#include "attu/domain.hpp"

#include <set>
#include <tuple>

namespace attu {

int BottomUpAutomaton::add_state(const std::string& state_name,
                                 bool accepting) {
  if (find_state(state_name))
    throw Error("duplicate state '" + state_name + "'");
  states_.push_back(state_name);
  accepting_.push_back(accepting);
  return static_cast<int>(states_.size() - 1);
}

std::optional<int> BottomUpAutomaton::find_state(
    const std::string& state_name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == state_name) return static_cast<int>(i);
  return std::nullopt;
}

void BottomUpAutomaton::add_transition(BuKey key, int target) {
  auto [it, inserted] = transitions_.emplace(std::move(key), target);
  if (!inserted)
    throw Error("automaton '" + name + "' has two transitions for symbol '" +
                it->first.symbol + "' with the same child states");
}

std::optional<int> BottomUpAutomaton::next(const BuKey& key) const {
  auto it = transitions_.find(key);
  if (it == transitions_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> BottomUpAutomaton::run(const Tree& s) const {
  BuKey key{s.label, {}};
  for (const auto& c : s.children) {
    auto r = run(c);
    if (!r) return std::nullopt;
    key.children.push_back(*r);
  }
  return next(key);
}

bool BottomUpAutomaton::accepts(const Tree& s) const {
  auto r = run(s);
  return r && is_accepting(*r);
}

bool automaton_accepts(const BottomUpAutomaton& m, const Tree& s) {
  return m.accepts(s);
}

void for_each_reachable_key(const RankedAlphabet& alphabet,
                            const std::function<std::size_t()>& state_count,
                            const std::function<void(const BuKey&)>& visit) {
  std::set<BuKey> done;
  for (;;) {
    const std::size_t n = state_count();
    for (const auto& [symbol, rank] : alphabet) {
      if (rank > 0 && n == 0) continue;
      std::vector<int> tuple(rank, 0);
      for (;;) {
        BuKey key{symbol, tuple};
        if (done.insert(key).second) visit(key);
        int i = rank - 1;
        while (i >= 0 && ++tuple[i] == static_cast<int>(n)) tuple[i--] = 0;
        if (i < 0) break;
      }
    }
    if (state_count() == n) return;
  }
}

void saturate(BottomUpAutomaton& m,
              const std::function<std::optional<int>(const std::string&,
                                                     const std::vector<int>&)>&
                  step) {
  for_each_reachable_key(
      m.alphabet, [&] { return m.state_count(); },
      [&](const BuKey& key) {
        if (m.next(key)) return;
        if (auto target = step(key.symbol, key.children))
          m.add_transition(key, *target);
      });
}

std::string render_summary(const Att& d, const DomainSummary& summary) {
  std::string out;
  for (std::size_t a = 0; a < summary.entries.size(); ++a) {
    if (a) out += ' ';
    out += d.syn.at(a) + ":";
    if (!summary.defined(a)) {
      out += '-';
      continue;
    }
    out += '{';
    bool first = true;
    for (std::size_t b = 0; b < d.inh.size(); ++b) {
      if (!(summary.entries[a] >> b & 1)) continue;
      if (!first) out += ',';
      first = false;
      out += d.inh[b];
    }
    out += '}';
  }
  return out;
}

// ------------------------------------------------------------------------
// Abstract evaluation at one node

namespace {

struct RuleIndex {
  // (synthesized?, attribute, child) -> the unique rule
  std::map<std::tuple<bool, std::string, int>, const Rule*> by_lhs;

  explicit RuleIndex(const std::vector<Rule>& rules) {
    for (const auto& r : rules)
      by_lhs.emplace(std::make_tuple(r.lhs.synthesized, r.lhs.attr, r.lhs.child),
                     &r);
  }

  const Rule* find(const Lhs& lhs) const {
    auto it = by_lhs.find({lhs.synthesized, lhs.attr, lhs.child});
    return it == by_lhs.end() ? nullptr : it->second;
  }
};

class SummaryEngine {
 public:
  explicit SummaryEngine(const Att& d) : d_(d), root_(d.root_rules) {
    if (!is_deterministic(d))
      throw Error("att '" + d.name + "' is not deterministic");
    if (d.inh.size() > 62)
      throw Error("too many inherited attributes for a domain summary");
    for (std::size_t i = 0; i < d.syn.size(); ++i) syn_[d.syn[i]] = i;
    for (std::size_t i = 0; i < d.inh.size(); ++i) inh_[d.inh[i]] = i;
    for (const auto& [sym, list] : d.rules) tables_.emplace(sym, RuleIndex(list));
  }

  const Att& att() const { return d_; }

  DomainSummary step(const std::string& symbol,
                     const std::vector<DomainSummary>& kids) const {
    auto it = tables_.find(symbol);
    static const RuleIndex kEmpty({});
    Node node{it == tables_.end() ? kEmpty : it->second, kids, {}, {}};
    DomainSummary out;
    for (const auto& a : d_.syn) {
      const Rule* r = node.rules.find(Lhs::syn(a));
      auto v = r ? term(node, r->rhs) : std::nullopt;
      out.entries.push_back(v ? *v : -1);
    }
    return out;
  }

  bool accepts(const DomainSummary& summary) const {
    std::vector<DomainSummary> kids{summary};
    Node node{root_, kids, {}, {}};
    return child_syn(node, 1, d_.initial).has_value();
  }

 private:
  // Abstract occurrences: (0, a, i) for a(i), (1, b, i) for b at child i.
  using Key = std::tuple<int, std::string, int>;
  using Value = std::optional<std::int64_t>;

  struct Node {
    const RuleIndex& rules;
    const std::vector<DomainSummary>& kids;
    std::map<Key, Value> memo;
    std::set<Key> on_stack;
  };

  Value term(Node& node, const RhsTerm& t) const {
    switch (t.kind) {
      case RhsTerm::Kind::kInh:
        return std::int64_t{1} << inh_.at(t.name);
      case RhsTerm::Kind::kSyn:
        return child_syn(node, t.child, t.name);
      case RhsTerm::Kind::kOutput:
        break;
    }
    std::int64_t acc = 0;
    for (const auto& arg : t.args) {
      Value v = term(node, arg);
      if (!v) return std::nullopt;
      acc |= *v;
    }
    return acc;
  }

  template <typename F>
  Value memoized(Node& node, const Key& key, F compute) const {
    if (auto it = node.memo.find(key); it != node.memo.end()) return it->second;
    if (!node.on_stack.insert(key).second) return std::nullopt;  // cycle
    Value v = compute();
    node.on_stack.erase(key);
    node.memo[key] = v;
    return v;
  }

  Value child_syn(Node& node, int i, const std::string& a) const {
    return memoized(node, {0, a, i}, [&]() -> Value {
      std::int64_t beta = node.kids.at(i - 1).entries.at(syn_.at(a));
      if (beta < 0) return std::nullopt;
      std::int64_t acc = 0;
      for (std::size_t b = 0; b < d_.inh.size(); ++b) {
        if (!(beta >> b & 1)) continue;
        Value v = resolve(node, d_.inh[b], i);
        if (!v) return std::nullopt;
        acc |= *v;
      }
      return acc;
    });
  }

  Value resolve(Node& node, const std::string& b, int i) const {
    return memoized(node, {1, b, i}, [&]() -> Value {
      const Rule* r = node.rules.find(Lhs::inh(b, i));
      if (!r) return std::nullopt;
      return term(node, r->rhs);
    });
  }

  const Att& d_;
  RuleIndex root_;
  std::map<std::string, std::size_t> syn_;
  std::map<std::string, std::size_t> inh_;
  std::map<std::string, RuleIndex> tables_;
};

// Lazily built domain automaton of a deterministic att.
class DomainBuilder {
 public:
  explicit DomainBuilder(const Att& d) : engine_(d) {
    m_.name = d.name + "_domain";
    m_.alphabet = d.input;
  }

  BottomUpAutomaton& automaton() { return m_; }
  const std::vector<DomainSummary>& summaries() const { return summaries_; }

  int state_of(const DomainSummary& s) {
    auto [it, inserted] = ids_.emplace(s, static_cast<int>(summaries_.size()));
    if (inserted) {
      summaries_.push_back(s);
      m_.add_state("d" + std::to_string(it->second), engine_.accepts(s));
    }
    return it->second;
  }

  int step(const std::string& symbol, const std::vector<int>& kids) {
    BuKey key{symbol, kids};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<DomainSummary> sums;
    for (int k : kids) sums.push_back(summaries_.at(k));
    int target = state_of(engine_.step(symbol, sums));
    cache_.emplace(std::move(key), target);
    return target;
  }

  bool accepting(int state) const { return m_.is_accepting(state); }

 private:
  SummaryEngine engine_;
  BottomUpAutomaton m_;
  std::map<DomainSummary, int> ids_;
  std::vector<DomainSummary> summaries_;
  std::map<BuKey, int> cache_;
};

}  // namespace

DomainSummary summary_transition(const Att& d, const std::string& symbol,
                                 const std::vector<DomainSummary>& children) {
  auto rank = d.input.find(symbol);
  if (!rank || static_cast<std::size_t>(*rank) != children.size())
    throw Error("summary_transition: '" + symbol + "' expects " +
                (rank ? std::to_string(*rank) : std::string("no")) +
                " children");
  return SummaryEngine(d).step(symbol, children);
}

bool root_accepts(const Att& d, const DomainSummary& summary) {
  if (!root_rules_unambiguous(d))
    throw Error("att '" + d.name + "' has ambiguous root rules");
  return SummaryEngine(d).accepts(summary);
}

BottomUpAutomaton datt_domain_automaton(const Att& d,
                                        std::vector<DomainSummary>* summaries) {
  DomainBuilder builder(d);
  saturate(builder.automaton(),
           [&](const std::string& symbol, const std::vector<int>& kids) {
             return std::optional<int>(builder.step(symbol, kids));
           });
  if (summaries) *summaries = builder.summaries();
  return builder.automaton();
}

BottomUpAutomaton dattU_domain_automaton(const AttWithLookAround& d) {
  const BottomUpRelabeling& b = d.around.bottom;
  const TopDownRelabeling& t = d.around.top;
  if (!t.is_deterministic())
    throw Error("look-around '" + d.around.name +
                "' has a nondeterministic top-down part");
  DomainBuilder core(d.core);
  const int q0 = t.initials().front();

  BottomUpAutomaton m;
  m.name = d.core.name + "_domain";
  m.alphabet = d.around.input();
  // State: bottom-up state of the look-around, and for each top-down state
  // the core-domain state reached on the relabeled subtree (-1: no run).
  using Key = std::pair<int, std::vector<int>>;
  std::map<Key, int> ids;
  std::vector<Key> keys;
  auto state_of = [&](Key key) {
    auto [it, inserted] = ids.emplace(key, static_cast<int>(keys.size()));
    if (inserted) {
      const auto& table = key.second;
      bool acc = b.is_final(key.first) && table[q0] >= 0 &&
                 core.accepting(table[q0]);
      keys.push_back(std::move(key));
      m.add_state("u" + std::to_string(it->second), acc);
    }
    return it->second;
  };

  saturate(m, [&](const std::string& symbol,
                  const std::vector<int>& kids) -> std::optional<int> {
    BuKey bkey{symbol, {}};
    for (int k : kids) bkey.children.push_back(keys[k].first);
    const BuTarget* target = b.find(bkey);
    if (!target) return std::nullopt;
    std::vector<int> table(t.state_count(), -1);
    for (std::size_t q = 0; q < t.state_count(); ++q) {
      const auto& idx = t.rules_for(static_cast<int>(q), target->output);
      if (idx.empty()) continue;
      const TdRule& r = t.rules()[idx.front()];
      std::vector<int> core_kids;
      bool ok = r.child_states.size() == kids.size();
      for (std::size_t i = 0; ok && i < kids.size(); ++i) {
        int c = keys[kids[i]].second[r.child_states[i]];
        ok = c >= 0;
        core_kids.push_back(c);
      }
      if (ok) table[q] = core.step(r.output, core_kids);
    }
    return state_of({target->state, std::move(table)});
  });
  return m;
}

}  // namespace attu
