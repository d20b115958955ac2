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


#include "attu/compose.hpp"

#include <deque>
#include <map>
#include <set>

namespace attu {

BottomUpRelabeling compose_bottomup(const BottomUpRelabeling& b1,
                                    const BottomUpRelabeling& b2) {
  if (!(b1.output == b2.input))
    throw Error("compose_bottomup: '" + b2.name + "' does not read the output of '" +
                b1.name + "'");
  BottomUpRelabeling out;
  out.name = b1.name + "_" + b2.name;
  out.input = b1.input;
  out.output = b2.output;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto state_of = [&](int p1, int p2) {
    auto [it, inserted] = ids.emplace(std::make_pair(p1, p2),
                                      static_cast<int>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(p1, p2);
      out.add_state("[" + b1.states()[p1] + "|" + b2.states()[p2] + "]",
                    b1.is_final(p1) && b2.is_final(p2));
    }
    return it->second;
  };
  for_each_reachable_key(
      out.input, [&] { return out.state_count(); },
      [&](const BuKey& key) {
        BuKey k1{key.symbol, {}};
        for (int c : key.children) k1.children.push_back(pairs[c].first);
        const BuTarget* t1 = b1.find(k1);
        if (!t1) return;
        BuKey k2{t1->output, {}};
        for (int c : key.children) k2.children.push_back(pairs[c].second);
        const BuTarget* t2 = b2.find(k2);
        if (!t2) return;
        int p = state_of(t1->state, t2->state);
        out.add_transition(key, {p, t2->output});
      });
  return out;
}

LookAround compose_lookarounds(const LookAround& u1, const LookAround& u2) {
  if (!(u1.output() == u2.input()))
    throw Error("compose_lookarounds: '" + u2.name +
                "' does not read the output of '" + u1.name + "'");
  const TopDownRelabeling& t1 = u1.top;
  const BottomUpRelabeling& b2 = u2.bottom;
  const TopDownRelabeling& t2 = u2.top;
  if (!t1.is_deterministic() || !t2.is_deterministic())
    throw Error("compose_lookarounds: top-down parts must be deterministic");
  const std::size_t nq1 = t1.state_count();

  auto t1_rule = [&](int q, const std::string& symbol) -> const TdRule* {
    const auto& idx = t1.rules_for(q, symbol);
    return idx.empty() ? nullptr : &t1.rules()[idx.front()];
  };

  // Fold T1 into B2: the state at a node maps every T1 state to the B2
  // state reached on T1's output from there, or -1.
  BottomUpRelabeling fold;
  fold.name = u1.name + "_" + u2.name + "_fold";
  fold.input = t1.input;
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> tables;
  auto table_of = [&](std::vector<int> table) {
    auto [it, inserted] = ids.emplace(table, static_cast<int>(tables.size()));
    if (inserted) {
      tables.push_back(std::move(table));
      fold.add_state("t" + std::to_string(it->second), true);
    }
    return it->second;
  };
  for_each_reachable_key(
      fold.input, [&] { return fold.state_count(); },
      [&](const BuKey& key) {
        std::vector<int> table(nq1, -1);
        for (std::size_t q = 0; q < nq1; ++q) {
          const TdRule* r = t1_rule(static_cast<int>(q), key.symbol);
          if (!r || r->child_states.size() != key.children.size()) continue;
          BuKey k2{r->output, {}};
          bool ok = true;
          for (std::size_t i = 0; ok && i < key.children.size(); ++i) {
            int c = tables[key.children[i]][r->child_states[i]];
            ok = c >= 0;
            k2.children.push_back(c);
          }
          if (!ok) continue;
          if (const BuTarget* t = b2.find(k2)) table[q] = t->state;
        }
        int p = table_of(std::move(table));
        std::string label = key.symbol + "[" + std::to_string(p);
        for (int c : key.children) label += "|" + std::to_string(c);
        label += "]";
        fold.output.add(label, static_cast<int>(key.children.size()));
        fold.add_transition(key, {p, label});
      });

  LookAround out;
  out.name = u1.name + "_" + u2.name;
  out.bottom = compose_bottomup(u1.bottom, fold);

  TopDownRelabeling& top = out.top;
  top.name = out.name + "_top";
  top.input = fold.output;
  top.output = t2.output;
  std::vector<std::string> pair_names;
  for (const auto& a : t1.states())
    for (const auto& b : t2.states()) pair_names.push_back("[" + a + "|" + b + "]");
  const int init = top.add_state(fresh_name("init", pair_names));
  top.add_initial(init);
  const int q1_0 = t1.initials().front();
  const int q2_0 = t2.initials().front();

  // Pair states are created as they become reachable from init.
  std::map<std::pair<int, int>, int> pair_ids;
  std::deque<std::pair<int, int>> work;
  auto pair_of = [&](int a, int b) {
    auto [it, inserted] = pair_ids.emplace(std::make_pair(a, b), 0);
    if (inserted) {
      it->second = top.add_state("[" + t1.states()[a] + "|" + t2.states()[b] + "]");
      work.emplace_back(a, b);
    }
    return it->second;
  };

  // Rule of the pair (q1, q2) at a fold transition, if T1, B2 and T2 all
  // have one.
  auto step = [&](int q1, int q2, const BuKey& key,
                  const BuTarget& target) -> std::optional<TdRule> {
    const TdRule* r1 = t1_rule(q1, key.symbol);
    if (!r1 || r1->child_states.size() != key.children.size()) return {};
    BuKey k2{r1->output, {}};
    for (std::size_t i = 0; i < key.children.size(); ++i) {
      int c = tables[key.children[i]][r1->child_states[i]];
      if (c < 0) return {};
      k2.children.push_back(c);
    }
    const BuTarget* bt = b2.find(k2);
    if (!bt) return {};
    const auto& idx = t2.rules_for(q2, bt->output);
    if (idx.empty()) return {};
    const TdRule& r2 = t2.rules()[idx.front()];
    if (r2.child_states.size() != key.children.size()) return {};
    TdRule r{-1, target.output, r2.output, {}};
    for (std::size_t i = 0; i < key.children.size(); ++i)
      r.child_states.push_back(pair_of(r1->child_states[i], r2.child_states[i]));
    return r;
  };

  for (const auto& [key, target] : fold.transitions()) {
    int root_b2 = tables[target.state][q1_0];
    if (root_b2 < 0 || !b2.is_final(root_b2)) continue;
    if (auto r = step(q1_0, q2_0, key, target)) {
      r->state = init;
      top.add_rule(std::move(*r));
    }
  }
  while (!work.empty()) {
    auto [q1, q2] = work.front();
    work.pop_front();
    int id = pair_ids.at({q1, q2});
    for (const auto& [key, target] : fold.transitions()) {
      if (auto r = step(q1, q2, key, target)) {
        r->state = id;
        top.add_rule(std::move(*r));
      }
    }
  }
  return out;
}

// ------------------------------------------------------------------------
// Output restriction

namespace {

class OutputRestrictor {
 public:
  OutputRestrictor(const Att& a, const BottomUpAutomaton& m) : a_(a), m_(m) {
    for (const auto& [key, target] : m.transitions())
      inverse_[{key.symbol, target}].push_back(key.children);
  }

  Att run() {
    Att out;
    out.name = a_.name + "_restricted";
    out.input = a_.input;
    out.output = a_.output;
    std::vector<std::string> taken = a_.syn;
    taken.insert(taken.end(), a_.inh.begin(), a_.inh.end());
    out.initial = fresh_name(a_.initial + "&F", taken);
    out.syn.push_back(out.initial);

    std::vector<int> accepting;
    for (std::size_t d = 0; d < m_.state_count(); ++d)
      if (m_.is_accepting(static_cast<int>(d))) accepting.push_back(d);
    for (const auto& [sym, rules] : a_.rules)
      for (const Rule& r : rules)
        if (r.lhs == Lhs::syn(a_.initial))
          for (int d : accepting)
            for (auto& v : variants(r.rhs, d))
              out.rules[sym].push_back({Lhs::syn(out.initial), std::move(v)});

    while (!work_.empty()) {
      auto [attr, d] = work_.front();
      work_.pop_front();
      std::string name = paired(attr, d);
      bool syn = a_.is_syn(attr);
      (syn ? out.syn : out.inh).push_back(name);
      for (const auto& [sym, rules] : a_.rules) {
        for (const Rule& r : rules) {
          if (r.lhs.attr != attr) continue;
          Lhs lhs = syn ? Lhs::syn(name) : Lhs::inh(name, r.lhs.child);
          for (auto& v : variants(r.rhs, d))
            out.rules[sym].push_back({lhs, std::move(v)});
        }
      }
      if (syn) continue;
      for (const Rule& r : a_.root_rules)
        if (r.lhs.attr == attr)
          for (auto& v : variants(r.rhs, d))
            out.root_rules.push_back({Lhs::inh(name, 1), std::move(v)});
    }
    return out;
  }

 private:
  std::string paired(const std::string& attr, int d) const {
    return attr + "&" + m_.states()[d];
  }

  std::string use(const std::string& attr, int d) {
    if (seen_.insert({attr, d}).second) work_.emplace_back(attr, d);
    return paired(attr, d);
  }

  // Copies of `t` whose output runs m into state d, with every attribute
  // leaf paired with the state its output must reach.
  std::vector<RhsTerm> variants(const RhsTerm& t, int d) {
    switch (t.kind) {
      case RhsTerm::Kind::kSyn:
        return {RhsTerm::syn(use(t.name, d), t.child)};
      case RhsTerm::Kind::kInh:
        return {RhsTerm::inh(use(t.name, d))};
      case RhsTerm::Kind::kOutput:
        break;
    }
    std::vector<RhsTerm> out;
    auto it = inverse_.find({t.name, d});
    if (it == inverse_.end()) return out;
    for (const auto& kids : it->second) {
      if (kids.size() != t.args.size()) continue;
      std::vector<RhsTerm> partial{RhsTerm::output(t.name)};
      for (std::size_t i = 0; i < kids.size() && !partial.empty(); ++i) {
        auto arg = variants(t.args[i], kids[i]);
        std::vector<RhsTerm> next;
        for (const auto& p : partial)
          for (const auto& v : arg) {
            RhsTerm grown = p;
            grown.args.push_back(v);
            next.push_back(std::move(grown));
          }
        partial = std::move(next);
      }
      for (auto& p : partial) out.push_back(std::move(p));
    }
    return out;
  }

  const Att& a_;
  const BottomUpAutomaton& m_;
  std::map<std::pair<std::string, int>, std::vector<std::vector<int>>> inverse_;
  std::set<std::pair<std::string, int>> seen_;
  std::deque<std::pair<std::string, int>> work_;
};

}  // namespace

Att restrict_att_output(const Att& a, const BottomUpAutomaton& m) {
  for (const auto& [sym, rank] : a.output) {
    auto r = m.alphabet.find(sym);
    if (!r || *r != rank)
      throw Error("restrict_att_output: automaton '" + m.name +
                  "' does not read output symbol '" + sym + "'");
  }
  return OutputRestrictor(a, m).run();
}

}  // namespace attu
