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


#include "attu/uniformize.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "attu/compose.hpp"

namespace attu {

std::string AnnotatedSymbol::name() const {
  std::string out = base + "@{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(subset[i]);
  }
  return out + "}";
}

std::optional<AnnotatedSymbol> AnnotatedSymbol::parse(const std::string& name) {
  auto at = name.rfind("@{");
  if (at == std::string::npos || at == 0 || name.back() != '}')
    return std::nullopt;
  AnnotatedSymbol out;
  out.base = name.substr(0, at);
  std::string body = name.substr(at + 2, name.size() - at - 3);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    std::string digits = body.substr(pos, end - pos);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      return std::nullopt;
    out.subset.push_back(std::stoul(digits));
    pos = end + 1;
    if (end + 1 == body.size()) return std::nullopt;  // trailing comma
  }
  return out;
}

namespace {

void require_plain_symbols(const Att& a) {
  for (const auto& [sym, rank] : a.input)
    if (sym.find('@') != std::string::npos)
      throw Error("input symbol '" + sym +
                  "' uses the '@' suffix reserved for annotated symbols");
  if (!root_rules_unambiguous(a))
    throw Error("att '" + a.name + "' has ambiguous root rules");
}

}  // namespace

TopDownRelabeling build_annotation_relabeling(const Att& a) {
  require_plain_symbols(a);
  TopDownRelabeling t;
  t.name = a.name + "_annotate";
  t.input = a.input;
  int q = t.add_state("q");
  t.add_initial(q);
  for (const auto& [sym, rank] : a.input) {
    for (auto& subset : unambiguous_subsets(a.rules_at(sym))) {
      std::string label = AnnotatedSymbol{sym, std::move(subset)}.name();
      t.output.add(label, rank);
      t.add_rule({q, sym, label, std::vector<int>(rank, q)});
    }
  }
  return t;
}

Att build_rule_applier(const Att& a) {
  require_plain_symbols(a);
  Att d;
  d.name = a.name + "_apply";
  d.output = a.output;
  d.syn = a.syn;
  d.inh = a.inh;
  d.initial = a.initial;
  d.root_rules = a.root_rules;
  for (const auto& [sym, rank] : a.input) {
    const auto& rules = a.rules_at(sym);
    for (auto& subset : unambiguous_subsets(rules)) {
      std::vector<Rule> chosen;
      for (std::size_t i : subset) chosen.push_back(rules[i]);
      std::string label = AnnotatedSymbol{sym, std::move(subset)}.name();
      d.input.add(label, rank);
      if (!chosen.empty()) d.rules[label] = std::move(chosen);
    }
  }
  return d;
}

TopDownRelabeling restrict_range(const TopDownRelabeling& t,
                                 const BottomUpAutomaton& m) {
  if (!(m.alphabet == t.output))
    throw Error("restrict_range: automaton '" + m.name +
                "' does not read the output alphabet of '" + t.name + "'");
  TopDownRelabeling r;
  r.name = t.name + "_restricted";
  r.input = t.input;
  r.output = t.output;
  const int nm = static_cast<int>(m.state_count());
  auto pair = [nm](int q, int d) { return q * nm + d; };
  for (const auto& q : t.states())
    for (const auto& d : m.states()) r.add_state(q + "&" + d);
  for (int q0 : t.initials())
    for (int d = 0; d < nm; ++d)
      if (m.is_accepting(d)) r.add_initial(pair(q0, d));

  const auto& trans = m.transitions();
  for (const TdRule& rule : t.rules()) {
    for (auto it = trans.lower_bound(BuKey{rule.output, {}});
         it != trans.end() && it->first.symbol == rule.output; ++it) {
      const auto& kids = it->first.children;
      if (kids.size() != rule.child_states.size()) continue;
      TdRule pr{pair(rule.state, it->second), rule.symbol, rule.output, {}};
      for (std::size_t i = 0; i < kids.size(); ++i)
        pr.child_states.push_back(pair(rule.child_states[i], kids[i]));
      r.add_rule(std::move(pr));
    }
  }
  return r;
}

namespace {

// The look-ahead relabeling, plus the state set behind each of its states.
BottomUpRelabeling lookahead(const TopDownRelabeling& t,
                             std::vector<std::vector<char>>& sets) {
  BottomUpRelabeling b;
  b.name = t.name + "_lookahead";
  b.input = t.input;
  const std::size_t nq = t.state_count();
  std::map<std::vector<char>, int> ids;
  auto state_of = [&](std::vector<char> set) {
    auto [it, inserted] = ids.emplace(set, static_cast<int>(sets.size()));
    if (inserted) {
      sets.push_back(std::move(set));
      b.add_state("P" + std::to_string(it->second), true);
    }
    return it->second;
  };
  for_each_reachable_key(
      t.input, [&] { return b.state_count(); },
      [&](const BuKey& key) {
        std::vector<char> set(nq, 0);
        for (std::size_t q = 0; q < nq; ++q) {
          for (std::size_t ri : t.rules_for(static_cast<int>(q), key.symbol)) {
            const TdRule& r = t.rules()[ri];
            if (r.child_states.size() != key.children.size()) continue;
            bool all = true;
            for (std::size_t i = 0; all && i < key.children.size(); ++i)
              all = sets[key.children[i]][r.child_states[i]] != 0;
            if (all) {
              set[q] = 1;
              break;
            }
          }
        }
        int p = state_of(std::move(set));
        std::string label = key.symbol + "[" + std::to_string(p);
        for (int c : key.children) label += "|" + std::to_string(c);
        label += "]";
        b.output.add(label, static_cast<int>(key.children.size()));
        b.add_transition(key, {p, label});
      });
  return b;
}

}  // namespace

BottomUpRelabeling state_domain_lookahead(
    const TopDownRelabeling& t, std::vector<std::vector<int>>* members) {
  std::vector<std::vector<char>> sets;
  BottomUpRelabeling b = lookahead(t, sets);
  if (members) {
    members->clear();
    for (const auto& set : sets) {
      auto& m = members->emplace_back();
      for (std::size_t q = 0; q < set.size(); ++q)
        if (set[q]) m.push_back(static_cast<int>(q));
    }
  }
  return b;
}

LookAround uniformize_topdown(const TopDownRelabeling& t) {
  std::vector<std::vector<char>> sets;
  LookAround u;
  u.name = t.name + "_uniform";
  u.bottom = lookahead(t, sets);

  TopDownRelabeling& s = u.top;
  s.name = t.name + "_select";
  s.input = u.bottom.output;
  s.output = t.output;
  const int init = s.add_state(fresh_name("init", t.states()));
  s.add_initial(init);
  for (const auto& q : t.states()) s.add_state(q);

  for (const auto& [key, target] : u.bottom.transitions()) {
    const auto& here = sets[target.state];
    auto pick = [&](int q) -> const TdRule* {
      for (std::size_t ri : t.rules_for(q, key.symbol)) {
        const TdRule& r = t.rules()[ri];
        if (r.child_states.size() != key.children.size()) continue;
        bool all = true;
        for (std::size_t i = 0; all && i < key.children.size(); ++i)
          all = sets[key.children[i]][r.child_states[i]] != 0;
        if (all) return &r;
      }
      return nullptr;
    };
    auto emit = [&](int from, const TdRule& r) {
      TdRule out{from, target.output, r.output, {}};
      for (int c : r.child_states) out.child_states.push_back(c + 1);
      s.add_rule(std::move(out));
    };
    for (int q0 : t.initials()) {
      if (!here[q0]) continue;
      emit(init, *pick(q0));
      break;
    }
    for (std::size_t q = 0; q < here.size(); ++q)
      if (here[q]) emit(static_cast<int>(q) + 1, *pick(static_cast<int>(q)));
  }
  return u;
}

UniformizerBundle uniformize_att(const Att& a) {
  require_valid(a);
  for (const auto& [sym, rank] : a.input)
    if (sym.find('@') != std::string::npos)
      throw Error("input symbol '" + sym +
                  "' uses the '@' suffix reserved for annotated symbols");
  UniformizerBundle out;
  out.normalized = normalize_root_rules(a);
  out.annotation = build_annotation_relabeling(out.normalized);
  out.applier = build_rule_applier(out.normalized);
  out.applier_domain = datt_domain_automaton(out.applier);
  out.restricted = restrict_range(out.annotation, out.applier_domain);
  out.around = uniformize_topdown(out.restricted);
  out.around.name = a.name + "_around";
  out.result = {out.around, out.applier};
  return out;
}

AttWithLookAround uniformize_attU(const AttWithLookAround& a) {
  auto violations = validate_attu(a);
  if (!violations.empty())
    throw Error("invalid att with look-around: " + violations.front().where +
                ": " + violations.front().message);
  UniformizerBundle inner = uniformize_att(a.core);
  LookAround composed = compose_lookarounds(a.around, inner.around);
  composed.name = a.core.name + "_around";
  return {std::move(composed), std::move(inner.applier)};
}

}  // namespace attu
