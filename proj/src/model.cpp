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

#include "attu/model.hpp"

#include <algorithm>
#include <set>

namespace attu {

RhsTerm RhsTerm::output(std::string symbol, std::vector<RhsTerm> args) {
  RhsTerm t;
  t.kind = Kind::kOutput;
  t.name = std::move(symbol);
  t.args = std::move(args);
  return t;
}

RhsTerm RhsTerm::syn(std::string attr, int child) {
  RhsTerm t;
  t.kind = Kind::kSyn;
  t.name = std::move(attr);
  t.child = child;
  return t;
}

RhsTerm RhsTerm::inh(std::string attr) {
  RhsTerm t;
  t.kind = Kind::kInh;
  t.name = std::move(attr);
  return t;
}

std::string render_lhs(const Lhs& lhs) {
  if (lhs.synthesized) return lhs.attr + "(pi)";
  return lhs.attr + "(pi." + std::to_string(lhs.child) + ")";
}

std::string render_rhs(const RhsTerm& rhs) {
  switch (rhs.kind) {
    case RhsTerm::Kind::kSyn:
      return rhs.name + "(pi." + std::to_string(rhs.child) + ")";
    case RhsTerm::Kind::kInh:
      return rhs.name + "(pi)";
    case RhsTerm::Kind::kOutput:
      break;
  }
  std::string out = rhs.name;
  if (rhs.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < rhs.args.size(); ++i) {
    if (i) out += ',';
    out += render_rhs(rhs.args[i]);
  }
  return out + ')';
}

std::string render_rule(const Rule& rule) {
  return render_lhs(rule.lhs) + " -> " + render_rhs(rule.rhs);
}

// ------------------------------------------------------------------------
// Att

const std::vector<Rule>& Att::rules_at(const std::string& symbol) const {
  static const std::vector<Rule> kNone;
  auto it = rules.find(symbol);
  return it == rules.end() ? kNone : it->second;
}

bool Att::is_syn(const std::string& attr) const {
  return std::find(syn.begin(), syn.end(), attr) != syn.end();
}

bool Att::is_inh(const std::string& attr) const {
  return std::find(inh.begin(), inh.end(), attr) != inh.end();
}

namespace {

class AttValidator {
 public:
  explicit AttValidator(const Att& a) : a_(a) {}

  std::vector<Violation> run() {
    check_attributes();
    for (const auto& [symbol, list] : a_.rules) {
      auto rank = a_.input.find(symbol);
      if (!rank) {
        add("rules " + symbol, "rules for unknown input symbol");
        continue;
      }
      for (std::size_t i = 0; i < list.size(); ++i)
        check_rule(list[i], *rank,
                   "rules " + symbol + "[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < a_.root_rules.size(); ++i)
      check_root_rule(a_.root_rules[i], "root[" + std::to_string(i) + "]");
    return std::move(out_);
  }

 private:
  void add(std::string where, std::string message) {
    out_.push_back({std::move(where), std::move(message)});
  }

  void check_attributes() {
    std::set<std::string> seen;
    for (const auto* group : {&a_.syn, &a_.inh}) {
      for (const auto& name : *group) {
        if (!is_valid_name(name))
          add("attributes", "invalid attribute name '" + name + "'");
        if (!seen.insert(name).second)
          add("attributes", "attribute '" + name + "' declared twice");
        if (a_.output.contains(name))
          add("attributes",
              "attribute '" + name + "' clashes with an output symbol");
      }
    }
    if (!a_.is_syn(a_.initial))
      add("attributes", "initial attribute '" + a_.initial +
                            "' is not a synthesized attribute");
  }

  void check_rule(const Rule& r, int rank, const std::string& where) {
    if (r.lhs.synthesized) {
      if (!a_.is_syn(r.lhs.attr))
        add(where, "lhs attribute '" + r.lhs.attr + "' is not synthesized");
      if (r.lhs.child != 0) add(where, "synthesized lhs must be a(pi)");
    } else {
      if (!a_.is_inh(r.lhs.attr))
        add(where, "lhs attribute '" + r.lhs.attr + "' is not inherited");
      if (r.lhs.child < 1) add(where, "inherited lhs must be b(pi.i), i >= 1");
      if (r.lhs.child > rank) add(where, "child index exceeds rank");
    }
    check_rhs(r.rhs, rank, where, false);
  }

  void check_root_rule(const Rule& r, const std::string& where) {
    if (r.lhs.synthesized) {
      add(where, "root rule has a synthesized attribute on the left-hand side");
    } else {
      if (!a_.is_inh(r.lhs.attr))
        add(where, "lhs attribute '" + r.lhs.attr + "' is not inherited");
      if (r.lhs.child != 1) add(where, "root rule lhs must be b(pi.1)");
    }
    check_rhs(r.rhs, 1, where, true);
  }

  void check_rhs(const RhsTerm& t, int rank, const std::string& where,
                 bool root) {
    switch (t.kind) {
      case RhsTerm::Kind::kSyn:
        if (!a_.is_syn(t.name))
          add(where, "'" + t.name + "' is not a synthesized attribute");
        if (t.child < 1 || t.child > rank)
          add(where, "child index exceeds rank");
        return;
      case RhsTerm::Kind::kInh:
        if (root) add(where, "root rule rhs contains inherited reference");
        if (!a_.is_inh(t.name))
          add(where, "'" + t.name + "' is not an inherited attribute");
        return;
      case RhsTerm::Kind::kOutput: {
        auto r = a_.output.find(t.name);
        if (!r) {
          add(where, "unknown output symbol '" + t.name + "'");
        } else if (static_cast<std::size_t>(*r) != t.args.size()) {
          add(where, "output symbol '" + t.name + "' used with " +
                         std::to_string(t.args.size()) +
                         " arguments but has rank " + std::to_string(*r));
        }
        for (const auto& arg : t.args) check_rhs(arg, rank, where, root);
        return;
      }
    }
  }

  const Att& a_;
  std::vector<Violation> out_;
};

bool unambiguous(const std::vector<Rule>& rules) {
  std::set<Lhs> seen;
  for (const auto& r : rules)
    if (!seen.insert(r.lhs).second) return false;
  return true;
}

}  // namespace

std::vector<Violation> validate_att(const Att& a) {
  return AttValidator(a).run();
}

void require_valid(const Att& a) {
  auto violations = validate_att(a);
  if (violations.empty()) return;
  std::string msg = "invalid att '" + a.name + "':";
  for (const auto& v : violations) msg += "\n  " + v.where + ": " + v.message;
  throw Error(msg);
}

bool is_deterministic(const Att& a) {
  if (!unambiguous(a.root_rules)) return false;
  return std::all_of(a.rules.begin(), a.rules.end(),
                     [](const auto& e) { return unambiguous(e.second); });
}

bool root_rules_unambiguous(const Att& a) { return unambiguous(a.root_rules); }

std::vector<std::vector<std::size_t>> unambiguous_subsets(
    const std::vector<Rule>& rules) {
  // Group rule indices by lhs, in order of first appearance.
  std::vector<Lhs> keys;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    auto it = std::find(keys.begin(), keys.end(), rules[i].lhs);
    if (it == keys.end()) {
      keys.push_back(rules[i].lhs);
      groups.push_back({i});
    } else {
      groups[it - keys.begin()].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      auto subset = pick;
      std::sort(subset.begin(), subset.end());
      out.push_back(std::move(subset));
      return;
    }
    self(self, g + 1);
    for (std::size_t idx : groups[g]) {
      pick.push_back(idx);
      self(self, g + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------------
// Root-rule normalization
//
// Every inherited b with m > 1 root rules is replaced by b^1..b^m. Each b^j
// copies the rules of b below the root and owns exactly the j-th root rule.
// Every occurrence b(pi) on a right-hand side may be read as any b^j,
// independently per occurrence, so each instance of b at the root still
// picks its own root rule.

namespace {

using SplitMap = std::map<std::string, std::vector<std::string>>;

std::vector<RhsTerm> rhs_variants(const RhsTerm& t, const SplitMap& split) {
  switch (t.kind) {
    case RhsTerm::Kind::kSyn:
      return {t};
    case RhsTerm::Kind::kInh: {
      auto it = split.find(t.name);
      if (it == split.end()) return {t};
      std::vector<RhsTerm> out;
      for (const auto& fresh : it->second) out.push_back(RhsTerm::inh(fresh));
      return out;
    }
    case RhsTerm::Kind::kOutput:
      break;
  }
  std::vector<RhsTerm> out{RhsTerm::output(t.name)};
  for (const auto& arg : t.args) {
    auto arg_variants = rhs_variants(arg, split);
    std::vector<RhsTerm> next;
    for (const auto& prefix : out) {
      for (const auto& v : arg_variants) {
        RhsTerm grown = prefix;
        grown.args.push_back(v);
        next.push_back(std::move(grown));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Att normalize_root_rules(const Att& a) {
  if (root_rules_unambiguous(a)) return a;

  std::map<std::string, std::size_t> root_count;
  for (const auto& r : a.root_rules) ++root_count[r.lhs.attr];

  std::vector<std::string> taken = a.syn;
  taken.insert(taken.end(), a.inh.begin(), a.inh.end());
  for (const auto& [sym, rank] : a.output) taken.push_back(sym);

  Att out = a;
  out.inh.clear();
  SplitMap split;
  for (const auto& b : a.inh) {
    auto it = root_count.find(b);
    if (it == root_count.end() || it->second < 2) {
      out.inh.push_back(b);
      continue;
    }
    for (std::size_t j = 1; j <= it->second; ++j) {
      std::string fresh = fresh_name(b + "^" + std::to_string(j), taken);
      taken.push_back(fresh);
      split[b].push_back(fresh);
      out.inh.push_back(fresh);
    }
  }

  for (auto& [symbol, list] : out.rules) {
    std::vector<Rule> rebuilt;
    for (const auto& r : a.rules_at(symbol)) {
      std::vector<Lhs> heads{r.lhs};
      if (!r.lhs.synthesized) {
        auto it = split.find(r.lhs.attr);
        if (it != split.end()) {
          heads.clear();
          for (const auto& fresh : it->second)
            heads.push_back(Lhs::inh(fresh, r.lhs.child));
        }
      }
      auto variants = rhs_variants(r.rhs, split);
      for (const auto& head : heads)
        for (const auto& v : variants) rebuilt.push_back({head, v});
    }
    list = std::move(rebuilt);
  }

  std::map<std::string, std::size_t> seen;
  out.root_rules.clear();
  for (const auto& r : a.root_rules) {
    auto it = split.find(r.lhs.attr);
    if (it == split.end()) {
      out.root_rules.push_back(r);
      continue;
    }
    std::size_t j = seen[r.lhs.attr]++;
    out.root_rules.push_back({Lhs::inh(it->second[j], 1), r.rhs});
  }
  return out;
}

// ------------------------------------------------------------------------
// Relabelings

int BottomUpRelabeling::add_state(const std::string& state_name, bool final) {
  if (find_state(state_name))
    throw Error("duplicate state '" + state_name + "'");
  states_.push_back(state_name);
  finals_.push_back(final);
  return static_cast<int>(states_.size() - 1);
}

std::optional<int> BottomUpRelabeling::find_state(
    const std::string& state_name) const {
  auto it = std::find(states_.begin(), states_.end(), state_name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

void BottomUpRelabeling::add_transition(BuKey key, BuTarget target) {
  auto [it, inserted] = transitions_.emplace(std::move(key), std::move(target));
  if (!inserted)
    throw Error("bottom-up relabeling '" + name +
                "' has two rules for symbol '" + it->first.symbol +
                "' with the same child states");
}

const BuTarget* BottomUpRelabeling::find(const BuKey& key) const {
  auto it = transitions_.find(key);
  return it == transitions_.end() ? nullptr : &it->second;
}

int TopDownRelabeling::add_state(const std::string& state_name) {
  if (find_state(state_name))
    throw Error("duplicate state '" + state_name + "'");
  states_.push_back(state_name);
  return static_cast<int>(states_.size() - 1);
}

std::optional<int> TopDownRelabeling::find_state(
    const std::string& state_name) const {
  auto it = std::find(states_.begin(), states_.end(), state_name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<int>(it - states_.begin());
}

void TopDownRelabeling::add_initial(int state) {
  if (state < 0 || static_cast<std::size_t>(state) >= states_.size())
    throw Error("initial state out of range");
  if (std::find(initials_.begin(), initials_.end(), state) == initials_.end())
    initials_.push_back(state);
}

void TopDownRelabeling::add_rule(TdRule rule) {
  index_[{rule.state, rule.symbol}].push_back(rules_.size());
  rules_.push_back(std::move(rule));
}

const std::vector<std::size_t>& TopDownRelabeling::rules_for(
    int state, const std::string& symbol) const {
  static const std::vector<std::size_t> kNone;
  auto it = index_.find({state, symbol});
  return it == index_.end() ? kNone : it->second;
}

bool TopDownRelabeling::is_deterministic() const {
  if (initials_.size() != 1) return false;
  return std::all_of(index_.begin(), index_.end(),
                     [](const auto& e) { return e.second.size() <= 1; });
}

std::vector<Violation> validate_bottomup(const BottomUpRelabeling& b) {
  std::vector<Violation> out;
  const std::string where = "burelab " + b.name;
  for (const auto& [key, target] : b.transitions()) {
    auto rank = b.input.find(key.symbol);
    if (!rank) {
      out.push_back({where, "unknown input symbol '" + key.symbol + "'"});
      continue;
    }
    if (static_cast<std::size_t>(*rank) != key.children.size())
      out.push_back({where, "rule for '" + key.symbol + "' has " +
                                std::to_string(key.children.size()) +
                                " child states but rank " +
                                std::to_string(*rank)});
    auto out_rank = b.output.find(target.output);
    if (!out_rank)
      out.push_back({where, "unknown output symbol '" + target.output + "'"});
    else if (*out_rank != *rank)
      out.push_back({where, "output symbol '" + target.output +
                                "' has a different rank than '" + key.symbol +
                                "'"});
    for (int c : key.children)
      if (c < 0 || static_cast<std::size_t>(c) >= b.state_count())
        out.push_back({where, "child state out of range"});
    if (target.state < 0 ||
        static_cast<std::size_t>(target.state) >= b.state_count())
      out.push_back({where, "target state out of range"});
  }
  return out;
}

std::vector<Violation> validate_topdown(const TopDownRelabeling& t) {
  std::vector<Violation> out;
  const std::string where = "tdrelab " + t.name;
  if (t.initials().empty()) out.push_back({where, "no initial state"});
  for (std::size_t i = 0; i < t.rules().size(); ++i) {
    const TdRule& r = t.rules()[i];
    const std::string at = where + " rule " + std::to_string(i);
    auto rank = t.input.find(r.symbol);
    auto out_rank = t.output.find(r.output);
    if (!rank) {
      out.push_back({at, "unknown input symbol '" + r.symbol + "'"});
      continue;
    }
    if (!out_rank) {
      out.push_back({at, "unknown output symbol '" + r.output + "'"});
      continue;
    }
    if (*rank != *out_rank)
      out.push_back({at, "output rank differs from input rank"});
    if (r.child_states.size() != static_cast<std::size_t>(*rank))
      out.push_back({at, "wrong number of child states"});
  }
  return out;
}

std::vector<Violation> validate_lookaround(const LookAround& u) {
  auto out = validate_bottomup(u.bottom);
  auto top = validate_topdown(u.top);
  out.insert(out.end(), top.begin(), top.end());
  if (!(u.bottom.output == u.top.input))
    out.push_back({"lookaround " + u.name,
                   "top-down input alphabet differs from bottom-up output"});
  if (!u.top.is_deterministic())
    out.push_back({"lookaround " + u.name, "top-down part is not deterministic"});
  return out;
}

std::vector<Violation> validate_attu(const AttWithLookAround& a) {
  auto out = validate_lookaround(a.around);
  auto core = validate_att(a.core);
  out.insert(out.end(), core.begin(), core.end());
  if (!(a.around.output() == a.core.input))
    out.push_back({"att " + a.core.name,
                   "input alphabet differs from the look-around output"});
  return out;
}

BottomUpRelabeling identity_bottomup(const RankedAlphabet& alphabet) {
  BottomUpRelabeling b;
  b.name = "id_bottom";
  b.input = alphabet;
  b.output = alphabet;
  int p = b.add_state("p", true);
  for (const auto& [sym, rank] : alphabet)
    b.add_transition({sym, std::vector<int>(rank, p)}, {p, sym});
  return b;
}

TopDownRelabeling identity_topdown(const RankedAlphabet& alphabet) {
  TopDownRelabeling t;
  t.name = "id_top";
  t.input = alphabet;
  t.output = alphabet;
  int q = t.add_state("q");
  t.add_initial(q);
  for (const auto& [sym, rank] : alphabet)
    t.add_rule({q, sym, sym, std::vector<int>(rank, q)});
  return t;
}

LookAround identity_lookaround(const RankedAlphabet& alphabet) {
  return {"id", identity_bottomup(alphabet), identity_topdown(alphabet)};
}

std::string fresh_name(const std::string& base,
                       const std::vector<std::string>& taken) {
  std::string name = base;
  while (std::find(taken.begin(), taken.end(), name) != taken.end())
    name += '\'';
  return name;
}

}  // namespace attu
