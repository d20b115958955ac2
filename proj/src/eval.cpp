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


#include "attu/eval.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace attu {

std::string render_occurrence(const AttrOccurrence& occ) {
  std::string out = occ.attr + "(1";
  for (int i : occ.node) out += "." + std::to_string(i);
  return out + ")";
}

SententialForm SententialForm::of(const AttrOccurrence& occ) {
  SententialForm f;
  f.label = occ.attr;
  f.occurrence = true;
  f.node = occ.node;
  return f;
}

bool SententialForm::ground() const {
  if (occurrence) return false;
  return std::all_of(children.begin(), children.end(),
                     [](const SententialForm& c) { return c.ground(); });
}

Tree SententialForm::to_tree() const {
  if (occurrence) throw Error("sentential form is not ground");
  Tree t(label);
  for (const auto& c : children) t.children.push_back(c.to_tree());
  return t;
}

namespace {

void render_form_into(const SententialForm& t, std::string& out, bool key) {
  if (t.occurrence) {
    if (key) out += '@';
    out += render_occurrence({t.label, t.node});
    return;
  }
  out += t.label;
  if (t.children.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ',';
    render_form_into(t.children[i], out, key);
  }
  out += ')';
}

std::string form_key(const SententialForm& t) {
  std::string out;
  render_form_into(t, out, true);
  return out;
}

}  // namespace

std::string render_form(const SententialForm& t) {
  std::string out;
  render_form_into(t, out, false);
  return out;
}

std::string render_locator(const Att& a, const RuleLocator& loc) {
  const auto& list =
      loc.symbol == kRootMarker ? a.root_rules : a.rules_at(loc.symbol);
  std::string out = loc.symbol + "[" + std::to_string(loc.index) + "]";
  if (loc.index < list.size()) out += ": " + render_rule(list[loc.index]);
  return out;
}

std::string EvalOutcome::render() const {
  switch (kind) {
    case Kind::kGround:
      return render_tree(output);
    case Kind::kStuck:
      return "stuck: no rule for " + render_occurrence(stuck);
    case Kind::kDivergent:
      break;
  }
  std::string out = "divergent:";
  for (std::size_t i = 0; i < cycle.size(); ++i)
    out += (i ? " -> " : " ") + render_occurrence(cycle[i]);
  return out;
}

// ------------------------------------------------------------------------
// Derivation steps over sentential forms

namespace {

SententialForm instantiate(const RhsTerm& t, const std::optional<NodeAddress>& ctx) {
  switch (t.kind) {
    case RhsTerm::Kind::kSyn: {
      NodeAddress v = ctx ? *ctx : NodeAddress{};
      if (ctx) v.push_back(t.child);
      return SententialForm::of({t.name, std::move(v)});
    }
    case RhsTerm::Kind::kInh:
      if (!ctx) throw Error("inherited reference in a root rule");
      return SententialForm::of({t.name, *ctx});
    case RhsTerm::Kind::kOutput:
      break;
  }
  SententialForm f;
  f.label = t.name;
  for (const auto& arg : t.args) f.children.push_back(instantiate(arg, ctx));
  return f;
}

// Every rule applicable to `occ`, instantiated.
std::vector<std::pair<RuleLocator, SententialForm>> occurrence_options(
    const Att& a, const Tree& s, const AttrOccurrence& occ) {
  if (!is_valid_address(s, occ.node))
    throw Error("malformed sentential form: no node " +
                render_occurrence(occ) + " in " + render_tree(s));
  std::vector<std::pair<RuleLocator, SententialForm>> out;
  if (a.is_syn(occ.attr)) {
    const std::string& sym = subtree_at(s, occ.node).label;
    const auto& list = a.rules_at(sym);
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].lhs == Lhs::syn(occ.attr))
        out.push_back({{sym, i}, instantiate(list[i].rhs, occ.node)});
    return out;
  }
  if (!a.is_inh(occ.attr))
    throw Error("malformed sentential form: unknown attribute '" + occ.attr +
                "'");
  if (occ.node.empty()) {
    for (std::size_t i = 0; i < a.root_rules.size(); ++i)
      if (a.root_rules[i].lhs == Lhs::inh(occ.attr, 1))
        out.push_back({{std::string(kRootMarker), i},
                       instantiate(a.root_rules[i].rhs, std::nullopt)});
    return out;
  }
  NodeAddress parent(occ.node.begin(), occ.node.end() - 1);
  const std::string& sym = subtree_at(s, parent).label;
  const auto& list = a.rules_at(sym);
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].lhs == Lhs::inh(occ.attr, occ.node.back()))
      out.push_back({{sym, i}, instantiate(list[i].rhs, parent)});
  return out;
}

// Paths (child indices within the form) of attribute leaves, left to right.
void leaf_paths(const SententialForm& t, std::vector<int>& at,
                std::vector<std::vector<int>>& out, bool first_only) {
  if (first_only && !out.empty()) return;
  if (t.occurrence) {
    out.push_back(at);
    return;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    at.push_back(static_cast<int>(i));
    leaf_paths(t.children[i], at, out, first_only);
    at.pop_back();
  }
}

SententialForm replace_leaf(const SententialForm& t, const std::vector<int>& path,
                            const SententialForm& with) {
  SententialForm out = t;
  SententialForm* cur = &out;
  for (int i : path) cur = &cur->children[i];
  *cur = with;
  return out;
}

const SententialForm& leaf_at(const SententialForm& t,
                              const std::vector<int>& path) {
  const SententialForm* cur = &t;
  for (int i : path) cur = &cur->children[i];
  return *cur;
}

}  // namespace

std::vector<DerivationStep> derivation_step(const Att& a, const Tree& s,
                                            const SententialForm& t,
                                            LeafSelection selection) {
  std::vector<std::vector<int>> paths;
  std::vector<int> at;
  leaf_paths(t, at, paths, selection == LeafSelection::kLeftmost);
  std::vector<DerivationStep> out;
  for (const auto& path : paths) {
    const SententialForm& leaf = leaf_at(t, path);
    AttrOccurrence occ{leaf.label, leaf.node};
    for (auto& [loc, xi] : occurrence_options(a, s, occ))
      out.push_back({replace_leaf(t, path, xi), loc, occ});
  }
  return out;
}

std::vector<DerivationStep> trace_derivation(const Att& a, const Tree& s,
                                             std::size_t max_steps) {
  std::vector<DerivationStep> out;
  SententialForm form = SententialForm::of({a.initial, {}});
  std::set<std::string> seen{form_key(form)};
  while (out.size() < max_steps) {
    auto next = derivation_step(a, s, form, LeafSelection::kLeftmost);
    if (next.empty()) break;
    out.push_back(next.front());
    form = next.front().form;
    if (!seen.insert(form_key(form)).second) break;
  }
  return out;
}

BoundedResult enumerate_derivations_bounded(const Att& a, const Tree& s,
                                            std::size_t budget) {
  BoundedResult result;
  SententialForm start = SententialForm::of({a.initial, {}});
  std::unordered_set<std::string> visited{form_key(start)};
  std::deque<SententialForm> frontier{start};
  while (!frontier.empty()) {
    SententialForm form = std::move(frontier.front());
    frontier.pop_front();
    if (form.ground()) {
      result.outputs.insert(form.to_tree());
      continue;
    }
    if (result.expanded == budget) return result;
    ++result.expanded;
    // Attribute leaves rewrite independently of each other, so rewriting
    // only the leftmost one reaches the same ground forms.
    for (auto& step : derivation_step(a, s, form, LeafSelection::kLeftmost))
      if (visited.insert(form_key(step.form)).second)
        frontier.push_back(std::move(step.form));
  }
  result.complete = true;
  return result;
}

namespace {

// Occurrence leaves of `form` matched against `target`, or false on a
// structural mismatch.
bool match_form(const SententialForm& form, const Tree& target,
                NodeAddress& at,
                std::vector<std::pair<AttrOccurrence, NodeAddress>>& needs) {
  if (form.occurrence) {
    needs.push_back({{form.label, form.node}, at});
    return true;
  }
  if (form.label != target.label ||
      form.children.size() != target.children.size())
    return false;
  for (std::size_t i = 0; i < form.children.size(); ++i) {
    at.push_back(static_cast<int>(i + 1));
    bool ok = match_form(form.children[i], target.children[i], at, needs);
    at.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool derives(const Att& a, const Tree& s, const Tree& target) {
  using Goal = std::pair<AttrOccurrence, NodeAddress>;
  std::map<AttrOccurrence,
           std::vector<std::pair<RuleLocator, SententialForm>>> options;
  std::map<Goal, std::vector<std::vector<Goal>>> alternatives;
  std::vector<Goal> work{{{a.initial, {}}, {}}};
  alternatives[work.front()];
  while (!work.empty()) {
    Goal g = work.back();
    work.pop_back();
    auto it = options.find(g.first);
    if (it == options.end())
      it = options.emplace(g.first, occurrence_options(a, s, g.first)).first;
    const Tree& sub = subtree_at(target, g.second);
    std::vector<std::vector<Goal>> alts;
    for (const auto& [loc, xi] : it->second) {
      std::vector<Goal> needs;
      NodeAddress at = g.second;
      if (!match_form(xi, sub, at, needs)) continue;
      for (const Goal& n : needs)
        if (alternatives.emplace(n, std::vector<std::vector<Goal>>{}).second)
          work.push_back(n);
      alts.push_back(std::move(needs));
    }
    alternatives[g] = std::move(alts);
  }
  // Least fixpoint: a goal holds once one alternative has all needs holding.
  std::set<Goal> holds;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [g, alts] : alternatives) {
      if (holds.count(g)) continue;
      for (const auto& needs : alts) {
        if (std::all_of(needs.begin(), needs.end(),
                        [&](const Goal& n) { return holds.count(n) != 0; })) {
          holds.insert(g);
          changed = true;
          break;
        }
      }
    }
  }
  return holds.count({{a.initial, {}}, {}}) != 0;
}

// ------------------------------------------------------------------------
// Compiled representation used by the evaluators

namespace {

struct FlatTree {
  struct Node {
    const std::string* label;
    int parent;
    int index;  // 1-based position under the parent
    std::vector<int> kids;
  };
  std::vector<Node> nodes;

  explicit FlatTree(const Tree& t) { add(t, -1, 0); }

  int add(const Tree& t, int parent, int index) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({&t.label, parent, index, {}});
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      int c = add(t.children[i], id, static_cast<int>(i + 1));
      nodes[id].kids.push_back(c);
    }
    return id;
  }

  NodeAddress address(int id) const {
    NodeAddress v;
    for (; nodes[id].parent >= 0; id = nodes[id].parent)
      v.push_back(nodes[id].index);
    std::reverse(v.begin(), v.end());
    return v;
  }
};

struct CTerm {
  RhsTerm::Kind kind;
  std::string name;
  int attr = -1;
  int child = 0;
  std::vector<CTerm> args;
};

using LhsKey = std::pair<int, int>;  // (attribute id, child; 0 = synthesized)

struct CRule {
  LhsKey key;
  CTerm rhs;
  std::size_t index;
};

struct RuleTable {
  std::vector<CRule> rules;
  std::map<LhsKey, std::vector<int>> by_lhs;

  const std::vector<int>* find(const LhsKey& key) const {
    auto it = by_lhs.find(key);
    return it == by_lhs.end() ? nullptr : &it->second;
  }
};

// Where the rules for an occurrence live. `symbol` is null for R_#; `ctx`
// is the node substituted for pi, -1 for the root marker.
struct Site {
  const std::string* symbol;
  LhsKey key;
  int ctx;
};

class CompiledAtt {
 public:
  explicit CompiledAtt(const Att& a) : att_(a) {
    for (const auto& n : a.syn) add_attr(n);
    nsyn_ = static_cast<int>(attrs_.size());
    for (const auto& n : a.inh) add_attr(n);
    for (const auto& [sym, list] : a.rules) tables_[sym] = compile(list);
    root_ = compile(a.root_rules);
  }

  const Att& att() const { return att_; }
  int attr_count() const { return static_cast<int>(attrs_.size()); }
  int attr_id(const std::string& n) const { return ids_.at(n); }
  const std::string& attr_name(int id) const { return attrs_[id]; }

  // The label of the context node is supplied by the caller.
  Site site(const FlatTree& ft, int occ) const {
    int node = occ / attr_count();
    int attr = occ % attr_count();
    if (attr < nsyn_) return {nullptr, {attr, 0}, node};
    const auto& n = ft.nodes[node];
    if (n.parent < 0) return {nullptr, {attr, 1}, -1};
    return {nullptr, {attr, n.index}, n.parent};
  }

  const RuleTable* table(const std::string* symbol) const {
    if (!symbol) return &root_;
    auto it = tables_.find(*symbol);
    return it == tables_.end() ? nullptr : &it->second;
  }

  AttrOccurrence occurrence(const FlatTree& ft, int occ) const {
    return {attr_name(occ % attr_count()), ft.address(occ / attr_count())};
  }

  // Occurrence denoted by an attribute leaf of a rhs at context `ctx`.
  int leaf(const FlatTree& ft, const CTerm& t, int ctx) const {
    if (t.kind == RhsTerm::Kind::kSyn) {
      int node = ctx < 0 ? 0 : ft.nodes[ctx].kids[t.child - 1];
      return node * attr_count() + t.attr;
    }
    return ctx * attr_count() + t.attr;
  }

 private:
  void add_attr(const std::string& n) {
    ids_[n] = static_cast<int>(attrs_.size());
    attrs_.push_back(n);
  }

  CTerm compile(const RhsTerm& t) const {
    CTerm c{t.kind, t.name, -1, t.child, {}};
    if (t.kind != RhsTerm::Kind::kOutput) c.attr = ids_.at(t.name);
    for (const auto& a : t.args) c.args.push_back(compile(a));
    return c;
  }

  RuleTable compile(const std::vector<Rule>& list) const {
    RuleTable table;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Rule& r = list[i];
      LhsKey key{ids_.at(r.lhs.attr), r.lhs.synthesized ? 0 : r.lhs.child};
      table.by_lhs[key].push_back(static_cast<int>(table.rules.size()));
      table.rules.push_back({key, compile(r.rhs), i});
    }
    return table;
  }

  const Att& att_;
  std::vector<std::string> attrs_;
  std::unordered_map<std::string, int> ids_;
  int nsyn_ = 0;
  std::map<std::string, RuleTable> tables_;
  RuleTable root_;
};

// Picks the rule for an occurrence (or null when there is none) and sets
// the context node.
using RuleSelector = std::function<const CRule*(int occ, int& ctx)>;

class DeterministicEval {
 public:
  DeterministicEval(const CompiledAtt& c, const FlatTree& ft,
                    RuleSelector select)
      : c_(c), ft_(ft), select_(std::move(select)) {
    std::size_t n = ft.nodes.size() * c.attr_count();
    memo_.resize(n);
    stack_pos_.assign(n, -1);
  }

  EvalOutcome run() {
    EvalOutcome out;
    Tree t;
    if (eval(c_.attr_id(c_.att().initial), t)) {
      out.kind = EvalOutcome::Kind::kGround;
      out.output = std::move(t);
      return out;
    }
    return failure_;
  }

 private:
  bool eval(int occ, Tree& out) {
    if (memo_[occ]) {
      out = *memo_[occ];
      return true;
    }
    if (stack_pos_[occ] >= 0) {
      failure_.kind = EvalOutcome::Kind::kDivergent;
      for (std::size_t i = stack_pos_[occ]; i < stack_.size(); ++i)
        failure_.cycle.push_back(c_.occurrence(ft_, stack_[i]));
      failure_.cycle.push_back(c_.occurrence(ft_, occ));
      return false;
    }
    int ctx = -1;
    const CRule* rule = select_(occ, ctx);
    if (!rule) {
      failure_.kind = EvalOutcome::Kind::kStuck;
      failure_.stuck = c_.occurrence(ft_, occ);
      return false;
    }
    stack_pos_[occ] = static_cast<int>(stack_.size());
    stack_.push_back(occ);
    bool ok = build(rule->rhs, ctx, out);
    stack_.pop_back();
    stack_pos_[occ] = -1;
    if (ok) memo_[occ] = out;
    return ok;
  }

  bool build(const CTerm& t, int ctx, Tree& out) {
    if (t.kind != RhsTerm::Kind::kOutput)
      return eval(c_.leaf(ft_, t, ctx), out);
    out = Tree(t.name);
    out.children.resize(t.args.size());
    for (std::size_t i = 0; i < t.args.size(); ++i)
      if (!build(t.args[i], ctx, out.children[i])) return false;
    return true;
  }

  const CompiledAtt& c_;
  const FlatTree& ft_;
  RuleSelector select_;
  std::vector<std::optional<Tree>> memo_;
  std::vector<int> stack_pos_;
  std::vector<int> stack_;
  EvalOutcome failure_;
};

// First rule for the occurrence's lhs at its context node's own label.
RuleSelector first_rule(const CompiledAtt& c, const FlatTree& ft) {
  return [&c, &ft](int occ, int& ctx) -> const CRule* {
    Site site = c.site(ft, occ);
    ctx = site.ctx;
    const RuleTable* table =
        c.table(site.ctx < 0 ? nullptr : ft.nodes[site.ctx].label);
    if (!table) return nullptr;
    const auto* cands = table->find(site.key);
    if (!cands || cands->empty()) return nullptr;
    return &table->rules[cands->front()];
  };
}

// Backtracking search over rule choices. The provider calls its callback
// once per admissible (rule, context) for an occurrence; memoized values
// and the on-stack set are undone on the way back.
class ChoiceSearch {
 public:
  using TreeK = std::function<void(const Tree&)>;
  using RuleK = std::function<void(const CRule&, int ctx)>;
  using Provider = std::function<void(int occ, const RuleK&)>;

  ChoiceSearch(const CompiledAtt& c, const FlatTree& ft, Provider provider)
      : c_(c), ft_(ft), provider_(std::move(provider)) {
    std::size_t n = ft.nodes.size() * c.attr_count();
    memo_.resize(n);
    on_stack_.assign(n, 0);
  }

  TreeSet run() {
    TreeSet out;
    occ(c_.attr_id(c_.att().initial), [&](const Tree& t) { out.insert(t); });
    return out;
  }

 private:
  void occ(int o, const TreeK& k) {
    if (memo_[o]) {
      k(*memo_[o]);
      return;
    }
    if (on_stack_[o]) return;  // a cycle: this branch has no normal form
    provider_(o, [&](const CRule& rule, int ctx) {
      on_stack_[o] = 1;
      term(rule.rhs, ctx, [&](const Tree& t) {
        on_stack_[o] = 0;
        memo_[o] = t;
        k(t);
        memo_[o].reset();
        on_stack_[o] = 1;
      });
      on_stack_[o] = 0;
    });
  }

  void term(const CTerm& t, int ctx, const TreeK& k) {
    if (t.kind != RhsTerm::Kind::kOutput) {
      occ(c_.leaf(ft_, t, ctx), k);
      return;
    }
    std::vector<Tree> acc;
    args(t, ctx, 0, acc, k);
  }

  void args(const CTerm& t, int ctx, std::size_t i, std::vector<Tree>& acc,
            const TreeK& k) {
    if (i == t.args.size()) {
      k(Tree(t.name, acc));
      return;
    }
    term(t.args[i], ctx, [&](const Tree& x) {
      acc.push_back(x);
      args(t, ctx, i + 1, acc, k);
      acc.pop_back();
    });
  }

  const CompiledAtt& c_;
  const FlatTree& ft_;
  Provider provider_;
  std::vector<std::optional<Tree>> memo_;
  std::vector<char> on_stack_;
};

}  // namespace

EvalOutcome eval_datt(const Att& d, const Tree& s) {
  if (!is_deterministic(d))
    throw Error("att '" + d.name + "' is not deterministic");
  CompiledAtt c(d);
  FlatTree ft(s);
  return DeterministicEval(c, ft, first_rule(c, ft)).run();
}

// ------------------------------------------------------------------------
// Relabelings

namespace {

std::optional<BottomUpRun> run_bu(const BottomUpRelabeling& b, const Tree& s) {
  BuKey key{s.label, {}};
  BottomUpRun out;
  out.output.children.reserve(s.children.size());
  for (const auto& c : s.children) {
    auto r = run_bu(b, c);
    if (!r) return std::nullopt;
    key.children.push_back(r->state);
    out.output.children.push_back(std::move(r->output));
  }
  const BuTarget* target = b.find(key);
  if (!target) return std::nullopt;
  out.state = target->state;
  out.output.label = target->output;
  return out;
}

// States from which `t` has a complete run on each node, in FlatTree order.
std::vector<std::vector<char>> viable_states(const TopDownRelabeling& t,
                                             const FlatTree& ft,
                                             const FlatTree* target) {
  std::vector<std::vector<char>> ok(ft.nodes.size(),
                                    std::vector<char>(t.state_count(), 0));
  for (int n = static_cast<int>(ft.nodes.size()) - 1; n >= 0; --n) {
    const auto& node = ft.nodes[n];
    for (std::size_t q = 0; q < t.state_count(); ++q) {
      for (std::size_t ri : t.rules_for(static_cast<int>(q), *node.label)) {
        const TdRule& r = t.rules()[ri];
        if (target && r.output != *target->nodes[n].label) continue;
        bool all = r.child_states.size() == node.kids.size();
        for (std::size_t i = 0; all && i < node.kids.size(); ++i)
          all = ok[node.kids[i]][r.child_states[i]] != 0;
        if (all) {
          ok[n][q] = 1;
          break;
        }
      }
    }
  }
  return ok;
}

bool same_shape(const Tree& a, const Tree& b) {
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_shape(a.children[i], b.children[i])) return false;
  return true;
}

void topdown_all(const TopDownRelabeling& t, const Tree& s, int q,
                 std::vector<Tree>& out) {
  for (std::size_t ri : t.rules_for(q, s.label)) {
    const TdRule& r = t.rules()[ri];
    if (r.child_states.size() != s.children.size()) continue;
    std::vector<Tree> partial{Tree(r.output)};
    for (std::size_t i = 0; i < s.children.size() && !partial.empty(); ++i) {
      std::vector<Tree> kids;
      topdown_all(t, s.children[i], r.child_states[i], kids);
      std::vector<Tree> next;
      for (const auto& p : partial)
        for (const auto& k : kids) {
          Tree grown = p;
          grown.children.push_back(k);
          next.push_back(std::move(grown));
        }
      partial = std::move(next);
    }
    for (auto& p : partial) out.push_back(std::move(p));
  }
}

}  // namespace

std::optional<BottomUpRun> run_bottomup_relabeling(const BottomUpRelabeling& b,
                                                   const Tree& s) {
  auto r = run_bu(b, s);
  if (r) r->final = b.is_final(r->state);
  return r;
}

TreeSet run_topdown_relabeling_all(const TopDownRelabeling& t, const Tree& s) {
  TreeSet out;
  for (int q : t.initials()) {
    std::vector<Tree> trees;
    topdown_all(t, s, q, trees);
    for (const auto& x : trees) out.insert(x);
  }
  return out;
}

std::optional<Tree> run_topdown_deterministic(const TopDownRelabeling& t,
                                              const Tree& s) {
  if (!t.is_deterministic())
    throw Error("top-down relabeling '" + t.name + "' is not deterministic");
  std::function<std::optional<Tree>(const Tree&, int)> go =
      [&](const Tree& node, int q) -> std::optional<Tree> {
    const auto& idx = t.rules_for(q, node.label);
    if (idx.empty()) return std::nullopt;
    const TdRule& r = t.rules()[idx.front()];
    if (r.child_states.size() != node.children.size()) return std::nullopt;
    Tree out(r.output);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      auto c = go(node.children[i], r.child_states[i]);
      if (!c) return std::nullopt;
      out.children.push_back(std::move(*c));
    }
    return out;
  };
  return go(s, t.initials().front());
}

bool topdown_accepts_pair(const TopDownRelabeling& t, const Tree& s,
                          const Tree& r) {
  if (!same_shape(s, r)) return false;
  FlatTree fs(s), fr(r);
  auto ok = viable_states(t, fs, &fr);
  return std::any_of(t.initials().begin(), t.initials().end(),
                     [&](int q) { return ok[0][q] != 0; });
}

bool topdown_in_domain(const TopDownRelabeling& t, const Tree& s) {
  FlatTree fs(s);
  auto ok = viable_states(t, fs, nullptr);
  return std::any_of(t.initials().begin(), t.initials().end(),
                     [&](int q) { return ok[0][q] != 0; });
}

std::optional<Tree> run_lookaround(const LookAround& u, const Tree& s) {
  auto b = run_bottomup_relabeling(u.bottom, s);
  if (!b || !b->final) return std::nullopt;
  return run_topdown_deterministic(u.top, b->output);
}

std::optional<EvalOutcome> eval_dattU(const AttWithLookAround& d,
                                      const Tree& s) {
  auto relabeled = run_lookaround(d.around, s);
  if (!relabeled) return std::nullopt;
  return eval_datt(d.core, *relabeled);
}

// ------------------------------------------------------------------------
// Nondeterministic oracles

TreeSet enumerate_uniform(const Att& a, const Tree& s) {
  if (!root_rules_unambiguous(a))
    throw Error("att '" + a.name + "' has ambiguous root rules");
  CompiledAtt c(a);
  FlatTree ft(s);
  // Each occurrence is rewritten by one rule; the memo table keeps that
  // choice for every later instance, which is what makes it uniform.
  auto provider = [&](int occ, const ChoiceSearch::RuleK& k) {
    Site site = c.site(ft, occ);
    const RuleTable* table =
        c.table(site.ctx < 0 ? nullptr : ft.nodes[site.ctx].label);
    if (!table) return;
    const auto* cands = table->find(site.key);
    if (!cands) return;
    for (int i : *cands) k(table->rules[i], site.ctx);
  };
  return ChoiceSearch(c, ft, provider).run();
}

TreeSet enumerate_uniform_exhaustive(const Att& a, const Tree& s) {
  if (!root_rules_unambiguous(a))
    throw Error("att '" + a.name + "' has ambiguous root rules");
  CompiledAtt c(a);
  FlatTree ft(s);
  const std::size_t n = ft.nodes.size();
  std::vector<std::vector<std::vector<std::size_t>>> options(n);
  for (std::size_t v = 0; v < n; ++v)
    options[v] = unambiguous_subsets(a.rules_at(*ft.nodes[v].label));
  std::vector<std::size_t> pick(n, 0);

  RuleSelector select = [&](int occ, int& ctx) -> const CRule* {
    Site site = c.site(ft, occ);
    ctx = site.ctx;
    if (site.ctx < 0) {
      const RuleTable* root = c.table(nullptr);
      const auto* cands = root->find(site.key);
      return cands && !cands->empty() ? &root->rules[cands->front()] : nullptr;
    }
    const RuleTable* table = c.table(ft.nodes[site.ctx].label);
    if (!table) return nullptr;
    for (std::size_t idx : options[site.ctx][pick[site.ctx]])
      if (table->rules[idx].key == site.key) return &table->rules[idx];
    return nullptr;
  };

  TreeSet out;
  for (;;) {
    auto r = DeterministicEval(c, ft, select).run();
    if (r.ground()) out.insert(r.output);
    std::size_t v = 0;
    while (v < n && ++pick[v] == options[v].size()) pick[v++] = 0;
    if (v == n) break;
  }
  return out;
}

TreeSet composed_fiber(const TopDownRelabeling& t, const Att& applier,
                       const Tree& s) {
  if (!is_deterministic(applier))
    throw Error("att '" + applier.name + "' is not deterministic");
  CompiledAtt c(applier);
  FlatTree ft(s);
  auto viable = viable_states(t, ft, nullptr);
  const std::size_t n = ft.nodes.size();
  std::vector<const std::string*> label(n, nullptr);
  std::vector<int> state(n, -1);

  using Done = std::function<void()>;
  // Chooses a label for `node` (and its ancestors first) among the rules
  // that extend to a complete run, then continues.
  std::function<void(int, const Done&)> ensure_label =
      [&](int node, const Done& k) {
        if (label[node]) {
          k();
          return;
        }
        auto choose = [&](int q) {
          const auto& fn = ft.nodes[node];
          for (std::size_t ri : t.rules_for(q, *fn.label)) {
            const TdRule& r = t.rules()[ri];
            if (r.child_states.size() != fn.kids.size()) continue;
            bool all = true;
            for (std::size_t i = 0; all && i < fn.kids.size(); ++i)
              all = viable[fn.kids[i]][r.child_states[i]] != 0;
            if (!all) continue;
            label[node] = &r.output;
            for (std::size_t i = 0; i < fn.kids.size(); ++i)
              state[fn.kids[i]] = r.child_states[i];
            k();
            label[node] = nullptr;
          }
        };
        int parent = ft.nodes[node].parent;
        if (parent < 0) {
          for (int q : t.initials())
            if (viable[node][q]) choose(q);
          return;
        }
        ensure_label(parent, [&] { choose(state[node]); });
      };

  auto provider = [&](int occ, const ChoiceSearch::RuleK& k) {
    Site site = c.site(ft, occ);
    auto fire = [&] {
      const RuleTable* table =
          c.table(site.ctx < 0 ? nullptr : label[site.ctx]);
      if (!table) return;
      const auto* cands = table->find(site.key);
      if (cands && !cands->empty())
        k(table->rules[cands->front()], site.ctx);
    };
    if (site.ctx < 0)
      fire();
    else
      ensure_label(site.ctx, fire);
  };

  // The input must be in the relabeling's domain even if no node is read.
  bool in_domain = std::any_of(t.initials().begin(), t.initials().end(),
                               [&](int q) { return viable[0][q] != 0; });
  if (!in_domain) return {};
  return ChoiceSearch(c, ft, provider).run();
}

TreeSet composed_fiber_exhaustive(const TopDownRelabeling& t,
                                  const Att& applier, const Tree& s) {
  TreeSet out;
  for (const Tree& relabeled : run_topdown_relabeling_all(t, s).trees()) {
    auto r = eval_datt(applier, relabeled);
    if (r.ground()) out.insert(r.output);
  }
  return out;
}

TreeSet enumerate_uniform_attU(const AttWithLookAround& a, const Tree& s) {
  auto relabeled = run_lookaround(a.around, s);
  if (!relabeled) return {};
  return enumerate_uniform(a.core, *relabeled);
}

}  // namespace attu
