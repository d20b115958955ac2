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


// Acceptance suite. Prints one line per criterion and exits non-zero if any
// criterion fails or exceeds its time limit. Criteria can be selected by
// number: attu_acceptance 1 6

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "attu/checks.hpp"
#include "attu/compose.hpp"
#include "attu/domain.hpp"
#include "attu/dsl.hpp"
#include "attu/eval.hpp"
#include "attu/fixtures.hpp"
#include "attu/generate.hpp"
#include "attu/uniformize.hpp"

using namespace attu;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void require(const CheckReport& r) {
    if (!r.passed() && ok) {
      ok = false;
      detail = r.render();
    }
  }
};

Tree d_power(int n) {
  Tree t("e");
  for (int i = 0; i < n; ++i) t = Tree("d", {t});
  return t;
}

std::vector<Att> fixture_atts() {
  std::vector<Att> out;
  for (const Fixture& f : fixtures())
    for (const auto& item : parse_dsl(f.text).items)
      if (const Att* a = std::get_if<Att>(&item)) out.push_back(*a);
  return out;
}

std::vector<AttWithLookAround> fixture_attus() {
  std::vector<AttWithLookAround> out;
  for (const Fixture& f : fixtures()) {
    Document doc = parse_dsl(f.text);
    if (doc.last_att() && doc.last_lookaround())
      out.push_back(evaluable_of(doc).with_lookaround());
  }
  return out;
}

Evaluable evaluable(const AttWithLookAround& a) { return {a.core, a.around}; }

Result example_one() {
  Result r;
  Att ex1 = fixture_att("ex1");
  EvalOutcome o = eval_datt(ex1, parse_tree("f(e,e)"));
  r.require(o.ground() && render_tree(o.output) == "d(d(d(e)))",
            "f(e,e) gives " + o.render());
  std::size_t n = 0;
  for (const Tree& s : enumerate_trees(ex1.input, 9)) {
    ++n;
    EvalOutcome t = eval_datt(ex1, s);
    r.require(t.ground() && t.output == d_power(static_cast<int>(size(s))),
              render_tree(s) + " gives " + t.render());
  }
  r.detail = r.ok ? std::to_string(n) + " trees" : r.detail;
  return r;
}

Result uniform_run() {
  Result r;
  Att run = fixture_att("run");
  Tree s = parse_tree("g(g(e))");
  TreeSet uniform = enumerate_uniform(run, s);
  TreeSet want{parse_tree("g(g(e,e),g(e,e))"), parse_tree("g'(g'(e,e),g'(e,e))"),
               parse_tree("g'(g(e,e),g(e,e))"), parse_tree("g(g'(e,e),g'(e,e))")};
  r.require(uniform == want, "uniform fiber " + uniform.render());
  r.require(enumerate_uniform_exhaustive(run, s) == want,
            "exhaustive uniform fiber differs");
  Tree mixed = parse_tree("g(g(e,e),g'(e,e))");
  r.require(!uniform.contains(mixed), "mixed tree is uniform");
  BoundedResult full = enumerate_derivations_bounded(run, s, 20000);
  r.require(full.outputs.contains(mixed), "bounded search misses the mixed tree");
  r.require(derives(run, s, mixed), "mixed tree not derivable");
  for (const Tree& t : want.trees()) r.require(full.outputs.contains(t), "bounded search misses " + render_tree(t));
  if (r.ok) r.detail = uniform.render();
  return r;
}

Result subset_count() {
  Result r;
  auto subsets = unambiguous_subsets(fixture_att("run").rules_at("f"));
  r.require(subsets.size() == 12, std::to_string(subsets.size()) + " subsets");
  r.require(std::find(subsets.begin(), subsets.end(), std::vector<std::size_t>{}) !=
                subsets.end(),
            "empty subset missing");
  if (r.ok) r.detail = "12 subsets";
  return r;
}

Result lemma2() {
  Result r;
  for (const char* name : {"run", "ex1"}) r.require(check_lemma2(fixture_att(name), {5}));
  return r;
}

Result prop4() {
  Result r;
  std::size_t n = 0;
  for (const Att& a : fixture_atts()) {
    UniformizerBundle b = uniformize_att(a);
    r.require(check_prop4(b.annotation, {5}));
    r.require(check_prop4(b.restricted, {5}));
    n += 2;
  }
  for (int seed = 0; seed < 50; ++seed, ++n)
    r.require(check_prop4(random_topdown(seed), {5}));
  if (r.ok) r.detail = std::to_string(n) + " relabelings";
  return r;
}

Result uniformizers() {
  Result r;
  r.require(check_uniformizer(fixture_att("ex1"), {9}));
  r.require(check_uniformizer(fixture_att("run"), {5}));
  Att revg = fixture_att("revg");
  r.require(check_uniformizer(revg, {7}));
  AttWithLookAround d = uniformize_att(revg).result;
  auto o = eval_dattU(d, parse_tree("f(g(f(e,e),e),f(e,g(e,g(e,e))))"));
  r.require(o && o->ground() && o->output == d_power(5),
            "revg example gives " + (o ? o->render() : std::string("nothing")));
  r.require(check_equivalence(Evaluable{revg}, evaluable(d), {7}));
  int ground = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Att a = random_att(seed);
    r.require(check_uniformizer(a, {4}));
    AttWithLookAround u = uniformize_att(a).result;
    for (const Tree& s : enumerate_trees(a.input, 4)) {
      auto t = eval_dattU(u, s);
      if (t && t->ground()) {
        ++ground;
        break;
      }
    }
  }
  // Most random atts must translate something, or the property is vacuous.
  r.require(ground >= 50, std::to_string(ground) + " random atts with outputs");
  if (r.ok) r.detail = std::to_string(ground) + "/100 random atts with outputs";
  return r;
}

Result domains() {
  Result r;
  std::size_t n = 0;
  auto compare = [&](const Att& d) {
    BottomUpAutomaton m = datt_domain_automaton(d);
    for (const Tree& s : enumerate_trees(d.input, 7)) {
      ++n;
      r.require(m.accepts(s) == eval_datt(d, s).ground(),
                d.name + " disagrees on " + render_tree(s));
    }
  };
  int fixtures_used = 0;
  for (const Att& a : fixture_atts())
    if (is_deterministic(a)) {
      compare(a);
      ++fixtures_used;
    }
  for (const AttWithLookAround& a : fixture_attus()) {
    BottomUpAutomaton m = dattU_domain_automaton(a);
    for (const Tree& s : enumerate_trees(a.around.input(), 7)) {
      ++n;
      auto o = eval_dattU(a, s);
      r.require(m.accepts(s) == (o && o->ground()),
                a.core.name + " with look-around disagrees on " + render_tree(s));
    }
  }
  for (int seed = 0; seed < 50; ++seed) compare(random_datt(seed));
  if (r.ok)
    r.detail = std::to_string(fixtures_used) + " fixtures, 50 random, " +
               std::to_string(n) + " trees";
  return r;
}

Result lookaround_composition() {
  Result r;
  std::vector<LookAround> pool;
  for (const Fixture& f : fixtures())
    for (const auto& item : parse_dsl(f.text).items)
      if (const LookAround* u = std::get_if<LookAround>(&item)) pool.push_back(*u);
  for (const Att& a : fixture_atts()) pool.push_back(uniformize_att(a).around);

  auto same = [&](const LookAround& u1, const LookAround& u2) {
    LookAround c = compose_lookarounds(u1, u2);
    r.require(validate_lookaround(c).empty(), c.name + " is invalid");
    r.require(c.top.is_deterministic(), c.name + " is not deterministic");
    for (const Tree& s : enumerate_trees(u1.input(), 5)) {
      auto mid = run_lookaround(u1, s);
      auto want = mid ? run_lookaround(u2, *mid) : std::nullopt;
      r.require(run_lookaround(c, s) == want, c.name + " differs on " + render_tree(s));
    }
  };
  std::size_t pairs = 0;
  for (const LookAround& u : pool) {
    LookAround in = identity_lookaround(u.input());
    LookAround out = identity_lookaround(u.output());
    same(in, u);
    same(u, out);
    // Identity laws against the look-around itself.
    LookAround l = compose_lookarounds(in, u), rr = compose_lookarounds(u, out);
    for (const Tree& s : enumerate_trees(u.input(), 5)) {
      r.require(run_lookaround(l, s) == run_lookaround(u, s), "left identity fails for " + u.name);
      r.require(run_lookaround(rr, s) == run_lookaround(u, s), "right identity fails for " + u.name);
    }
    for (const LookAround& v : pool)
      if (u.output() == v.input()) {
        same(u, v);
        ++pairs;
      }
  }
  r.require(pairs > 0, "no chaining pairs");
  if (r.ok)
    r.detail = std::to_string(pool.size()) + " look-arounds, " + std::to_string(pairs) +
               " chaining pairs";
  return r;
}

Result composition_chains() {
  Result r;
  r.require(check_composition({fixture_evaluable("ex1"), fixture_evaluable("mid")}, {4}));
  Document flat = fixture_document("flat");
  Att run_flat = restrict_att_output(fixture_att("run"), *flat.last_automaton());
  r.require(check_composition({Evaluable{run_flat}, fixture_evaluable("copy")}, {4}));
  CheckReport pre =
      check_composition({fixture_evaluable("choice"), fixture_evaluable("mid")}, {4});
  r.require(pre.verdict == Verdict::kPreconditionFailed, "non-functional chain not rejected");
  return r;
}

Result normalization() {
  Result r;
  std::size_t compared = 0;
  auto compare = [&](const Att& a, std::size_t bound, bool need_complete) {
    Att n = normalize_root_rules(a);
    r.require(root_rules_unambiguous(n), a.name + " still ambiguous");
    std::size_t here = 0;
    for (const Tree& s : enumerate_trees(a.input, bound)) {
      BoundedResult x = enumerate_derivations_bounded(a, s, 2000);
      BoundedResult y = enumerate_derivations_bounded(n, s, 2000);
      if (x.complete && y.complete) {
        ++here;
        r.require(x.outputs == y.outputs, a.name + " differs on " + render_tree(s) +
                                              ": " + x.outputs.render() + " vs " +
                                              y.outputs.render());
        continue;
      }
      // Cut-off searches: small outputs found on either side must be
      // derivable by the other.
      for (const Tree& t : x.outputs.trees())
        if (size(t) <= 12) r.require(derives(n, s, t), a.name + " loses " + render_tree(t));
      for (const Tree& t : y.outputs.trees())
        if (size(t) <= 12) r.require(derives(a, s, t), a.name + " gains " + render_tree(t));
    }
    r.require(here > 0 || !need_complete, a.name + ": no complete runs");
    compared += here;
  };
  int used = 0;
  for (const Att& a : fixture_atts())
    if (!root_rules_unambiguous(a)) {
      compare(a, 5, true);
      ++used;
    }
  r.require(used >= 2, "fewer than two fixtures with ambiguous root rules");
  int random_used = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Att a = random_att(seed);
    if (root_rules_unambiguous(a)) continue;
    compare(a, 4, false);
    ++random_used;
  }
  if (r.ok)
    r.detail = std::to_string(used) + " fixtures, " + std::to_string(random_used) +
               " random atts, " + std::to_string(compared) + " complete comparisons";
  return r;
}

Result stable_artifacts() {
  Result r;
  std::size_t n = 0;
  for (const Att& a : fixture_atts()) {
    std::string once = serialize_dsl(document_of(uniformize_att(a).result));
    std::string twice = serialize_dsl(document_of(uniformize_att(a).result));
    r.require(once == twice, a.name + " serializes differently");
    r.require(parse_dsl(once) == document_of(uniformize_att(a).result),
              a.name + " does not round-trip");
    ++n;
  }
  for (const AttWithLookAround& a : fixture_attus()) {
    r.require(serialize_dsl(document_of(uniformize_attU(a))) ==
                  serialize_dsl(document_of(uniformize_attU(a))),
              a.core.name + " with look-around serializes differently");
    ++n;
  }
  for (int seed = 0; seed < 10; ++seed, ++n)
    r.require(serialize_dsl(document_of(uniformize_att(random_att(seed)).result)) ==
                  serialize_dsl(document_of(uniformize_att(random_att(seed)).result)),
              "random att " + std::to_string(seed) + " serializes differently");
  if (r.ok) r.detail = std::to_string(n) + " uniformizations";
  return r;
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds
  std::function<Result()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "ex1 translates every tree s to d^size(s)(e)", 5, example_one},
      {2, "uniform translations of run on g(g(e))", 10, uniform_run},
      {3, "unambiguous subsets of run at f", 1, subset_count},
      {4, "annotation then application equals the uniform fibers", 120, lemma2},
      {5, "look-ahead uniformizers of top-down relabelings", 300, prop4},
      {6, "uniformizer contract on fixtures and random atts", 900, uniformizers},
      {7, "domain automata agree with evaluation", 300, domains},
      {8, "look-around composition equals sequential application", 120,
       lookaround_composition},
      {9, "uniformized functional chains", 600, composition_chains},
      {10, "root-rule normalization preserves the translation", 120, normalization},
      {11, "uniformization output is byte-stable", 60, stable_artifacts},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= c.limit;
    bool pass = res.ok && in_time;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit);
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  ("
              << timing << ")";
    if (!in_time) std::cout << "  over the time limit";
    if (!res.detail.empty()) {
      if (res.ok) std::cout << "  " << res.detail;
      else std::cout << "\n" << res.detail;
    }
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
