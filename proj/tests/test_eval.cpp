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


#include <random>

#include "attu/eval.hpp"
#include "attu/uniformize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attu;
using namespace attu::test;

TEST_CASE("leftmost derivation of ex1 on f(e,e)") {
  Att ex1 = fixture_att("ex1");
  Tree s = T("f(e,e)");
  auto first = derivation_step(ex1, s, SententialForm::of({"a", {}}));
  REQUIRE(first.size() == 1);
  CHECK(render_form(first[0].form) == "d(a(1.2))");
  CHECK(first[0].rule == RuleLocator{"f", 0});

  SententialForm t = SententialForm::of({"b", {}});
  for (int i = 0; i < 3; ++i) {
    SententialForm wrap;
    wrap.label = "d";
    wrap.children = {t};
    t = wrap;
  }
  auto last = derivation_step(ex1, s, t);
  REQUIRE(last.size() == 1);
  CHECK(last[0].form.to_tree() == d_power(3));
  CHECK(last[0].rule.symbol == "#");

  SententialForm ground;
  ground.label = "e";
  CHECK(derivation_step(ex1, s, ground).empty());

  // rho1 rho4 rho2 rho4 rho3 rho5
  auto trace = trace_derivation(ex1, s);
  std::vector<std::string> used;
  for (const auto& step : trace) used.push_back(render_locator(ex1, step.rule));
  CHECK(used == std::vector<std::string>{
                    "f[0]: a(pi) -> d(a(pi.2))", "e[0]: a(pi) -> d(b(pi))",
                    "f[1]: b(pi.2) -> a(pi.1)", "e[0]: a(pi) -> d(b(pi))",
                    "f[2]: b(pi.1) -> b(pi)", "#[0]: b(pi.1) -> e"});
  CHECK(trace.back().form.to_tree() == d_power(3));
  CHECK(render_form(trace[2].form) == "d(d(a(1.1)))");
}

TEST_CASE("eval_datt") {
  Att ex1 = fixture_att("ex1");
  CHECK(eval_datt(ex1, T("f(e,e)")).output == d_power(3));
  CHECK(eval_datt(ex1, T("e")).output == d_power(1));
  CHECK(eval_datt(ex1, T("f(f(e,e),e)")).output == d_power(5));
  for (const Tree& s : enumerate_trees(ex1.input, 9)) {
    EvalOutcome o = eval_datt(ex1, s);
    REQUIRE(o.ground());
    CHECK(o.output == d_power(static_cast<int>(size(s))));
  }
  CHECK_THROWS_AS(eval_datt(fixture_att("run"), T("e")), Error);

  Att loop = fixture_att("loop");
  EvalOutcome div = eval_datt(loop, T("g(e)"));
  REQUIRE(div.kind == EvalOutcome::Kind::kDivergent);
  REQUIRE(div.cycle.size() >= 2);
  CHECK(div.cycle.front() == div.cycle.back());
  CHECK(div.cycle.front() == AttrOccurrence{"a", {1}});
  CHECK(div.render() == "divergent: a(1.1) -> b(1.1) -> a(1.1)");
  EvalOutcome stuck = eval_datt(loop, T("e"));
  CHECK(stuck.kind == EvalOutcome::Kind::kStuck);
  CHECK(stuck.stuck == AttrOccurrence{"b", {}});
  CHECK(stuck.render() == "stuck: no rule for b(1)");
  // Neither tree has a ground derivative.
  CHECK(enumerate_derivations_bounded(loop, T("e"), 100).outputs.empty());
  CHECK(enumerate_derivations_bounded(loop, T("g(e)"), 100).outputs.empty());
  CHECK_FALSE(derives(loop, T("g(e)"), T("d(e)")));
}

TEST_CASE("deterministic evaluation agrees with the derivation oracles") {
  for (const char* name : {"ex1", "loop", "mid", "revgp", "yn"}) {
    Att d = fixture_att(name);
    REQUIRE(is_deterministic(d));
    for (const Tree& s : enumerate_trees(d.input, 6)) {
      EvalOutcome o = eval_datt(d, s);
      BoundedResult r = enumerate_derivations_bounded(d, s, 500);
      if (o.ground()) {
        CHECK_MESSAGE(r.complete, name, " ", render_tree(s));
        CHECK(r.outputs == TreeSet{o.output});
        CHECK(derives(d, s, o.output));
      } else {
        CHECK_MESSAGE(r.outputs.empty(), name, " ", render_tree(s));
      }
    }
  }
}

TEST_CASE("leftmost selection gives one successor per deterministic step") {
  Att ex1 = fixture_att("ex1");
  for (const Tree& s : enumerate_trees(ex1.input, 5)) {
    SententialForm t = SententialForm::of({"a", {}});
    for (;;) {
      auto next = derivation_step(ex1, s, t, LeafSelection::kLeftmost);
      CHECK(next.size() <= 1);
      if (next.empty()) break;
      t = next.front().form;
    }
    CHECK(t.ground());
  }
}

TEST_CASE("relabeling runs") {
  RankedAlphabet fe{{"f", 2}, {"e", 0}};
  auto id = run_bottomup_relabeling(identity_bottomup(fe), T("f(e,e)"));
  REQUIRE(id);
  CHECK(id->final);
  CHECK(id->output == T("f(e,e)"));

  Document prime = fixture_document("prime");
  auto bottom = item<BottomUpRelabeling>(prime, "prime_id");
  auto top = item<TopDownRelabeling>(prime, "prime_mark");
  for (const Tree& s : enumerate_trees(bottom.input, 5)) {
    auto r = run_bottomup_relabeling(bottom, s);
    REQUIRE(r);
    CHECK(r->final);
    CHECK(r->output == s);
  }
  CHECK(run_topdown_relabeling_all(top, T("f(g(e,e),e)")) ==
        TreeSet{T("f(g'(e',e'),e)")});
  CHECK(run_topdown_deterministic(top, T("f(g(e,e),e)")) ==
        T("f(g'(e',e'),e)"));
  CHECK(run_lookaround(*prime.last_lookaround(), T("f(g(e,e),e)")) ==
        T("f(g'(e',e'),e)"));
  CHECK(run_topdown_relabeling_all(identity_topdown(fe), T("e")) ==
        TreeSet{T("e")});

  BottomUpRelabeling partial = identity_bottomup(fe);
  partial = BottomUpRelabeling{};
  partial.name = "no_e";
  partial.input = fe;
  partial.output = fe;
  int p = partial.add_state("p", true);
  partial.add_transition({"f", {p, p}}, {p, "f"});
  CHECK_FALSE(run_bottomup_relabeling(partial, T("e")));
  LookAround rejecting{"rej", partial, identity_topdown(fe)};
  CHECK_FALSE(run_lookaround(rejecting, T("e")));
  AttWithLookAround d{rejecting, fixture_att("ex1")};
  CHECK_FALSE(eval_dattU(d, T("f(e,e)")));

  Att run = fixture_att("run");
  TopDownRelabeling ann = build_annotation_relabeling(run);
  CHECK(run_topdown_relabeling_all(ann, T("e")).size() ==
        unambiguous_subsets(run.rules_at("e")).size());
  for (const Tree& r : run_topdown_relabeling_all(ann, T("f(e)")).trees()) {
    CHECK(topdown_accepts_pair(ann, T("f(e)"), r));
    CHECK_FALSE(topdown_accepts_pair(ann, T("h(e)"), r));
  }
  CHECK(topdown_in_domain(ann, T("g(h(e))")));
}

TEST_CASE("eval_dattU on ex1 and revg") {
  Att ex1 = fixture_att("ex1");
  AttWithLookAround plain{identity_lookaround(ex1.input), ex1};
  CHECK(eval_dattU(plain, T("f(e,e)"))->output == d_power(3));

  Evaluable revgp = fixture_evaluable("revgp");
  REQUIRE(revgp.around);
  auto o = eval_dattU(revgp.with_lookaround(),
                      T("f(g(f(e,e),e),f(e,g(e,g(e,e))))"));
  REQUIRE(o);
  CHECK(o->output == d_power(5));
}

TEST_CASE("uniform enumeration") {
  Att run = fixture_att("run");
  Tree s3 = T("g(g(e))");
  TreeSet u = enumerate_uniform(run, s3);
  CHECK(u.contains(T("g'(g'(e,e),g'(e,e))")));
  CHECK(u.contains(T("g(g(e,e),g(e,e))")));
  CHECK_FALSE(u.contains(T("g(g(e,e),g'(e,e))")));
  CHECK(u.size() == 4);
  CHECK(u == enumerate_uniform_exhaustive(run, s3));

  CHECK(enumerate_uniform(fixture_att("ex1"), T("f(e,e)")) ==
        TreeSet{d_power(3)});
  CHECK(enumerate_uniform(fixture_att("loop"), T("g(e)")).empty());
  CHECK_THROWS_AS(enumerate_uniform(fixture_att("ambroot"), T("c")), Error);

  // The non-uniform t1 is still in the translation.
  CHECK(derives(run, s3, T("g(g(e,e),g'(e,e))")));
  BoundedResult r = enumerate_derivations_bounded(run, s3, 20000);
  CHECK_FALSE(r.complete);
  CHECK(r.outputs.contains(T("g(g(e,e),g'(e,e))")));
  for (const Tree& t : u.trees()) CHECK(r.outputs.contains(t));
}

TEST_CASE("bounded derivation search") {
  BoundedResult r =
      enumerate_derivations_bounded(fixture_att("ex1"), T("f(e,e)"), 100);
  CHECK(r.complete);
  CHECK(r.outputs == TreeSet{d_power(3)});

  BoundedResult circ =
      enumerate_derivations_bounded(fixture_att("run"), T("h(e)"), 50);
  CHECK_FALSE(circ.complete);
  CHECK(circ.expanded == 50);
  CHECK_FALSE(
      enumerate_derivations_bounded(fixture_att("loop"), T("g(e)"), 50)
          .complete);
}

TEST_CASE("uniform fibers lie inside the translation") {
  for (const char* name : {"ex1", "run", "revg", "even", "choice", "amb2",
                           "loop", "mid"}) {
    Att a = normalize_root_rules(fixture_att(name));
    std::size_t bound = std::string(name) == "run" ? 5 : 6;
    for (const Tree& s : enumerate_trees(a.input, bound)) {
      TreeSet u = enumerate_uniform(a, s);
      for (const Tree& t : u.trees())
        CHECK_MESSAGE(derives(a, s, t), name, " ", render_tree(s), " ",
                      render_tree(t));
      BoundedResult r = enumerate_derivations_bounded(a, s, 1000);
      if (!r.complete) continue;
      for (const Tree& t : u.trees()) CHECK(r.outputs.contains(t));
      CHECK_MESSAGE(u.empty() == r.outputs.empty(), name, " ",
                    render_tree(s));
    }
  }
}

TEST_CASE("lazy and exhaustive uniform enumeration agree") {
  for (const char* name : {"run", "revg", "amb2", "choice", "even"}) {
    Att a = normalize_root_rules(fixture_att(name));
    // The normalized amb2 has many rule variants per symbol.
    std::size_t bound = std::string(name) == "amb2" ? 3 : 4;
    for (const Tree& s : enumerate_trees(a.input, bound))
      CHECK_MESSAGE(enumerate_uniform(a, s) ==
                        enumerate_uniform_exhaustive(a, s),
                    name, " ", render_tree(s));
  }
}
