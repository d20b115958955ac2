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
#include "attu/domain.hpp"
#include "attu/uniformize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attu;
using namespace attu::test;

namespace {

std::optional<Tree> run_bu_final(const BottomUpRelabeling& b, const Tree& s) {
  auto r = run_bottomup_relabeling(b, s);
  if (!r || !r->final) return std::nullopt;
  return r->output;
}

void check_bottomup_composition(const BottomUpRelabeling& b1,
                                const BottomUpRelabeling& b2,
                                std::size_t bound) {
  BottomUpRelabeling c = compose_bottomup(b1, b2);
  CHECK(validate_bottomup(c).empty());
  for (const Tree& s : enumerate_trees(b1.input, bound)) {
    auto mid = run_bu_final(b1, s);
    std::optional<Tree> expected = mid ? run_bu_final(b2, *mid) : std::nullopt;
    CHECK_MESSAGE(run_bu_final(c, s) == expected, b1.name, "+", b2.name, " ",
                  render_tree(s));
  }
}

std::optional<Tree> sequential(const LookAround& u1, const LookAround& u2,
                               const Tree& s) {
  auto mid = run_lookaround(u1, s);
  return mid ? run_lookaround(u2, *mid) : std::nullopt;
}

void check_lookaround_composition(const LookAround& u1, const LookAround& u2,
                                  std::size_t bound) {
  LookAround c = compose_lookarounds(u1, u2);
  for (const auto& v : validate_lookaround(c))
    FAIL_CHECK(u1.name, "+", u2.name, ": ", v.where, ": ", v.message);
  CHECK(c.top.is_deterministic());
  for (const Tree& s : enumerate_trees(u1.input(), bound))
    CHECK_MESSAGE(run_lookaround(c, s) == sequential(u1, u2, s), u1.name,
                  "+", u2.name, " ", render_tree(s));
}

BottomUpAutomaton accept_all(const RankedAlphabet& alphabet) {
  BottomUpAutomaton m;
  m.alphabet = alphabet;
  int q = m.add_state("q", true);
  for (const auto& [sym, rank] : alphabet)
    m.add_transition({sym, std::vector<int>(rank, q)}, q);
  return m;
}

}  // namespace

TEST_CASE("bottom-up composition") {
  Document prime = fixture_document("prime");
  auto id = item<BottomUpRelabeling>(prime, "prime_id");
  auto mark = item<TopDownRelabeling>(prime, "prime_mark");
  Document yn = fixture_document("yn");
  auto parity = item<BottomUpRelabeling>(yn, "parity");

  check_bottomup_composition(identity_bottomup(parity.input), parity, 5);
  check_bottomup_composition(parity, identity_bottomup(parity.output), 5);
  check_bottomup_composition(id, id, 5);
  check_bottomup_composition(id, state_domain_lookahead(mark), 5);
  check_bottomup_composition(
      parity, state_domain_lookahead(identity_topdown(parity.output)), 5);
}

TEST_CASE("look-around composition") {
  LookAround prime = *fixture_document("prime").last_lookaround();
  LookAround parity = *fixture_document("yn").last_lookaround();
  Att revgp = fixture_att("revgp");
  LookAround after_prime = uniformize_att(revgp).around;
  LookAround run_around = uniformize_att(fixture_att("run")).around;

  for (const LookAround* u : {&prime, &parity, &after_prime, &run_around}) {
    check_lookaround_composition(identity_lookaround(u->input()), *u, 5);
    check_lookaround_composition(*u, identity_lookaround(u->output()), 5);
  }
  check_lookaround_composition(prime, after_prime, 5);
  check_lookaround_composition(prime, identity_lookaround(prime.output()), 5);

  // Associativity.
  LookAround id = identity_lookaround(prime.input());
  LookAround left =
      compose_lookarounds(compose_lookarounds(id, prime), after_prime);
  LookAround right =
      compose_lookarounds(id, compose_lookarounds(prime, after_prime));
  for (const Tree& s : enumerate_trees(prime.input(), 4))
    CHECK(run_lookaround(left, s) == run_lookaround(right, s));
}

TEST_CASE("output restriction") {
  Att run = fixture_att("run");
  Tree s3 = T("g(g(e))");

  // Only outputs without g'.
  BottomUpAutomaton no_gp;
  no_gp.alphabet = run.output;
  int ok = no_gp.add_state("ok", true);
  no_gp.add_transition({"e", {}}, ok);
  no_gp.add_transition({"h", {ok}}, ok);
  no_gp.add_transition({"g", {ok, ok}}, ok);
  Att r = restrict_att_output(run, no_gp);
  CHECK(validate_att(r).empty());

  std::vector<Tree> candidates = enumerate_trees(run.output, 7);
  for (const Tree& s : {T("g(g(e))"), T("g(e)"), T("f(g(e))"), T("h(g(e))")}) {
    for (const Tree& t : candidates) {
      bool expected = derives(run, s, t) && automaton_accepts(no_gp, t);
      CHECK_MESSAGE(derives(r, s, t) == expected, render_tree(s), " ",
                    render_tree(t));
    }
  }
  BoundedResult br = enumerate_derivations_bounded(r, s3, 20000);
  CHECK(br.outputs.contains(T("g(g(e,e),g(e,e))")));
  for (const Tree& t : br.outputs.trees()) CHECK(automaton_accepts(no_gp, t));

  // Everything kept, nothing kept.
  Att same = restrict_att_output(run, accept_all(run.output));
  BottomUpAutomaton none;
  none.alphabet = run.output;
  Att empty = restrict_att_output(run, none);
  for (const Tree& s : enumerate_trees(run.input, 4)) {
    for (const Tree& t : enumerate_trees(run.output, 5)) {
      CHECK(derives(same, s, t) == derives(run, s, t));
      CHECK_FALSE(derives(empty, s, t));
    }
  }
  for (const char* name : {"ex1", "revg", "amb2", "choice"}) {
    Att a = fixture_att(name);
    Att kept = restrict_att_output(a, accept_all(a.output));
    for (const Tree& s : enumerate_trees(a.input, 5))
      CHECK_MESSAGE(complete_fiber(kept, s) == complete_fiber(a, s), name,
                    " ", render_tree(s));
  }

  // Even-length d-chains only.
  Att revg = fixture_att("revg");
  BottomUpAutomaton even = datt_domain_automaton(fixture_att("mid"));
  even = BottomUpAutomaton{};
  even.alphabet = revg.output;
  int e0 = even.add_state("even", true);
  int e1 = even.add_state("odd");
  even.add_transition({"e", {}}, e0);
  even.add_transition({"d", {e0}}, e1);
  even.add_transition({"d", {e1}}, e0);
  Att rev_even = restrict_att_output(revg, even);
  for (const Tree& s : enumerate_trees(revg.input, 7)) {
    TreeSet expected;
    for (const Tree& t : complete_fiber(revg, s).trees())
      if (automaton_accepts(even, t)) expected.insert(t);
    TreeSet got = complete_fiber(rev_even, s);
    CHECK_MESSAGE(got == expected, render_tree(s));
  }
}
