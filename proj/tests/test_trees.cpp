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


#include <set>

#include "attu/trees.hpp"
#include "doctest.h"

using attu::Tree;

TEST_CASE("parse and render round-trip") {
  Tree t = attu::parse_tree("f(e,e)");
  CHECK(t.label == "f");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[1].label == "e");
  CHECK(attu::render_tree(attu::parse_tree("e")) == "e");
  CHECK(attu::render_tree(attu::parse_tree(" d( d (d(e)) ) ")) == "d(d(d(e)))");
}

TEST_CASE("parse errors carry a position") {
  try {
    attu::parse_tree("f(e,\n  )");
    FAIL("expected ParseError");
  } catch (const attu::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(attu::parse_tree("f(e"), attu::ParseError);
  CHECK_THROWS_AS(attu::parse_tree("f(e) e"), attu::ParseError);
}

TEST_CASE("alphabet checks") {
  attu::RankedAlphabet sigma{{"f", 2}, {"e", 0}};
  CHECK_NOTHROW(attu::parse_tree("f(e,f(e,e))", &sigma));
  CHECK_THROWS_WITH_AS(attu::parse_tree("g(e)", &sigma),
                       doctest::Contains("unknown symbol"), attu::Error);
  CHECK_THROWS_WITH_AS(attu::parse_tree("f(e)", &sigma),
                       doctest::Contains("arity mismatch"), attu::Error);
  CHECK_THROWS(sigma.add("f", 1));
  CHECK_THROWS(sigma.add("#", 0));
  CHECK_THROWS(sigma.add("a b", 0));
}

TEST_CASE("names") {
  CHECK(attu::is_valid_name("a'"));
  CHECK(attu::is_valid_name("f@{0,2}"));
  CHECK(attu::is_valid_name("e@{}"));
  CHECK_FALSE(attu::is_valid_name("f@x"));
  CHECK_FALSE(attu::is_valid_name("a->b"));
  CHECK_FALSE(attu::is_valid_name(""));
  CHECK_FALSE(attu::is_valid_name("#"));
  Tree t = attu::parse_tree("g@{1}(e@{})");
  CHECK(t.label == "g@{1}");
  CHECK(t.children[0].label == "e@{}");
}

TEST_CASE("addresses, subtrees and replacement") {
  Tree t = attu::parse_tree("f(a,f(a,b))");
  CHECK(attu::render_tree(attu::subtree_at(t, {2})) == "f(a,b)");
  CHECK(attu::render_tree(attu::replace_at(t, {1}, Tree("b"))) ==
        "f(b,f(a,b))");
  CHECK(attu::size(attu::parse_tree("f(e,e)")) == 3);
  CHECK(attu::height(t) == 3);
  CHECK_THROWS(attu::subtree_at(t, {3}));
  CHECK(attu::render_address({}) == "eps");
  CHECK(attu::render_address({1, 2}) == "1.2");
  for (const auto& v : attu::addresses(t))
    CHECK(attu::replace_at(t, v, attu::subtree_at(t, v)) == t);
}

TEST_CASE("enumeration") {
  attu::RankedAlphabet fe{{"f", 2}, {"e", 0}};
  auto r1 = attu::enumerate_trees(fe, 1);
  REQUIRE(r1.size() == 1);
  CHECK(attu::render_tree(r1[0]) == "e");
  std::vector<std::string> r3;
  for (const auto& t : attu::enumerate_trees(fe, 3))
    r3.push_back(attu::render_tree(t));
  CHECK(r3 == std::vector<std::string>{"e", "f(e,e)"});
  std::vector<std::string> g3;
  for (const auto& t : attu::enumerate_trees({{"g", 1}, {"e", 0}}, 3))
    g3.push_back(attu::render_tree(t));
  CHECK(g3 == std::vector<std::string>{"e", "g(e)", "g(g(e))"});
  CHECK(attu::enumerate_trees({{"g", 1}}, 4).empty());

  // Binary trees with n internal nodes are counted by Catalan numbers.
  auto r7 = attu::enumerate_trees(fe, 7);
  CHECK(r7.size() == 1 + 1 + 2 + 5);
  std::set<std::string> seen;
  for (const auto& t : r7) {
    auto s = attu::render_tree(t);
    CHECK(seen.insert(s).second);
    CHECK(attu::parse_tree(s) == t);
  }
  attu::RankedAlphabet mixed{{"f", 2}, {"g", 1}, {"e", 0}, {"c", 0}};
  auto all = attu::enumerate_trees(mixed, 5);
  std::set<std::string> mseen;
  for (const auto& t : all) mseen.insert(attu::render_tree(t));
  CHECK(mseen.size() == all.size());
  CHECK(mseen.count("f(g(c),g(e))") == 1);
  CHECK(mseen.count("g(g(g(g(c))))") == 1);
}

TEST_CASE("tree sets") {
  attu::TreeSet s{attu::parse_tree("e"), attu::parse_tree("d(e)")};
  CHECK(s.size() == 2);
  CHECK_FALSE(s.insert(attu::parse_tree("e")));
  CHECK(s.render() == "{d(e), e}");
  CHECK(s.contains("d(e)"));
}
