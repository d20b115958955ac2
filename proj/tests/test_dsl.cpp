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


#include <fstream>
#include <sstream>

#include "attu/compose.hpp"
#include "attu/domain.hpp"
#include "attu/uniformize.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attu;
using namespace attu::test;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ex1 parses to its rule sets") {
  Att want;
  want.name = "ex1";
  want.input = RankedAlphabet{{"e", 0}, {"f", 2}};
  want.output = RankedAlphabet{{"d", 1}, {"e", 0}};
  want.syn = {"a"};
  want.inh = {"b"};
  want.initial = "a";
  want.rules["f"] = {
      {Lhs::syn("a"), RhsTerm::output("d", {RhsTerm::syn("a", 2)})},
      {Lhs::inh("b", 2), RhsTerm::syn("a", 1)},
      {Lhs::inh("b", 1), RhsTerm::inh("b")}};
  want.rules["e"] = {
      {Lhs::syn("a"), RhsTerm::output("d", {RhsTerm::inh("b")})}};
  want.root_rules = {{Lhs::inh("b", 1), RhsTerm::output("e")}};
  CHECK(fixture_att("ex1") == want);
}

TEST_CASE("fixture files match the embedded texts") {
  for (const Fixture& f : fixtures()) {
    std::string path = std::string(ATTU_FIXTURE_DIR) + "/" + std::string(f.file);
    CHECK_MESSAGE(read_file(path) == f.text, path);
    Document doc = parse_dsl(f.text);
    CHECK_MESSAGE(serialize_dsl(doc) == f.text, f.file);
  }
  CHECK_THROWS_AS(fixture("nope"), Error);
  CHECK(fixture("ex1").file == "ex1.att");
}

TEST_CASE("round trips") {
  std::vector<Document> docs;
  for (const Fixture& f : fixtures()) docs.push_back(parse_dsl(f.text));
  UniformizerBundle run = uniformize_att(fixture_att("run"));
  docs.push_back(document_of(run.result));
  docs.push_back(document_of(uniformize_attU(
      fixture_evaluable("revgp").with_lookaround())));
  Document automata;
  automata.items.push_back(run.applier_domain);
  automata.items.push_back(
      restrict_att_output(fixture_att("ex1"), datt_domain_automaton(fixture_att("mid"))));
  docs.push_back(automata);
  for (const Document& doc : docs) {
    std::string text = serialize_dsl(doc);
    Document back = parse_dsl(text);
    CHECK(back == doc);
    CHECK(serialize_dsl(back) == text);
  }
}

TEST_CASE("evaluable documents") {
  Evaluable plain = fixture_evaluable("ex1");
  CHECK_FALSE(plain.around);
  CHECK(plain.with_lookaround().around.input() == plain.core.input);
  Evaluable withla = fixture_evaluable("revgp");
  REQUIRE(withla.around);
  CHECK(withla.around->name == "prime");
  CHECK_THROWS_AS(evaluable_of(fixture_document("prime")), Error);
}

TEST_CASE("DSL errors carry positions") {
  try {
    parse_dsl("att x {\n  input { e:0, e:0 }\n}");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate symbol 'e'") !=
          std::string::npos);
    CHECK(e.line() == 2);
  }
  try {
    parse_dsl("att x {\n  input { e:0 }\n  output { e:0 }\n  syn { a }\n"
              "  inh {}\n  initial a\n  rules e { a(pi) -> ; }\n}");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_dsl("att {"), ParseError);
  CHECK_THROWS_AS(parse_dsl("wat x {}"), ParseError);
  // Unknown attributes parse and are reported by validation.
  Att bad = std::get<Att>(parse_dsl(
                              "att x {\n  input { e:0 }\n  output { e:0 }\n"
                              "  syn { a }\n  inh {}\n  initial a\n"
                              "  rules e { a(pi) -> q; }\n}")
                              .items.front());
  CHECK(has_violation(validate_att(bad), "q"));
}

TEST_CASE("comments and layout are ignored") {
  std::string text = std::string(fixture("ex1").text);
  std::string noisy = "// leading comment\n" + text;
  noisy.insert(noisy.find("rules f {") + 9, " // inline\n\n");
  CHECK(parse_dsl(noisy) == parse_dsl(text));
}
