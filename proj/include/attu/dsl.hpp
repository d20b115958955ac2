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


// Text format for atts, relabelings, look-arounds and automata.
//
//   att ex1 {
//     input { e:0, f:2 }
//     output { d:1, e:0 }
//     syn { a }
//     inh { b }
//     initial a
//     rules f { a(pi) -> d(a(pi.2)); b(pi.2) -> a(pi.1); }
//     rules root { b(pi.1) -> e; }
//   }
//
// "//" starts a comment. Serialization is canonical: symbols and rule
// blocks in name order, rules in declaration order.

#ifndef ATTU_DSL_HPP_
#define ATTU_DSL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "attu/domain.hpp"
#include "attu/model.hpp"

namespace attu {

using DslItem = std::variant<Att, BottomUpRelabeling, TopDownRelabeling,
                             LookAround, BottomUpAutomaton>;

struct Document {
  std::vector<DslItem> items;

  const Att* last_att() const;
  const LookAround* last_lookaround() const;
  const BottomUpAutomaton* last_automaton() const;
  const Att* find_att(const std::string& name) const;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Throws ParseError with line and column.
Document parse_dsl(std::string_view text);
std::string serialize_dsl(const Document& doc);

std::string serialize(const Att& a);
std::string serialize(const BottomUpRelabeling& b);
std::string serialize(const TopDownRelabeling& t);
/// The look-around block only; its parts are not included.
std::string serialize(const LookAround& u);
std::string serialize(const BottomUpAutomaton& m);

/// Bottom-up part, top-down part, look-around block and core att.
Document document_of(const AttWithLookAround& a);
/// Parts and look-around block.
Document document_of(const LookAround& u);

/// What a file evaluates as: its last att, behind its last look-around if
/// it has one.
struct Evaluable {
  Att core;
  std::optional<LookAround> around;

  AttWithLookAround with_lookaround() const;
};

/// Throws Error if the document has no att.
Evaluable evaluable_of(const Document& doc);

}  // namespace attu

#endif  // ATTU_DSL_HPP_
