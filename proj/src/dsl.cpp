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


#include "attu/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace attu {

namespace {

struct Token {
  enum class Kind { kName, kPunct, kArrow, kEnd };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Kind::kArrow, "->", line, col});
      advance(2);
      continue;
    }
    if (std::string_view("(){},;:/").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::kPunct, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    std::size_t n = scan_name(text, i);
    if (n == 0)
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    out.push_back({Token::Kind::kName, std::string(text.substr(i, n)), line, col});
    advance(n);
  }
  out.push_back({Token::Kind::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Document parse() {
    Document doc;
    while (peek().kind != Token::Kind::kEnd) {
      const Token& t = peek();
      if (t.text == "att") {
        doc.items.push_back(parse_att());
      } else if (t.text == "burelab") {
        doc.items.push_back(parse_burelab());
      } else if (t.text == "tdrelab") {
        doc.items.push_back(parse_tdrelab());
      } else if (t.text == "lookaround") {
        doc.items.push_back(parse_lookaround(doc));
      } else if (t.text == "automaton") {
        doc.items.push_back(parse_automaton());
      } else {
        fail(t, "expected att, burelab, tdrelab, lookaround or automaton");
      }
    }
    return doc;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(what, t.line, t.column);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  bool at(std::string_view text) const {
    return peek().kind != Token::Kind::kEnd && peek().text == text;
  }

  void expect(std::string_view text) {
    const Token& t = next();
    if (t.text != text || t.kind == Token::Kind::kEnd)
      fail(t, "expected '" + std::string(text) + "'");
  }

  const Token& name() {
    const Token& t = next();
    if (t.kind != Token::Kind::kName) fail(t, "expected a name");
    return t;
  }

  int nat() {
    const Token& t = name();
    if (t.text.size() > 9 ||
        !std::all_of(t.text.begin(), t.text.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      fail(t, "expected a number");
    return std::stoi(t.text);
  }

  RankedAlphabet sig() {
    expect("{");
    RankedAlphabet out;
    if (at("}")) {
      next();
      return out;
    }
    for (;;) {
      const Token& sym = name();
      expect(":");
      int rank = nat();
      if (out.contains(sym.text)) fail(sym, "duplicate symbol '" + sym.text + "'");
      try {
        out.add(sym.text, rank);
      } catch (const Error& e) {
        fail(sym, e.what());
      }
      if (at(",")) {
        next();
        continue;
      }
      expect("}");
      return out;
    }
  }

  std::vector<std::string> names() {
    expect("{");
    std::vector<std::string> out;
    if (at("}")) {
      next();
      return out;
    }
    for (;;) {
      const Token& n = name();
      if (std::find(out.begin(), out.end(), n.text) != out.end())
        fail(n, "duplicate name '" + n.text + "'");
      out.push_back(n.text);
      if (at(",")) {
        next();
        continue;
      }
      expect("}");
      return out;
    }
  }

  // Returns 0 for "pi" and i for "pi.i".
  int path() {
    const Token& t = name();
    if (t.text == "pi") return 0;
    if (t.text.rfind("pi.", 0) == 0 && t.text.size() > 3 && t.text.size() < 12 &&
        std::all_of(t.text.begin() + 3, t.text.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      int i = std::stoi(t.text.substr(3));
      if (i >= 1) return i;
    }
    fail(t, "expected 'pi' or 'pi.i'");
  }

  // ---------------------------------------------------------------- att

  Att parse_att() {
    expect("att");
    Att a;
    a.name = name().text;
    expect("{");
    expect("input");
    a.input = sig();
    expect("output");
    a.output = sig();
    expect("syn");
    a.syn = names();
    expect("inh");
    a.inh = names();
    expect("initial");
    a.initial = name().text;
    while (at("rules")) {
      next();
      const Token& block = name();
      bool root = block.text == "root";
      expect("{");
      std::vector<Rule> parsed;
      while (!at("}")) {
        if (peek().kind == Token::Kind::kEnd) fail(peek(), "unterminated rules block");
        parsed.push_back(parse_rule(a));
        expect(";");
      }
      next();
      auto& dest = root ? a.root_rules : a.rules[block.text];
      dest.insert(dest.end(), parsed.begin(), parsed.end());
      if (!root && a.rules[block.text].empty()) a.rules.erase(block.text);
    }
    expect("}");
    return a;
  }

  Rule parse_rule(const Att& a) {
    const Token& attr = name();
    expect("(");
    int p = path();
    expect(")");
    Lhs lhs;
    if (a.is_syn(attr.text)) {
      if (p != 0) fail(attr, "synthesized attribute on the left must be a(pi)");
      lhs = Lhs::syn(attr.text);
    } else if (a.is_inh(attr.text)) {
      if (p == 0) fail(attr, "inherited attribute on the left must be b(pi.i)");
      lhs = Lhs::inh(attr.text, p);
    } else {
      fail(attr, "'" + attr.text + "' is not a declared attribute");
    }
    const Token& arrow = next();
    if (arrow.kind != Token::Kind::kArrow) fail(arrow, "expected '->'");
    return {lhs, parse_rhs(a)};
  }

  RhsTerm parse_rhs(const Att& a) {
    const Token& head = name();
    if (a.is_syn(head.text) || a.is_inh(head.text)) {
      expect("(");
      int p = path();
      expect(")");
      if (a.is_syn(head.text)) {
        if (p == 0) fail(head, "synthesized attribute on the right must be a(pi.i)");
        return RhsTerm::syn(head.text, p);
      }
      if (p != 0) fail(head, "inherited attribute on the right must be b(pi)");
      return RhsTerm::inh(head.text);
    }
    RhsTerm t = RhsTerm::output(head.text);
    if (at("(")) {
      next();
      for (;;) {
        t.args.push_back(parse_rhs(a));
        if (at(",")) {
          next();
          continue;
        }
        expect(")");
        break;
      }
    }
    return t;
  }

  // ---------------------------------------------------------- relabelings

  static int state_index(const std::vector<std::string>& states,
                         const std::string& s) {
    auto it = std::find(states.begin(), states.end(), s);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
  }

  int state_ref(const std::vector<std::string>& states) {
    const Token& t = name();
    int i = state_index(states, t.text);
    if (i < 0) fail(t, "unknown state '" + t.text + "'");
    return i;
  }

  std::vector<int> state_list(const std::vector<std::string>& states) {
    expect("(");
    std::vector<int> out;
    if (at(")")) {
      next();
      return out;
    }
    for (;;) {
      out.push_back(state_ref(states));
      if (at(",")) {
        next();
        continue;
      }
      expect(")");
      return out;
    }
  }

  BottomUpRelabeling parse_burelab() {
    expect("burelab");
    BottomUpRelabeling b;
    b.name = name().text;
    expect("{");
    expect("input");
    b.input = sig();
    expect("output");
    b.output = sig();
    expect("states");
    auto states = names();
    expect("finals");
    const Token& finals_at = peek();
    auto finals = names();
    for (const auto& s : states) b.add_state(s);
    for (const auto& f : finals) {
      int i = state_index(states, f);
      if (i < 0) fail(finals_at, "unknown final state '" + f + "'");
      b.set_final(i);
    }
    while (at("rule")) {
      const Token& start = next();
      const Token& sym = name();
      auto kids = state_list(states);
      const Token& arrow = next();
      if (arrow.kind != Token::Kind::kArrow) fail(arrow, "expected '->'");
      int target = state_ref(states);
      expect("/");
      std::string out = name().text;
      expect(";");
      if (b.find({sym.text, kids}))
        fail(start, "duplicate rule for '" + sym.text + "'");
      b.add_transition({sym.text, kids}, {target, out});
    }
    expect("}");
    return b;
  }

  TopDownRelabeling parse_tdrelab() {
    expect("tdrelab");
    TopDownRelabeling t;
    t.name = name().text;
    expect("{");
    expect("input");
    t.input = sig();
    expect("output");
    t.output = sig();
    expect("states");
    auto states = names();
    expect("initials");
    const Token& init_at = peek();
    auto initials = names();
    for (const auto& s : states) t.add_state(s);
    for (const auto& q : initials) {
      int i = state_index(states, q);
      if (i < 0) fail(init_at, "unknown initial state '" + q + "'");
      t.add_initial(i);
    }
    while (at("rule")) {
      next();
      TdRule r;
      r.state = state_ref(states);
      expect("(");
      r.symbol = name().text;
      int arity = 0;
      if (at("(")) {
        next();
        if (!at(")")) {
          for (;;) {
            const Token& v = name();
            if (v.text != "x" + std::to_string(arity + 1))
              fail(v, "expected variable x" + std::to_string(arity + 1));
            ++arity;
            if (at(",")) {
              next();
              continue;
            }
            break;
          }
        }
        expect(")");
      }
      expect(")");
      const Token& arrow = next();
      if (arrow.kind != Token::Kind::kArrow) fail(arrow, "expected '->'");
      r.output = name().text;
      if (at("(")) {
        next();
        for (int i = 1;; ++i) {
          r.child_states.push_back(state_ref(states));
          expect("(");
          const Token& v = name();
          if (v.text != "x" + std::to_string(i))
            fail(v, "expected variable x" + std::to_string(i));
          expect(")");
          if (at(",")) {
            next();
            continue;
          }
          expect(")");
          break;
        }
      }
      if (static_cast<int>(r.child_states.size()) != arity)
        fail(peek(), "rule uses " + std::to_string(arity) +
                         " variables on the left but " +
                         std::to_string(r.child_states.size()) + " on the right");
      expect(";");
      t.add_rule(std::move(r));
    }
    expect("}");
    return t;
  }

  LookAround parse_lookaround(const Document& doc) {
    expect("lookaround");
    LookAround u;
    u.name = name().text;
    expect("{");
    expect("bottom");
    const Token& b = name();
    expect("top");
    const Token& t = name();
    expect("}");
    const BottomUpRelabeling* bp = nullptr;
    const TopDownRelabeling* tp = nullptr;
    for (const auto& item : doc.items) {
      if (auto* x = std::get_if<BottomUpRelabeling>(&item); x && x->name == b.text)
        bp = x;
      if (auto* x = std::get_if<TopDownRelabeling>(&item); x && x->name == t.text)
        tp = x;
    }
    if (!bp) fail(b, "no burelab named '" + b.text + "'");
    if (!tp) fail(t, "no tdrelab named '" + t.text + "'");
    u.bottom = *bp;
    u.top = *tp;
    return u;
  }

  BottomUpAutomaton parse_automaton() {
    expect("automaton");
    BottomUpAutomaton m;
    m.name = name().text;
    expect("{");
    expect("alphabet");
    m.alphabet = sig();
    expect("states");
    auto states = names();
    expect("finals");
    const Token& finals_at = peek();
    auto finals = names();
    for (const auto& s : states) m.add_state(s);
    for (const auto& f : finals) {
      int i = state_index(states, f);
      if (i < 0) fail(finals_at, "unknown final state '" + f + "'");
      m.set_accepting(i);
    }
    while (at("trans")) {
      const Token& start = next();
      const Token& sym = name();
      auto kids = state_list(states);
      const Token& arrow = next();
      if (arrow.kind != Token::Kind::kArrow) fail(arrow, "expected '->'");
      int target = state_ref(states);
      expect(";");
      if (m.next({sym.text, kids}))
        fail(start, "duplicate transition for '" + sym.text + "'");
      m.add_transition({sym.text, kids}, target);
    }
    expect("}");
    return m;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string render_sig(const RankedAlphabet& a) {
  if (a.empty()) return "{}";
  std::string out = "{ ";
  bool first = true;
  for (const auto& [sym, rank] : a) {
    if (!first) out += ", ";
    first = false;
    out += sym + ":" + std::to_string(rank);
  }
  return out + " }";
}

std::string render_names(const std::vector<std::string>& names) {
  if (names.empty()) return "{}";
  std::string out = "{ ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out + " }";
}

std::string render_state_tuple(const std::vector<std::string>& states,
                               const std::vector<int>& kids) {
  std::string out = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ",";
    out += states[kids[i]];
  }
  return out + ")";
}

}  // namespace

Document parse_dsl(std::string_view text) { return Parser(text).parse(); }

std::string serialize(const Att& a) {
  std::string out = "att " + a.name + " {\n";
  out += "  input " + render_sig(a.input) + "\n";
  out += "  output " + render_sig(a.output) + "\n";
  out += "  syn " + render_names(a.syn) + "\n";
  out += "  inh " + render_names(a.inh) + "\n";
  out += "  initial " + a.initial + "\n";
  auto block = [&](const std::string& label, const std::vector<Rule>& rules) {
    if (rules.empty()) return;
    out += "  rules " + label + " {\n";
    for (const auto& r : rules) out += "    " + render_rule(r) + ";\n";
    out += "  }\n";
  };
  for (const auto& [sym, rules] : a.rules) block(sym, rules);
  block("root", a.root_rules);
  return out + "}\n";
}

std::string serialize(const BottomUpRelabeling& b) {
  std::string out = "burelab " + b.name + " {\n";
  out += "  input " + render_sig(b.input) + "\n";
  out += "  output " + render_sig(b.output) + "\n";
  out += "  states " + render_names(b.states()) + "\n";
  std::vector<std::string> finals;
  for (std::size_t i = 0; i < b.state_count(); ++i)
    if (b.is_final(static_cast<int>(i))) finals.push_back(b.states()[i]);
  out += "  finals " + render_names(finals) + "\n";
  for (const auto& [key, target] : b.transitions())
    out += "  rule " + key.symbol + render_state_tuple(b.states(), key.children) +
           " -> " + b.states()[target.state] + " / " + target.output + ";\n";
  return out + "}\n";
}

std::string serialize(const TopDownRelabeling& t) {
  std::string out = "tdrelab " + t.name + " {\n";
  out += "  input " + render_sig(t.input) + "\n";
  out += "  output " + render_sig(t.output) + "\n";
  out += "  states " + render_names(t.states()) + "\n";
  std::vector<std::string> initials;
  for (int q : t.initials()) initials.push_back(t.states()[q]);
  out += "  initials " + render_names(initials) + "\n";
  for (const TdRule& r : t.rules()) {
    out += "  rule " + t.states()[r.state] + "(" + r.symbol;
    std::string rhs = r.output;
    if (!r.child_states.empty()) {
      out += "(";
      rhs += "(";
      for (std::size_t i = 0; i < r.child_states.size(); ++i) {
        std::string x = "x" + std::to_string(i + 1);
        if (i) {
          out += ",";
          rhs += ",";
        }
        out += x;
        rhs += t.states()[r.child_states[i]] + "(" + x + ")";
      }
      out += ")";
      rhs += ")";
    }
    out += ") -> " + rhs + ";\n";
  }
  return out + "}\n";
}

std::string serialize(const LookAround& u) {
  return "lookaround " + u.name + " {\n  bottom " + u.bottom.name + "\n  top " +
         u.top.name + "\n}\n";
}

std::string serialize(const BottomUpAutomaton& m) {
  std::string out = "automaton " + m.name + " {\n";
  out += "  alphabet " + render_sig(m.alphabet) + "\n";
  out += "  states " + render_names(m.states()) + "\n";
  std::vector<std::string> finals;
  for (std::size_t i = 0; i < m.state_count(); ++i)
    if (m.is_accepting(static_cast<int>(i))) finals.push_back(m.states()[i]);
  out += "  finals " + render_names(finals) + "\n";
  for (const auto& [key, target] : m.transitions())
    out += "  trans " + key.symbol + render_state_tuple(m.states(), key.children) +
           " -> " + m.states()[target] + ";\n";
  return out + "}\n";
}

std::string serialize_dsl(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.items.size(); ++i) {
    if (i) out += "\n";
    out += std::visit([](const auto& x) { return serialize(x); }, doc.items[i]);
  }
  return out;
}

const Att* Document::last_att() const {
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    if (auto* a = std::get_if<Att>(&*it)) return a;
  return nullptr;
}

const LookAround* Document::last_lookaround() const {
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    if (auto* u = std::get_if<LookAround>(&*it)) return u;
  return nullptr;
}

const BottomUpAutomaton* Document::last_automaton() const {
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    if (auto* m = std::get_if<BottomUpAutomaton>(&*it)) return m;
  return nullptr;
}

const Att* Document::find_att(const std::string& name) const {
  for (const auto& item : items)
    if (auto* a = std::get_if<Att>(&item); a && a->name == name) return a;
  return nullptr;
}

Document document_of(const LookAround& u) {
  Document doc;
  doc.items.push_back(u.bottom);
  doc.items.push_back(u.top);
  doc.items.push_back(u);
  return doc;
}

Document document_of(const AttWithLookAround& a) {
  Document doc = document_of(a.around);
  doc.items.push_back(a.core);
  return doc;
}

AttWithLookAround Evaluable::with_lookaround() const {
  if (around) return {*around, core};
  return {identity_lookaround(core.input), core};
}

Evaluable evaluable_of(const Document& doc) {
  const Att* a = doc.last_att();
  if (!a) throw Error("document has no att");
  Evaluable out{*a, std::nullopt};
  if (const LookAround* u = doc.last_lookaround()) out.around = *u;
  return out;
}

}  // namespace attu
