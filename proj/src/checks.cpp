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


#include "attu/checks.hpp"

#include <chrono>
#include <sstream>

#include "attu/compose.hpp"
#include "attu/domain.hpp"
#include "attu/eval.hpp"
#include "attu/uniformize.hpp"

namespace attu {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kPreconditionFailed: return "precondition-failed";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

std::string CheckReport::render(bool timing) const {
  std::ostringstream out;
  out << "check " << name << ": " << verdict_name(verdict) << "\n";
  for (const auto& [k, v] : params) out << "  " << k << ": " << v << "\n";
  out << "  trees: " << trees << "\n";
  if (!message.empty()) out << "  " << message << "\n";
  if (counterexample) {
    out << "  input: " << render_tree(counterexample->input) << "\n"
        << "  expected: " << counterexample->expected << "\n"
        << "  actual: " << counterexample->actual << "\n";
  }
  if (timing) out << "  seconds: " << seconds << "\n";
  if (!passed())
    for (const auto& dsl : objects) out << "---\n" << dsl;
  return out.str();
}

const RankedAlphabet& input_alphabet(const Evaluable& x) {
  return x.around ? x.around->input() : x.core.input;
}

const RankedAlphabet& output_alphabet(const Evaluable& x) {
  return x.core.output;
}

std::string evaluable_dsl(const Evaluable& x) {
  if (x.around) return serialize_dsl(document_of(x.with_lookaround()));
  Document doc;
  doc.items.push_back(x.core);
  return serialize_dsl(doc);
}

Fiber fiber_of(const Evaluable& x, const Tree& s, std::size_t budget) {
  Tree in = s;
  if (x.around) {
    auto r = run_lookaround(*x.around, s);
    if (!r) return {};
    in = std::move(*r);
  }
  Fiber out;
  if (is_deterministic(x.core)) {
    EvalOutcome o = eval_datt(x.core, in);
    if (o.ground()) out.trees.insert(o.output);
    return out;
  }
  BoundedResult b = enumerate_derivations_bounded(x.core, in, budget);
  out.trees = std::move(b.outputs);
  out.exact = b.complete;
  return out;
}

bool in_translation(const Evaluable& x, const Tree& s, const Tree& t) {
  Tree in = s;
  if (x.around) {
    auto r = run_lookaround(*x.around, s);
    if (!r) return false;
    in = std::move(*r);
  }
  if (is_deterministic(x.core)) {
    EvalOutcome o = eval_datt(x.core, in);
    return o.ground() && o.output == t;
  }
  return derives(x.core, in, t);
}

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckReport start(const std::string& name, const CheckOptions& opts,
                  bool with_budget) {
  CheckReport r;
  r.name = name;
  r.params.emplace_back("max_size", std::to_string(opts.max_size));
  if (with_budget) r.params.emplace_back("budget", std::to_string(opts.budget));
  return r;
}

void fail(CheckReport& r, Verdict v, const Tree& s, std::string expected,
          std::string actual, std::string message = {}) {
  r.verdict = v;
  r.counterexample = Counterexample{s, std::move(expected), std::move(actual)};
  if (!message.empty()) r.message = std::move(message);
}

std::string render_outcome(const std::optional<EvalOutcome>& o) {
  return o ? o->render() : "outside the look-around domain";
}

std::string att_dsl(const Att& a) {
  Document doc;
  doc.items.push_back(a);
  return serialize_dsl(doc);
}

}  // namespace

CheckReport check_uniformizer(const Att& a, const CheckOptions& opts) {
  Stopwatch clock;
  CheckReport r = start("uniformizer", opts, false);
  r.objects.push_back(att_dsl(a));
  AttWithLookAround d = uniformize_att(a).result;
  const Att oracle = root_rules_unambiguous(a) ? a : normalize_root_rules(a);
  if (!d.is_deterministic() || !d.around.top.is_deterministic()) {
    r.verdict = Verdict::kFail;
    r.message = "uniformization is not deterministic";
    r.objects.push_back(serialize_dsl(document_of(d)));
  }
  bool singletons = true;
  for (const Tree& s : enumerate_trees(a.input, opts.max_size)) {
    if (!r.passed()) break;
    ++r.trees;
    auto first = eval_dattU(d, s);
    auto again = eval_dattU(d, s);
    TreeSet uniform = enumerate_uniform(oracle, s);
    singletons = singletons && uniform.size() <= 1;
    if (render_outcome(first) != render_outcome(again)) {
      fail(r, Verdict::kFail, s, render_outcome(first), render_outcome(again),
           "outcome differs between runs");
    } else if (bool ground = first && first->ground(); ground != !uniform.empty()) {
      fail(r, Verdict::kFail, s, uniform.render(), render_outcome(first),
           ground ? "output where the att has no uniform output"
                  : "no output although the att has uniform outputs");
    } else if (ground && !uniform.contains(first->output)) {
      fail(r, Verdict::kFail, s, uniform.render(), render_outcome(first),
           "output is not a uniform output");
    } else if (ground && !derives(a, s, first->output)) {
      fail(r, Verdict::kFail, s, "a member of the translation",
           render_outcome(first), "output is not derivable");
    }
  }
  if (r.passed())
    r.message = singletons ? "uniform fibers are singletons: the result is "
                             "equivalent on these inputs"
                           : "outputs are uniform outputs; domains agree";
  if (!r.passed() && r.objects.size() == 1)
    r.objects.push_back(serialize_dsl(document_of(d)));
  r.seconds = clock.seconds();
  return r;
}

CheckReport check_equivalence(const Evaluable& x, const Evaluable& y,
                              const CheckOptions& opts) {
  if (!(input_alphabet(x) == input_alphabet(y)) ||
      !(output_alphabet(x) == output_alphabet(y)))
    throw Error("check_equivalence: alphabet mismatch between '" +
                x.core.name + "' and '" + y.core.name + "'");
  Stopwatch clock;
  CheckReport r = start("equivalence", opts, true);
  r.objects = {evaluable_dsl(x), evaluable_dsl(y)};
  std::optional<Tree> undecided;
  for (const Tree& s : enumerate_trees(input_alphabet(x), opts.max_size)) {
    ++r.trees;
    Fiber fx = fiber_of(x, s, opts.budget);
    Fiber fy = fiber_of(y, s, opts.budget);
    if (fx.exact && fy.exact) {
      if (!(fx.trees == fy.trees)) {
        fail(r, Verdict::kFail, s, fx.trees.render(), fy.trees.render());
        break;
      }
      continue;
    }
    // Every output found on one side must be an output of the other.
    auto missing = [&](const Fiber& f, const Evaluable& other) -> const Tree* {
      for (const auto& [_, t] : f.trees)
        if (!in_translation(other, s, t)) return &t;
      return nullptr;
    };
    if (const Tree* t = missing(fx, y)) {
      fail(r, Verdict::kFail, s, fx.trees.render(), fy.trees.render(),
           render_tree(*t) + " is an output of '" + x.core.name +
               "' only");
      break;
    }
    if (const Tree* t = missing(fy, x)) {
      fail(r, Verdict::kFail, s, fx.trees.render(), fy.trees.render(),
           render_tree(*t) + " is an output of '" + y.core.name +
               "' only");
      break;
    }
    if (!undecided) undecided = s;
  }
  if (r.passed() && undecided) {
    r.verdict = Verdict::kInconclusive;
    r.counterexample = Counterexample{*undecided, "complete fiber",
                                      "search exceeded the budget"};
  }
  r.seconds = clock.seconds();
  return r;
}

namespace {

// Composed fiber of the chain through the per-stage oracles.
Fiber chain_fiber(const std::vector<Evaluable>& chain, const Tree& s,
                  std::size_t budget) {
  Fiber cur;
  cur.trees.insert(s);
  for (const Evaluable& stage : chain) {
    Fiber next;
    next.exact = cur.exact;
    for (const auto& [_, t] : cur.trees) {
      Fiber f = fiber_of(stage, t, budget);
      next.trees.merge(f.trees);
      next.exact = next.exact && f.exact;
    }
    cur = std::move(next);
    if (cur.trees.empty()) break;
  }
  return cur;
}

AttWithLookAround uniformize_stage(const Evaluable& stage) {
  if (stage.around) return uniformize_attU(stage.with_lookaround());
  return uniformize_att(stage.core).result;
}

}  // namespace

CheckReport check_composition(const std::vector<Evaluable>& chain,
                              const CheckOptions& opts) {
  if (chain.empty()) throw Error("check_composition: empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!(output_alphabet(chain[i]) == input_alphabet(chain[i + 1])))
      throw Error("check_composition: '" + chain[i + 1].core.name +
                  "' does not read the output alphabet of '" +
                  chain[i].core.name + "'");
  Stopwatch clock;
  CheckReport r = start("composition", opts, true);
  for (const Evaluable& stage : chain) r.objects.push_back(evaluable_dsl(stage));

  const auto inputs = enumerate_trees(input_alphabet(chain.front()), opts.max_size);
  std::vector<Fiber> expected;
  std::optional<Tree> undecided;
  for (const Tree& s : inputs) {
    expected.push_back(chain_fiber(chain, s, opts.budget));
    const Fiber& f = expected.back();
    if (f.trees.size() > 1) {
      fail(r, Verdict::kPreconditionFailed, s, "at most one output",
           f.trees.render(), "the chain is not functional");
      r.trees = expected.size();
      r.seconds = clock.seconds();
      return r;
    }
    if (!f.exact && !undecided) undecided = s;
  }

  // Deterministic stages, from the last one backwards.
  std::vector<AttWithLookAround> stages(chain.size());
  stages.back() = uniformize_stage(chain.back());
  for (std::size_t i = chain.size() - 1; i-- > 0;) {
    Evaluable restricted = chain[i];
    restricted.core =
        restrict_att_output(chain[i].core, dattU_domain_automaton(stages[i + 1]));
    stages[i] = uniformize_stage(restricted);
  }

  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Tree& s = inputs[k];
    ++r.trees;
    std::optional<Tree> cur = s;
    std::string outcome;
    for (const AttWithLookAround& d : stages) {
      auto o = eval_dattU(d, *cur);
      if (!o || !o->ground()) {
        outcome = d.core.name + ": " + render_outcome(o);
        cur.reset();
        break;
      }
      cur = o->output;
    }
    TreeSet got;
    if (cur) got.insert(*cur);
    const Fiber& want = expected[k];
    if (got == want.trees) continue;
    if (!want.exact) {
      if (!undecided) undecided = s;
      continue;
    }
    fail(r, Verdict::kFail, s, want.trees.render(),
         cur ? got.render() : outcome);
    for (const AttWithLookAround& d : stages)
      r.objects.push_back(serialize_dsl(document_of(d)));
    break;
  }
  if (r.passed() && undecided) {
    r.verdict = Verdict::kInconclusive;
    r.counterexample = Counterexample{*undecided, "complete fiber",
                                      "search exceeded the budget"};
  }
  r.seconds = clock.seconds();
  return r;
}

CheckReport check_lemma2(const Att& a, const CheckOptions& opts) {
  Stopwatch clock;
  CheckReport r = start("lemma2", opts, false);
  r.objects.push_back(att_dsl(a));
  const Att n = normalize_root_rules(a);
  TopDownRelabeling t = build_annotation_relabeling(n);
  Att applier = build_rule_applier(n);
  for (const Tree& s : enumerate_trees(a.input, opts.max_size)) {
    ++r.trees;
    TreeSet composed = composed_fiber(t, applier, s);
    TreeSet uniform = enumerate_uniform(n, s);
    if (!(composed == uniform)) {
      fail(r, Verdict::kFail, s, uniform.render(), composed.render());
      r.objects.push_back(serialize(t));
      r.objects.push_back(att_dsl(applier));
      break;
    }
  }
  r.seconds = clock.seconds();
  return r;
}

CheckReport check_prop4(const TopDownRelabeling& t, const CheckOptions& opts) {
  Stopwatch clock;
  CheckReport r = start("prop4", opts, false);
  r.objects.push_back(serialize(t));
  LookAround u = uniformize_topdown(t);
  if (!u.top.is_deterministic()) {
    r.verdict = Verdict::kFail;
    r.message = "the top-down part is not deterministic";
  }
  for (const Tree& s : enumerate_trees(t.input, opts.max_size)) {
    if (!r.passed()) break;
    ++r.trees;
    auto out = run_lookaround(u, s);
    bool in_domain = topdown_in_domain(t, s);
    std::string got = out ? render_tree(*out) : "undefined";
    if (out.has_value() != in_domain)
      fail(r, Verdict::kFail, s, in_domain ? "defined" : "undefined", got,
           "domains differ");
    else if (out && !topdown_accepts_pair(t, s, *out))
      fail(r, Verdict::kFail, s, run_topdown_relabeling_all(t, s).render(), got,
           "output outside the relation");
  }
  if (!r.passed()) r.objects.push_back(serialize_dsl(document_of(u)));
  r.seconds = clock.seconds();
  return r;
}

}  // namespace attu
