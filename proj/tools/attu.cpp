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


// Command line front end.
//
//   attu eval fixtures/ex1.att "f(e,e)"
//   attu uniformize fixtures/run.att -o run.dattu
//   attu check uniformizer fixtures/run.att --max-size 5
//
// Exit status: 0 success, 1 failed check or undefined result, 2 usage or
// input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "attu/checks.hpp"
#include "attu/compose.hpp"
#include "attu/domain.hpp"
#include "attu/dsl.hpp"
#include "attu/eval.hpp"
#include "attu/fixtures.hpp"
#include "attu/generate.hpp"
#include "attu/uniformize.hpp"

namespace {

using namespace attu;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::string& path) {
  try {
    return parse_dsl(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

std::string kind_of(const DslItem& item) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Att>) return "att";
        else if constexpr (std::is_same_v<X, BottomUpRelabeling>) return "burelab";
        else if constexpr (std::is_same_v<X, TopDownRelabeling>) return "tdrelab";
        else if constexpr (std::is_same_v<X, LookAround>) return "lookaround";
        else return "automaton";
      },
      item);
}

std::vector<Violation> violations_of(const DslItem& item) {
  return std::visit(
      [](const auto& x) -> std::vector<Violation> {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Att>) return validate_att(x);
        else if constexpr (std::is_same_v<X, BottomUpRelabeling>) return validate_bottomup(x);
        else if constexpr (std::is_same_v<X, TopDownRelabeling>) return validate_topdown(x);
        else if constexpr (std::is_same_v<X, LookAround>) return validate_lookaround(x);
        else return {};
      },
      item);
}

std::string name_of(const DslItem& item) {
  return std::visit([](const auto& x) { return x.name; }, item);
}

template <class T>
const T* last_of(const Document& doc) {
  const T* out = nullptr;
  for (const auto& item : doc.items)
    if (const T* p = std::get_if<T>(&item)) out = p;
  return out;
}

Evaluable evaluable(const std::string& path) {
  Document doc = load(path);
  if (!doc.last_att()) throw UsageError(path + ": no att");
  return evaluable_of(doc);
}

Tree input_tree(const Evaluable& x, const std::string& text) {
  try {
    return parse_tree(text, &input_alphabet(x));
  } catch (const Error& e) {
    throw UsageError(std::string("tree: ") + e.what());
  }
}

Tree core_input(const Evaluable& x, const Tree& s) {
  if (!x.around) return s;
  auto r = run_lookaround(*x.around, s);
  if (!r) throw UsageError("input is outside the look-around domain");
  return *r;
}

int print_report(const CheckReport& r, bool timing) {
  std::cout << r.render(timing);
  return r.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attributed tree transducers and their uniformizers", "attu"};
  app.require_subcommand(1);

  std::size_t max_size = 0;
  std::size_t budget = 20000;
  std::uint64_t seed = 0;
  bool trace = false, uniform = false, timing = false;
  std::string out_path;
  std::vector<std::string> files;
  std::string file, tree_text;

  auto* validate = app.add_subcommand("validate", "parse and validate every item");
  validate->add_option("files", files, "DSL files")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a deterministic att");
  eval->add_option("file", file, "DSL file")->required();
  eval->add_option("tree", tree_text, "input tree")->required();
  eval->add_flag("--trace", trace, "print the leftmost derivation");
  std::size_t steps = 100;
  eval->add_option("--steps", steps, "longest trace");

  auto* enumerate = app.add_subcommand("enumerate", "outputs of an att on a tree");
  enumerate->add_option("file", file, "DSL file")->required();
  enumerate->add_option("tree", tree_text, "input tree")->required();
  enumerate->add_flag("--uniform", uniform, "uniform translations only");
  enumerate->add_option("--budget", budget, "forms to expand");

  auto* domain = app.add_subcommand("domain", "domain automaton of a deterministic att");
  domain->add_option("file", files, "DSL file")->required()->expected(1);

  auto* uniformize = app.add_subcommand("uniformize", "build a deterministic uniformizer");
  uniformize->add_option("file", files, "DSL file")->required()->expected(1);

  auto* compose = app.add_subcommand(
      "compose", "compose look-arounds or bottom-up relabelings, or restrict "
                 "an att to the language of an automaton");
  compose->add_option("files", files, "two DSL files")->required()->expected(2);

  for (auto* sub : {domain, uniformize, compose})
    sub->add_option("-o", out_path, "output file");

  auto* check = app.add_subcommand("check", "property checks");
  check->require_subcommand(1);
  auto* c_unif = check->add_subcommand("uniformizer", "uniformizer contract of an att");
  auto* c_equiv = check->add_subcommand("equivalence", "equal fibers of two files");
  auto* c_comp = check->add_subcommand("composition", "uniformized chain equals the chain");
  auto* c_lemma2 = check->add_subcommand("lemma2", "annotation then rule application");
  auto* c_prop4 = check->add_subcommand("prop4", "look-ahead uniformizer of a tdrelab");
  for (auto* sub : {c_unif, c_equiv, c_comp, c_lemma2, c_prop4}) {
    sub->add_option("files", files, "DSL files");
    sub->add_option("--max-size", max_size, "largest input tree");
    sub->add_option("--budget", budget, "forms per bounded search");
    sub->add_flag("--timing", timing, "report seconds");
  }
  for (auto* sub : {c_unif, c_lemma2, c_prop4})
    sub->add_option("--seed", seed, "check a random object instead of a file");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "list or write the fixtures");
  fixtures_cmd->add_option("-o", out_path, "directory to write them to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) {
      int status = kOk;
      for (const auto& path : files) {
        Document doc = load(path);
        for (const auto& item : doc.items) {
          auto vs = violations_of(item);
          std::cout << path << ": " << kind_of(item) << " " << name_of(item)
                    << (vs.empty() ? ": ok" : ": invalid") << "\n";
          for (const auto& v : vs) std::cout << "  " << v.where << ": " << v.message << "\n";
          if (!vs.empty()) status = kFailed;
        }
      }
      return status;
    }

    if (*eval) {
      Evaluable x = evaluable(file);
      Tree s = input_tree(x, tree_text);
      if (trace) {
        Tree in = core_input(x, s);
        if (x.around) std::cout << "look-around: " << render_tree(in) << "\n";
        std::cout << x.core.initial << "(1)\n";
        auto derivation = trace_derivation(x.core, in, steps);
        for (const auto& step : derivation)
          std::cout << "=> " << render_form(step.form) << "    by "
                    << render_locator(x.core, step.rule) << "\n";
        if (derivation.size() >= steps) std::cout << "stopped after " << steps << " steps\n";
        if (!is_deterministic(x.core)) return kOk;
      }
      if (!is_deterministic(x.core))
        throw UsageError("'" + x.core.name + "' is not deterministic; use enumerate");
      std::optional<EvalOutcome> o =
          x.around ? eval_dattU(x.with_lookaround(), s)
                   : std::optional<EvalOutcome>(eval_datt(x.core, s));
      if (!o) {
        std::cout << "undefined: outside the look-around domain\n";
        return kFailed;
      }
      std::cout << (o->ground() ? render_tree(o->output) : o->render()) << "\n";
      return o->ground() ? kOk : kFailed;
    }

    if (*enumerate) {
      Evaluable x = evaluable(file);
      Tree s = input_tree(x, tree_text);
      TreeSet outs;
      if (uniform) {
        outs = x.around ? enumerate_uniform_attU(x.with_lookaround(), s)
                        : enumerate_uniform(normalize_root_rules(x.core), s);
      } else {
        auto in = x.around ? run_lookaround(*x.around, s) : std::optional<Tree>(s);
        if (in) {
          BoundedResult r = enumerate_derivations_bounded(x.core, *in, budget);
          outs = r.outputs;
          if (!r.complete)
            std::cerr << "search stopped after " << r.expanded
                      << " forms; more outputs may exist\n";
        }
      }
      for (const auto& t : outs.renderings()) std::cout << t << "\n";
      return kOk;
    }

    if (*domain) {
      Evaluable x = evaluable(files.front());
      BottomUpAutomaton m = x.around ? dattU_domain_automaton(x.with_lookaround())
                                     : datt_domain_automaton(x.core);
      emit(serialize(m), out_path);
      return kOk;
    }

    if (*uniformize) {
      Evaluable x = evaluable(files.front());
      AttWithLookAround d = x.around ? uniformize_attU(x.with_lookaround())
                                     : uniformize_att(x.core).result;
      emit(serialize_dsl(document_of(d)), out_path);
      return kOk;
    }

    if (*compose) {
      Document a = load(files[0]), b = load(files[1]);
      Document out;
      if (a.last_lookaround() && b.last_lookaround()) {
        out = document_of(compose_lookarounds(*a.last_lookaround(), *b.last_lookaround()));
      } else if (a.last_att() && b.last_automaton()) {
        out.items.push_back(restrict_att_output(*a.last_att(), *b.last_automaton()));
      } else if (last_of<BottomUpRelabeling>(a) && last_of<BottomUpRelabeling>(b)) {
        out.items.push_back(compose_bottomup(*last_of<BottomUpRelabeling>(a),
                                             *last_of<BottomUpRelabeling>(b)));
      } else {
        throw UsageError(
            "compose expects two look-arounds, two burelabs, or an att and an "
            "automaton");
      }
      emit(serialize_dsl(out), out_path);
      return kOk;
    }

    if (*check) {
      bool seeded = false;
      for (auto* sub : {c_unif, c_lemma2, c_prop4})
        seeded = seeded || sub->count("--seed") > 0;
      auto need = [&](std::size_t n) {
        if (files.size() != n)
          throw UsageError("expected " + std::to_string(n) + " file(s)");
      };
      CheckOptions opts;
      opts.budget = budget;
      opts.max_size = max_size ? max_size : 5;
      if (*c_unif || *c_lemma2) {
        Att a;
        if (seeded) {
          need(0);
          a = random_att(seed);
        } else {
          need(1);
          a = evaluable(files.front()).core;
        }
        return print_report(*c_unif ? check_uniformizer(a, opts) : check_lemma2(a, opts),
                            timing);
      }
      if (*c_prop4) {
        TopDownRelabeling t;
        if (seeded) {
          need(0);
          t = random_topdown(seed);
        } else {
          need(1);
          Document doc = load(files.front());
          if (const auto* p = last_of<TopDownRelabeling>(doc)) t = *p;
          else if (doc.last_att()) t = uniformize_att(*doc.last_att()).restricted;
          else throw UsageError(files.front() + ": no tdrelab or att");
        }
        return print_report(check_prop4(t, opts), timing);
      }
      if (*c_equiv) {
        need(2);
        Evaluable x = evaluable(files[0]), y = evaluable(files[1]);
        if (!max_size && is_deterministic(x.core) && is_deterministic(y.core))
          opts.max_size = 9;
        return print_report(check_equivalence(x, y, opts), timing);
      }
      if (*c_comp) {
        if (files.size() < 2) throw UsageError("expected at least 2 files");
        std::vector<Evaluable> chain;
        for (const auto& path : files) chain.push_back(evaluable(path));
        return print_report(check_composition(chain, opts), timing);
      }
    }

    if (*fixtures_cmd) {
      int status = kOk;
      for (const Fixture& f : fixtures()) {
        Document doc = parse_dsl(f.text);
        bool ok = true;
        for (const auto& item : doc.items) ok = ok && violations_of(item).empty();
        if (!ok) status = kFailed;
        if (out_path.empty()) {
          std::cout << f.file << (ok ? "" : " (invalid)") << "\n";
          continue;
        }
        std::filesystem::create_directories(out_path);
        std::ofstream out(std::filesystem::path(out_path) / std::string(f.file));
        out << f.text;
        std::cout << "wrote " << (std::filesystem::path(out_path) / std::string(f.file)).string()
                  << "\n";
      }
      return status;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
