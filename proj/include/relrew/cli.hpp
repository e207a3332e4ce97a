// Copyright 2026 The Relrew Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command dispatch and report emission. Exit codes: 0 when every verdict
// passes, 1 when some verdict fails, 2 on usage or parse errors. With --json
// a byte-stable document {command, inputs, verdicts, timing} is emitted; the
// timing field is null there so that equal inputs give equal bytes (the
// human-readable output reports wall time instead).

#ifndef RELREW_CLI_HPP
#define RELREW_CLI_HPP

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "relrew/analyze.hpp"
#include "relrew/lambda.hpp"
#include "relrew/trs_io.hpp"

namespace relrew::cli {

struct Verdict {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when there is nothing to show
};

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> listing;  // extra human-readable lines

  bool pass() const {
    for (const Verdict& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

inline void emit(const Report& report, bool as_json, double elapsed_ms,
                 std::ostream& out) {
  if (as_json) {
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    doc["inputs"] = report.inputs;
    doc["verdicts"] = nlohmann::ordered_json::array();
    for (const Verdict& v : report.verdicts) {
      nlohmann::ordered_json jv;
      jv["name"] = v.name;
      jv["pass"] = v.pass;
      if (!v.witness.empty()) jv["witness"] = v.witness;
      doc["verdicts"].push_back(std::move(jv));
    }
    doc["timing"] = nullptr;  // byte-stable output for fixed inputs
    out << doc.dump(2) << "\n";
    return;
  }
  for (const std::string& line : report.listing) out << line << "\n";
  for (const Verdict& v : report.verdicts) {
    out << (v.pass ? "PASS " : "FAIL ") << v.name;
    if (!v.witness.empty()) out << "  [" << v.witness << "]";
    out << "\n";
  }
  out << "timing: " << elapsed_ms << " ms\n";
}

inline ESystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trs(buf.str()).es;
}

inline std::string show_term(const ESystem& es, const Term& t) {
  return term_to_string(t, es.sig(), es.vars());
}

// --- command bodies -------------------------------------------------------

inline Report run_reduce(const ESystem& es, const std::string& term_text,
                         const std::string& mode, int steps, bool raw) {
  Report r;
  r.command = "reduce";
  r.inputs = {{"term", term_text}, {"mode", mode}, {"steps", steps},
              {"raw", raw}};
  Term t = parse_term_over(es, term_text);
  auto image = [&](const Term& s) -> TermSet {
    if (mode == "ground") return ground_image(s, es);
    if (mode == "seq") return raw ? seq_image_raw(s, es) : seq_image(s, es);
    if (mode == "parallel") return parallel_image(s, es);
    if (mode == "full") return full_image(s, es);
    if (mode == "scc") return scc_image(s, es);
    throw CLI::ValidationError("--mode", "unknown reduction mode: " + mode);
  };
  TermSet reducts = steps <= 1 ? image(t) : iterate_image(t, steps, image);
  r.listing.push_back(std::to_string(reducts.size()) + " reduct(s) of " +
                      show_term(es, t) + ":");
  for (const Term& s : reducts)
    r.verdicts.push_back({"reduct", true, show_term(es, s)});
  return r;
}

inline Report run_check_laws(const ESystem& es, int depth, int trials,
                             std::uint64_t seed, bool mutants) {
  Report r;
  r.command = "check laws";
  r.inputs = {{"depth", depth}, {"trials", trials}, {"seed", seed},
              {"mutants", mutants}};
  LawConfig cfg;
  cfg.depth = depth;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.include_mutants = mutants;
  LawReport rep = law_suite(es, cfg);
  for (const LawResult& l : rep.laws) {
    std::string witness = l.anchor;
    if (!l.counterexample.empty()) witness += " -- " + l.counterexample;
    r.verdicts.push_back({l.name, l.pass, witness});
  }
  return r;
}

inline Report run_check_confluence(const ESystem& es,
                                   const std::string& technique, int depth) {
  Report r;
  r.command = "check confluence";
  r.inputs = {{"technique", technique}, {"depth", depth}};
  UniverseRef u = make_universe(es, depth);
  if (technique == "parallel-moves") {
    OrthogonalityReport o = orthogonality_check(u);
    r.verdicts.push_back({"orthogonality: " + o.root_determinism.name,
                          o.root_determinism.pass,
                          o.root_determinism.witness});
    r.verdicts.push_back({"orthogonality: " + o.redex_preservation.name,
                          o.redex_preservation.pass,
                          o.redex_preservation.witness});
    InclusionVerdict n = nesting_check(u, ReductionMode::Parallel);
    r.verdicts.push_back({"parallel " + n.name, n.pass, n.witness});
    auto d = diamond_check(u->terms(), [&](const Term& t) {
      return parallel_image(t, es);
    });
    Verdict v{"parallel reduction has the diamond property", d.pass, ""};
    if (d.failure)
      v.witness = "peak " + show_term(es, (*d.failure)[0]) + " to " +
                  show_term(es, (*d.failure)[1]) + " and " +
                  show_term(es, (*d.failure)[2]);
    r.verdicts.push_back(std::move(v));
  } else if (technique == "tml") {
    OrthogonalityReport o = orthogonality_check(u, /*use_full=*/true);
    r.verdicts.push_back({"orthogonality: " + o.root_determinism.name,
                          o.root_determinism.pass,
                          o.root_determinism.witness});
    r.verdicts.push_back({"orthogonality: " + o.redex_preservation.name,
                          o.redex_preservation.pass,
                          o.redex_preservation.witness});
    auto d = diamond_check(u->terms(), [&](const Term& t) {
      return full_image(t, es);
    });
    Verdict v{"full reduction has the diamond property", d.pass, ""};
    if (d.failure)
      v.witness = "peak " + show_term(es, (*d.failure)[0]) + " to " +
                  show_term(es, (*d.failure)[1]) + " and " +
                  show_term(es, (*d.failure)[2]);
    r.verdicts.push_back(std::move(v));
  } else {
    throw CLI::ValidationError("--technique",
                               "unknown technique: " + technique);
  }
  return r;
}

inline Report run_orthogonal(const ESystem& es, int depth) {
  Report r;
  r.command = "orthogonal";
  r.inputs = {{"depth", depth}};
  UniverseRef u = make_universe(es, depth);
  OrthogonalityReport o = orthogonality_check(u);
  r.verdicts.push_back({o.root_determinism.name, o.root_determinism.pass,
                        o.root_determinism.witness});
  r.verdicts.push_back({o.redex_preservation.name, o.redex_preservation.pass,
                        o.redex_preservation.witness});
  return r;
}

inline Report run_critical_pairs(const ESystem& es) {
  Report r;
  r.command = "critical-pairs";
  std::vector<CriticalPair> cps = critical_pairs(es);
  r.verdicts.push_back(
      {"left-linear", left_linear(es), ""});
  for (const CriticalPair& cp : cps) {
    std::string text = "peak " + show_term(es, cp.peak) + " -> " +
                       show_term(es, cp.left) + " | " +
                       show_term(es, cp.right) + " (rules " +
                       std::to_string(cp.outer_rule) + "/" +
                       std::to_string(cp.inner_rule) + " at " +
                       position_to_string(cp.position) + ")";
    r.verdicts.push_back({"critical pair", false, text});
  }
  if (cps.empty()) r.verdicts.push_back({"no critical pairs", true, ""});
  return r;
}

inline Report run_lambda_confluence(int size, int scope,
                                    const std::string& mode) {
  Report r;
  r.command = "lambda confluence";
  r.inputs = {{"size", size}, {"scope", scope}, {"mode", mode}};
  LamArena arena;
  LamReducer red(arena);
  LamEnumerator en(arena);
  std::vector<LamRef> terms;
  for (int n = 0; n <= scope; ++n)
    for (LamRef t : en.terms_up_to(n, size)) terms.push_back(t);
  auto check = [&](auto image) {
    auto d = diamond_check(terms, image);
    Verdict v{mode + " reduction has the diamond property (scope <= " +
                  std::to_string(scope) + ", size <= " +
                  std::to_string(size) + ")",
              d.pass, ""};
    if (d.failure)
      v.witness = "peak " + arena.show((*d.failure)[0]) + " to " +
                  arena.show((*d.failure)[1]) + " and " +
                  arena.show((*d.failure)[2]);
    r.verdicts.push_back(std::move(v));
  };
  if (mode == "parallel")
    check([&](LamRef t) { return red.parallel_image(t); });
  else if (mode == "full")
    check([&](LamRef t) { return red.full_image(t); });
  else
    throw CLI::ValidationError("--mode", "unknown lambda mode: " + mode);
  return r;
}

// --- entry point -----------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"finite relational rewriting workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a stable JSON report");

  std::string file, term_text, mode = "parallel", technique = "parallel-moves";
  int steps = 1, depth = 3, trials = 100, scope = 2, size = 7;
  std::uint64_t seed = 0;
  bool raw = false, mutants = false;

  CLI::App* reduce = app.add_subcommand("reduce", "enumerate reducts");
  reduce->add_option("--file", file, "TRS file")->required();
  reduce->add_option("--term", term_text, "term to reduce")->required();
  reduce->add_option("--mode", mode, "ground|seq|parallel|full|scc");
  reduce->add_option("--steps", steps, "iterate the image");
  reduce->add_flag("--raw", raw, "seq mode: literal rule sides only");

  CLI::App* check = app.add_subcommand("check", "verify laws or confluence");
  check->require_subcommand(1);
  CLI::App* laws = check->add_subcommand("laws", "run the law suite");
  laws->add_option("--file", file, "TRS file")->required();
  laws->add_option("--depth", depth, "universe depth bound");
  laws->add_option("--trials", trials, "random trials per law");
  laws->add_option("--seed", seed, "random seed");
  laws->add_flag("--mutants", mutants, "include negative-control laws");
  CLI::App* confl = check->add_subcommand("confluence",
                                          "run a confluence technique");
  confl->add_option("--file", file, "TRS file")->required();
  confl->add_option("--technique", technique, "parallel-moves|tml");
  confl->add_option("--depth", depth, "universe depth bound");

  CLI::App* ortho = app.add_subcommand("orthogonal",
                                       "check operational orthogonality");
  ortho->add_option("--file", file, "TRS file")->required();
  ortho->add_option("--depth", depth, "universe depth bound");

  CLI::App* cps = app.add_subcommand("critical-pairs",
                                     "left-linearity and overlaps");
  cps->add_option("--file", file, "TRS file")->required();

  CLI::App* lambda = app.add_subcommand("lambda", "de Bruijn beta system");
  lambda->require_subcommand(1);
  CLI::App* lconf = lambda->add_subcommand("confluence",
                                           "diamond check for beta");
  lconf->add_option("--size", size, "maximal term size");
  lconf->add_option("--scope", scope, "maximal scope");
  lconf->add_option("--mode", mode, "parallel|full");

  // let the global --json flag appear anywhere on the command line
  for (CLI::App* sub : {reduce, check, laws, confl, ortho, cps, lambda, lconf})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto started = std::chrono::steady_clock::now();
    Report report;
    if (*reduce) {
      report = run_reduce(load_system(file), term_text, mode, steps, raw);
    } else if (*laws) {
      report = run_check_laws(load_system(file), depth, trials, seed,
                              mutants);
    } else if (*confl) {
      report = run_check_confluence(load_system(file), technique, depth);
    } else if (*ortho) {
      report = run_orthogonal(load_system(file), depth);
    } else if (*cps) {
      report = run_critical_pairs(load_system(file));
    } else if (*lconf) {
      report = run_lambda_confluence(size, scope, mode);
    } else {
      err << "error: no command\n";
      return 2;
    }
    if (!file.empty()) report.inputs["file"] = file;
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - started)
                    .count();
    emit(report, as_json, ms, out);
    return report.pass() ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const TrsParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace relrew::cli

#endif  // RELREW_CLI_HPP
