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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relrew/analyze.hpp"
#include "relrew/lambda.hpp"
#include "test_common.hpp"

using namespace relrew;
using relrew::testing::add_system;
using relrew::testing::combinator_system;
using relrew::testing::fork_system;
using relrew::testing::overlap_system;
using relrew::testing::parse_compact;

TEST_CASE("diamond_check on the ADD parallel image") {
  ESystem es = add_system();
  UniverseRef u = make_universe(es, 3);
  auto report = diamond_check(u->terms(), [&](const Term& t) {
    return parallel_image(t, es);
  });
  CHECK(report.pass);
  CHECK(report.peaks > 0);
}

TEST_CASE("diamond_check on an empty rule set passes trivially") {
  ESystem es(Signature({{"f", 1}, {"c", 0}}), VarSet({"x"}), {});
  UniverseRef u = make_universe(es, 3);
  auto report = diamond_check(u->terms(), [&](const Term& t) {
    return parallel_image(t, es);
  });
  CHECK(report.pass);
}

TEST_CASE("diamond_check reports the failing triple for lambda parallel") {
  LamArena a;
  LamReducer red(a);
  LamEnumerator en(a);
  std::vector<LamRef> terms;
  for (int scope = 0; scope <= 1; ++scope)
    for (LamRef t : en.terms_up_to(scope, 10)) terms.push_back(t);
  auto report = diamond_check(terms, [&](LamRef t) {
    return red.parallel_image(t);
  });
  REQUIRE(!report.pass);
  REQUIRE(report.failure.has_value());
  // the first failing peak normalizes to the free variable, so it is beta
  // convertible to (\x.(\y.y)x)((\z.z)a)
  LamRef classical =
      parse_lambda(a, "(\\.(\\.0) 0) ((\\.0) 0)");
  CHECK(red.beta_convertible((*report.failure)[0], classical));
}

TEST_CASE("orthogonality") {
  SUBCASE("ADD passes both conditions") {
    UniverseRef u = make_universe(add_system(), 3);
    OrthogonalityReport r = orthogonality_check(u);
    CHECK(r.root_determinism.pass);
    CHECK(r.redex_preservation.pass);
  }
  SUBCASE("fork fails root determinism with witness (b, c)") {
    UniverseRef u = make_universe(fork_system(), 2);
    OrthogonalityReport r = orthogonality_check(u);
    CHECK(!r.root_determinism.pass);
    CHECK(r.root_determinism.witness == "(b, c)");
  }
  SUBCASE("overlap system fails redex preservation") {
    UniverseRef u = make_universe(overlap_system(), 3);
    OrthogonalityReport r = orthogonality_check(u);
    CHECK(!r.redex_preservation.pass);
  }
  SUBCASE("combinators pass") {
    UniverseRef u = make_universe(combinator_system(), 3);
    CHECK(orthogonality_check(u).pass());
  }
}

TEST_CASE("nesting") {
  UniverseRef u = make_universe(add_system(), 3);
  CHECK(nesting_check(u, ReductionMode::Parallel).pass);
  CHECK(nesting_check(u, ReductionMode::Full).pass);
  UniverseRef uc = make_universe(combinator_system(), 3);
  CHECK(nesting_check(uc, ReductionMode::Parallel).pass);
  CHECK(nesting_check(uc, ReductionMode::Full).pass);
  // full reduction has the nesting property even on the overlap system
  UniverseRef uo = make_universe(overlap_system(), 3);
  CHECK(nesting_check(uo, ReductionMode::Full).pass);
  // vacuously on an empty rule set
  ESystem empty(Signature({{"f", 1}, {"c", 0}}), VarSet({"x"}), {});
  CHECK(nesting_check(make_universe(empty, 2), ReductionMode::Parallel).pass);
}

TEST_CASE("left linearity") {
  CHECK(left_linear(add_system()));
  Signature sig({{"eq", 2}, {"tt", 0}});
  VarSet vars({"x"});
  Term x = Term::var(0);
  ESystem nonlinear(sig, vars, {{Term::node(0, {x, x}), Term::node(1, {})}});
  CHECK(!left_linear(nonlinear));
}

TEST_CASE("critical pairs") {
  SUBCASE("ADD has none") { CHECK(critical_pairs(add_system()).empty()); }
  SUBCASE("the overlap system has exactly one") {
    ESystem es = overlap_system();
    auto cps = critical_pairs(es);
    REQUIRE(cps.size() == 1);
    const CriticalPair& cp = cps[0];
    CHECK(cp.peak == parse_compact(es, "f(g(a))"));
    CHECK(cp.left == parse_compact(es, "a"));
    CHECK(cp.right == parse_compact(es, "f(b)"));
    CHECK(cp.position == Position{0});
    CHECK(cp.outer_rule == 0);
    CHECK(cp.inner_rule == 1);
  }
  SUBCASE("root overlaps of distinct rules are kept") {
    ESystem es = fork_system();
    auto cps = critical_pairs(es);
    REQUIRE(cps.size() == 2);
    CHECK(cps[0].peak == parse_compact(es, "a"));
    CHECK(cps[0].left == parse_compact(es, "b"));
    CHECK(cps[0].right == parse_compact(es, "c"));
  }
  SUBCASE("critical pairs are one-step reducts of the peak") {
    for (const ESystem& es : {overlap_system(), fork_system()})
      for (const CriticalPair& cp : critical_pairs(es)) {
        TermSet reducts = seq_image(cp.peak, es);
        CHECK(reducts.count(cp.left));
        CHECK(reducts.count(cp.right));
      }
  }
}

TEST_CASE("kleisli premise") {
  SUBCASE("ADD satisfies the strong premise and the conclusion") {
    KleisliReport r = kleisli_premise_check(make_universe(add_system(), 3),
                                            /*weak=*/false);
    CHECK(r.premise.pass);
    CHECK(r.conclusion.pass);
    CHECK(!r.implication_violated);
  }
  SUBCASE("the fork fails the strong premise with witness (b, c)") {
    KleisliReport r = kleisli_premise_check(make_universe(fork_system(), 2),
                                            /*weak=*/false);
    CHECK(!r.premise.pass);
    CHECK(r.premise.witness == "(b, c)");
  }
  SUBCASE("weak variant holds for ADD") {
    KleisliReport r = kleisli_premise_check(make_universe(add_system(), 3),
                                            /*weak=*/true);
    CHECK(r.premise.pass);
    CHECK(r.conclusion.pass);
  }
}

TEST_CASE("sequentialisation laws") {
  UniverseRef u = make_universe(add_system(), 2);
  SequentialisationReport r = sequentialisation_check(u, 100, 0);
  for (const SeqLawVerdict& v : r.laws) {
    INFO(v.name, " witness ", v.witness);
    CHECK(v.pass);
  }

  // pointed example: Gamma of {(zero, succ(zero))} steps one argument
  detail::TupleSpace space(u);
  auto tid = [&](const std::string& s) {
    return *u->id_of(parse_compact(u->es(), s));
  };
  Rel a(u, {{tid("zero"), tid("succ(zero)")}});
  auto g = space.gamma(a);
  auto find_tuple = [&](SymbolId s, std::vector<int> args) {
    return *space.find(s, args);
  };
  int add_zz = find_tuple(0, {tid("zero"), tid("zero")});
  int add_sz = find_tuple(0, {tid("succ(zero)"), tid("zero")});
  int add_zs = find_tuple(0, {tid("zero"), tid("succ(zero)")});
  int add_ss = find_tuple(0, {tid("succ(zero)"), tid("succ(zero)")});
  auto has = [&](int x, int y) {
    return std::binary_search(g.begin(), g.end(), std::make_pair(x, y));
  };
  CHECK(has(add_zz, add_sz));
  CHECK(has(add_zz, add_zs));
  CHECK(!has(add_zz, add_ss));
}

TEST_CASE("unrestricted Gamma is not below the signature relator") {
  // the one-position step leaves the other arguments merely equal, so for
  // irreflexive a the fourth law needs the reflexive precondition
  UniverseRef u = make_universe(add_system(), 2);
  detail::TupleSpace space(u);
  auto tid = [&](const std::string& s) {
    return *u->id_of(parse_compact(u->es(), s));
  };
  Rel a(u, {{tid("zero"), tid("succ(zero)")}});
  CHECK(space.leq_witness_of(space.gamma(a), space.sigma_hat(a)).has_value());
}

TEST_CASE("law suite passes on ADD at depth 3") {
  LawConfig cfg;
  cfg.depth = 3;
  cfg.trials = 30;  // the acceptance run uses 100
  cfg.seed = 42;
  LawReport r = law_suite(add_system(), cfg);
  for (const LawResult& l : r.laws) {
    INFO(l.name, ": ", l.counterexample);
    CHECK(l.pass);
  }
}

TEST_CASE("law suite passes on a rule-free signature") {
  ESystem es(Signature({{"f", 2}, {"g", 1}, {"c", 0}}), VarSet({"x", "y"}),
             {});
  LawConfig cfg;
  cfg.depth = 3;
  cfg.trials = 30;
  cfg.seed = 0;
  LawReport r = law_suite(es, cfg);
  for (const LawResult& l : r.laws) {
    INFO(l.name, ": ", l.counterexample);
    CHECK(l.pass);
  }
}

TEST_CASE("the mutant law is caught") {
  LawConfig cfg;
  cfg.depth = 3;
  cfg.trials = 100;
  cfg.seed = 0;
  cfg.include_mutants = true;
  LawReport r = law_suite(add_system(), cfg);
  bool saw_mutant = false;
  for (const LawResult& l : r.laws)
    if (l.expected_fail) {
      saw_mutant = true;
      CHECK(l.pass);  // pass means: counterexample found
    }
  CHECK(saw_mutant);
}

TEST_CASE("law suite rejects depths below the rule depth") {
  LawConfig cfg;
  cfg.depth = 2;
  CHECK_THROWS_AS(law_suite(add_system(), cfg), std::invalid_argument);
}

TEST_CASE("law suite is deterministic for a fixed seed") {
  LawConfig cfg;
  cfg.depth = 3;
  cfg.trials = 10;
  cfg.seed = 7;
  LawReport a = law_suite(add_system(), cfg);
  LawReport b = law_suite(add_system(), cfg);
  REQUIRE(a.laws.size() == b.laws.size());
  for (std::size_t i = 0; i < a.laws.size(); ++i) {
    CHECK(a.laws[i].pass == b.laws[i].pass);
    CHECK(a.laws[i].counterexample == b.laws[i].counterexample);
  }
}

TEST_CASE("triangle property status of multi-step reduction is recorded") {
  // informative only: neither reading is part of any gate
  TriangleStatus s = triangle_status(make_universe(add_system(), 3));
  MESSAGE("scc triangle, x <= x;x~ form: ", (s.simple_form ? "holds" : "fails"));
  MESSAGE("scc triangle, apex form: ",
          (s.apex_form ? "holds" : "fails at " + s.apex_witness));
  // the simple form is implied by reflexivity of the closure, so it is safe
  // to pin down as a consistency check of the recording itself
  CHECK(s.simple_form);
}

TEST_CASE("structural equalities at depth 3, margin 1") {
  UniverseRef u = make_universe(add_system(), 3);
  Rel par = parallel_rel(u);
  Rel ext = subst_ctx_closure(u);
  Rel full = full_rel(u);
  Rel howe = howe_rel(u);
  auto restricted_eq = [&](const Rel& a, const Rel& b) {
    for (int x = 0; x < u->size(); ++x)
      for (int y = 0; y < u->size(); ++y) {
        if (u->term(x).depth() > 2 || u->term(y).depth() > 2) continue;
        if (a.contains(x, y) != b.contains(x, y)) return false;
      }
    return true;
  };
  CHECK(restricted_eq(par, ext));
  CHECK(restricted_eq(full, howe));
  CHECK(par == ext);  // here even exact
  CHECK(full == howe);
}
