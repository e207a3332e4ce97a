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

#include <random>

#include "relrew/rel.hpp"
#include "relrew/term.hpp"
#include "test_common.hpp"

using namespace relrew;
using relrew::testing::add_system;
using relrew::testing::parse_compact;

namespace {

// Every substitution with the given domain whose bindings are drawn from the
// universe. Brute-force oracle for matching and unification.
std::vector<Subst> all_substs(const std::vector<VarId>& dom,
                              const Universe& u) {
  std::vector<Subst> out{Subst{}};
  for (VarId v : dom) {
    std::vector<Subst> next;
    for (const Subst& s : out)
      for (const Term& t : u.terms()) {
        Subst s2 = s;
        s2.bind.emplace(v, t);
        next.push_back(std::move(s2));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<VarId> as_vec(const std::set<VarId>& s) {
  return std::vector<VarId>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("apply_subst replaces leaves simultaneously") {
  ESystem es = add_system();
  Term t = parse_compact(es, "add(zero, y)");
  Subst g;
  g.bind.emplace(1, parse_compact(es, "succ(zero)"));
  CHECK(apply_subst(t, g) == parse_compact(es, "add(zero, succ(zero))"));

  CHECK(apply_subst(Term::var(0), Subst{}) == Term::var(0));

  Subst dup;
  dup.bind.emplace(0, parse_compact(es, "succ(y)"));
  CHECK(apply_subst(parse_compact(es, "add(x, x)"), dup) ==
        parse_compact(es, "add(succ(y), succ(y))"));
}

TEST_CASE("apply_subst does not re-substitute into inserted terms") {
  ESystem es = add_system();
  // x -> succ(y) and y -> zero applied simultaneously: the y inside succ(y)
  // must survive
  Subst g;
  g.bind.emplace(0, parse_compact(es, "succ(y)"));
  g.bind.emplace(1, parse_compact(es, "zero"));
  CHECK(apply_subst(parse_compact(es, "add(x, y)"), g) ==
        parse_compact(es, "add(succ(y), zero)"));
}

TEST_CASE("match_term basic cases") {
  ESystem es = add_system();
  auto m = match_term(parse_compact(es, "add(zero, y)"),
                      parse_compact(es, "add(zero, succ(zero))"));
  REQUIRE(m.has_value());
  CHECK(m->bind.at(1) == parse_compact(es, "succ(zero)"));
  CHECK(m->bind.size() == 1);

  CHECK(!match_term(parse_compact(es, "add(succ(x), y)"),
                    parse_compact(es, "add(zero, zero)")));
}

TEST_CASE("non-linear match against brute-force substitution search") {
  ESystem es = add_system();
  Universe u(es, 2);
  Term pat = parse_compact(es, "add(x, x)");
  Term subj = parse_compact(es, "add(zero, succ(zero))");
  CHECK(!match_term(pat, subj));
  // oracle: no substitution over U_2 makes the pattern equal to the subject
  for (const Subst& s : all_substs(as_vec(term_vars(pat)), u))
    CHECK(apply_subst(pat, s) != subj);
}

TEST_CASE("match soundness and uniqueness, exhaustively on U_2 x U_2") {
  ESystem es = add_system();
  Universe u(es, 2);
  for (const Term& pat : u.terms()) {
    std::vector<Subst> candidates = all_substs(as_vec(term_vars(pat)), u);
    for (const Term& subj : u.terms()) {
      auto m = match_term(pat, subj);
      int oracle_hits = 0;
      for (const Subst& s : candidates)
        if (apply_subst(pat, s) == subj) ++oracle_hits;
      if (m) {
        CHECK(apply_subst(pat, *m) == subj);
        CHECK(term_vars(pat).size() == m->bind.size());
        CHECK(oracle_hits == 1);
      } else {
        // matches of a depth-2 pattern against a depth-2 subject never need
        // bindings outside U_2, so the oracle count is exact
        CHECK(oracle_hits == 0);
      }
    }
  }
}

TEST_CASE("unify computes most general unifiers") {
  ESystem es = add_system();
  Term t1 = parse_compact(es, "add(x, zero)");
  Term t2 = parse_compact(es, "add(succ(y), y)");
  SUBCASE("unifier application equalizes both sides") {
    auto g = unify(t1, parse_compact(es, "add(succ(y), zero)"));
    REQUIRE(g.has_value());
    CHECK(apply_subst(t1, *g) ==
          apply_subst(parse_compact(es, "add(succ(y), zero)"), *g));
  }
  SUBCASE("occurs check") {
    CHECK(!unify(Term::var(0), parse_compact(es, "succ(x)")));
  }
  SUBCASE("identical constants unify with the empty substitution") {
    auto g = unify(parse_compact(es, "zero"), parse_compact(es, "zero"));
    REQUIRE(g.has_value());
    CHECK(g->bind.empty());
  }
  SUBCASE("head clash") { CHECK(!unify(t2, parse_compact(es, "succ(x)"))); }
}

TEST_CASE("every brute-force unifier over U_2 factors through the mgu") {
  ESystem es = add_system();
  Universe u(es, 2);
  std::vector<std::pair<std::string, std::string>> cases = {
      {"add(x, zero)", "add(succ(y), y)"},
      {"add(x, y)", "add(y, x)"},
      {"succ(x)", "succ(succ(y))"},
      {"add(x, x)", "add(y, succ(y))"},
  };
  for (const auto& [a, b] : cases) {
    Term t1 = parse_compact(es, a), t2 = parse_compact(es, b);
    auto mgu = unify(t1, t2);
    std::set<VarId> vs = term_vars(t1);
    for (VarId v : term_vars(t2)) vs.insert(v);
    for (const Subst& s : all_substs(as_vec(vs), u)) {
      if (apply_subst(t1, s) != apply_subst(t2, s)) continue;
      REQUIRE(mgu.has_value());
      // s factors: s = mgu ; d for some d, checked pointwise on vs
      bool factors = true;
      for (VarId v : vs) {
        Term via =
            apply_subst(apply_subst(Term::var(v), *mgu), s);
        if (!(via == apply_subst(Term::var(v), s))) factors = false;
      }
      CHECK(factors);
    }
  }
  // unify(add(x,zero), add(succ(y),z)) from a three-variable system
  ESystem es3(Signature({{"add", 2}, {"succ", 1}, {"zero", 0}}),
              VarSet({"x", "y", "z"}), {});
  auto g = unify(parse_compact(es3, "add(x, zero)"),
                 parse_compact(es3, "add(succ(y), z)"));
  REQUIRE(g.has_value());
  CHECK(g->bind.at(0) == parse_compact(es3, "succ(y)"));
  CHECK(g->bind.at(2) == parse_compact(es3, "zero"));
}

TEST_CASE("universe enumeration") {
  SUBCASE("depth 1 is the leaves, variables first") {
    ESystem es(Signature({{"zero", 0}}), VarSet({"x"}), {});
    Universe u(es, 1);
    REQUIRE(u.size() == 2);
    CHECK(u.term(0) == Term::var(0));
    CHECK(u.term(1) == Term::node(0, {}));
  }
  SUBCASE("unary chain") {
    ESystem es(Signature({{"zero", 0}, {"succ", 1}}), VarSet{std::vector<std::string>{}}, {});
    Universe u(es, 3);
    REQUIRE(u.size() == 3);
    CHECK(u.show(0) == "zero");
    CHECK(u.show(1) == "succ(zero)");
    CHECK(u.show(2) == "succ(succ(zero))");
  }
  SUBCASE("ADD at depth 2: layer counting formula") {
    Universe u(add_system(), 2);
    // 3 leaves + 9 add(leaf, leaf) + 3 succ(leaf)
    CHECK(u.size() == 3 + 9 + 3);
  }
  SUBCASE("ADD at depth 3") {
    Universe u(add_system(), 3);
    // leaves L = 3; layer 2 = L^2 + L; layer 3 over T_2 = 15 with at least
    // one child of depth exactly 2
    CHECK(u.size() == 15 + (15 * 15 - 9) + (15 - 3));
    CHECK(u.size() == 243);
  }
}

TEST_CASE("universe is closed under subterms and ids are stable") {
  Universe u(add_system(), 3);
  for (int id = 0; id < u.size(); ++id) {
    CHECK(u.id_of(u.term(id)) == id);
    for (const Position& p : positions(u.term(id)))
      CHECK(u.id_of(subterm_at(u.term(id), p)).has_value());
  }
}

TEST_CASE("universe cardinality cap is enforced and named") {
  CHECK_THROWS_WITH_AS(Universe(add_system(), 4, 100),
                       doctest::Contains("cap of 100"), std::length_error);
}

TEST_CASE("positions, subterm_at, replace_at") {
  ESystem es = add_system();
  Term t = parse_compact(es, "succ(add(zero, zero))");
  auto ps = positions(t);
  REQUIRE(ps.size() == 4);
  CHECK(ps[0] == Position{});
  CHECK(ps[1] == Position{0});
  CHECK(ps[2] == Position{0, 0});
  CHECK(ps[3] == Position{0, 1});
  CHECK(subterm_at(t, {0}) == parse_compact(es, "add(zero, zero)"));
  CHECK(replace_at(t, {0}, parse_compact(es, "zero")) ==
        parse_compact(es, "succ(zero)"));
  CHECK_THROWS_WITH_AS(subterm_at(t, {1}), doctest::Contains("prefix 1"),
                       std::out_of_range);
  CHECK_THROWS_WITH_AS(replace_at(t, {0, 2}, t), doctest::Contains("0.2"),
                       std::out_of_range);
}

TEST_CASE("substitution composition is associative with application") {
  ESystem es = add_system();
  Universe u(es, 2);
  std::mt19937_64 rng(7);
  auto rnd_term = [&]() { return u.term(rng() % u.size()); };
  for (int trial = 0; trial < 200; ++trial) {
    Subst g, d;
    for (VarId v = 0; v < es.vars().size(); ++v) {
      if (rng() % 2) g.bind.emplace(v, rnd_term());
      if (rng() % 2) d.bind.emplace(v, rnd_term());
    }
    Term t = rnd_term();
    CHECK(apply_subst(apply_subst(t, g), d) ==
          apply_subst(t, compose_subst(g, d)));
  }
}

TEST_CASE("rule and system validation") {
  Signature sig({{"f", 1}, {"c", 0}});
  VarSet vars({"x", "y"});
  Term x = Term::var(0), y = Term::var(1);
  Term c = Term::node(1, {});
  auto f = [](Term t) { return Term::node(0, {std::move(t)}); };

  CHECK_THROWS_WITH_AS(ESystem(sig, vars, {{x, c}}),
                       doctest::Contains("lhs is a variable"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(ESystem(sig, vars, {{f(x), f(y)}}),
                       doctest::Contains("not bound"), std::invalid_argument);
  CHECK_THROWS_AS(Signature({{"f", 1}, {"f", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Signature({{"f", -1}}), std::invalid_argument);
  CHECK_THROWS_AS(VarSet({"x", "x"}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(ESystem(sig, VarSet({"f"}), {}),
                       doctest::Contains("clashes"), std::invalid_argument);
}
