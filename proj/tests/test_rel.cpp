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
#include <set>

#include "relrew/rel.hpp"
#include "test_common.hpp"

using namespace relrew;
using relrew::testing::add_system;

namespace {

UniverseRef small_universe() {
  static UniverseRef u = make_universe(add_system(), 2);
  return u;
}

Rel rel_of(const UniverseRef& u, std::vector<Rel::Pair> ps) {
  return Rel(u, std::move(ps));
}

Rel random_rel(const UniverseRef& u, std::mt19937_64& rng, int npairs) {
  std::vector<Rel::Pair> ps;
  for (int i = 0; i < npairs; ++i)
    ps.emplace_back(static_cast<int>(rng() % u->size()),
                    static_cast<int>(rng() % u->size()));
  return Rel(u, std::move(ps));
}

// reference semantics on plain pair sets, independent of Rel's storage
using PairSet = std::set<Rel::Pair>;

PairSet ref_compose(const PairSet& a, const PairSet& b) {
  PairSet out;
  for (const auto& [x, y] : a)
    for (const auto& [y2, z] : b)
      if (y == y2) out.emplace(x, z);
  return out;
}

PairSet as_set(const Rel& r) {
  return PairSet(r.pairs().begin(), r.pairs().end());
}

}  // namespace

TEST_CASE("compose basics") {
  auto u = small_universe();
  CHECK(compose(rel_of(u, {{0, 1}}), rel_of(u, {{1, 2}})) ==
        rel_of(u, {{0, 2}}));
  std::mt19937_64 rng(1);
  Rel a = random_rel(u, rng, 20);
  CHECK(compose(a, identity(u)) == a);
  CHECK(compose(identity(u), a) == a);
  CHECK(compose(rel_of(u, {{0, 1}}), rel_of(u, {{2, 3}})).empty());
}

TEST_CASE("converse basics") {
  auto u = small_universe();
  CHECK(converse(rel_of(u, {{0, 1}})) == rel_of(u, {{1, 0}}));
  CHECK(converse(identity(u)) == identity(u));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    Rel a = random_rel(u, rng, 15), b = random_rel(u, rng, 15);
    CHECK(converse(converse(a)) == a);
    CHECK(converse(compose(a, b)) == compose(converse(b), converse(a)));
    // monotone
    Rel ab = join(a, b);
    CHECK(leq(converse(a), converse(ab)));
  }
}

TEST_CASE("lattice operations") {
  auto u = small_universe();
  CHECK(meet(rel_of(u, {{0, 1}, {1, 1}}), rel_of(u, {{1, 1}})) ==
        rel_of(u, {{1, 1}}));
  std::mt19937_64 rng(3);
  Rel a = random_rel(u, rng, 25);
  CHECK(join(a, bottom(u)) == a);
  CHECK(leq(bottom(u), a));
  CHECK(leq(a, top(u)));
  CHECK(meet(a, top(u)) == a);
}

TEST_CASE("relations over different universes cannot be combined") {
  auto u1 = small_universe();
  auto u2 = make_universe(add_system(), 2);
  CHECK_THROWS_AS(compose(bottom(u1), bottom(u2)), std::invalid_argument);
  CHECK_THROWS_AS(leq(bottom(u1), bottom(u2)), std::invalid_argument);
}

TEST_CASE("modular law on random triples") {
  auto u = small_universe();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Rel a = random_rel(u, rng, 20), b = random_rel(u, rng, 20),
        c = random_rel(u, rng, 20);
    CHECK(leq(meet(compose(a, b), c),
              compose(meet(a, compose(c, converse(b))), b)));
  }
}

TEST_CASE("composition distributes over binary joins") {
  auto u = small_universe();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Rel a = random_rel(u, rng, 20), b = random_rel(u, rng, 20),
        c = random_rel(u, rng, 20);
    CHECK(compose(a, join(b, c)) == join(compose(a, b), compose(a, c)));
    CHECK(compose(join(a, b), c) == join(compose(a, c), compose(b, c)));
  }
}

TEST_CASE("kleene_lfp basics") {
  auto u = small_universe();
  CHECK(kleene_lfp([](const Rel& x) { return x; }, u) == bottom(u));
  std::mt19937_64 rng(6);
  Rel a = random_rel(u, rng, 12);
  CHECK(kleene_lfp([&](const Rel& x) { return join(a, x); }, u) == a);
}

TEST_CASE("rtc equals graph reachability") {
  auto u = small_universe();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    Rel a = random_rel(u, rng, 18);
    Rel star = rtc(a);
    CHECK(star ==
          kleene_lfp([&](const Rel& x) {
            return join(identity(u), compose(a, x));
          }, u));
    // oracle: BFS over the pair graph from every node
    int n = u->size();
    for (int s = 0; s < n; ++s) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : a.successors(x))
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
      }
      for (int t = 0; t < n; ++t) CHECK(star.contains(s, t) == seen[t]);
    }
  }
}

TEST_CASE("rtc and refl_close edge cases") {
  auto u = small_universe();
  CHECK(rtc(bottom(u)) == identity(u));
  Rel chain = rel_of(u, {{0, 1}, {1, 2}});
  CHECK(rtc(chain).contains(0, 2));
  Rel a = rel_of(u, {{3, 4}});
  Rel rc = refl_close(a);
  for (int i = 0; i < u->size(); ++i) CHECK(rc.contains(i, i));
  CHECK(rc.contains(3, 4));
}

TEST_CASE("lfp is below every pre-fixed point") {
  auto u = small_universe();
  REQUIRE(u->size() <= 30);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    Rel a = random_rel(u, rng, 15);
    auto f = [&](const Rel& x) {
      return join(identity(u), compose(a, x));
    };
    Rel lfp = kleene_lfp(f, u);
    // search: grow random seeds into pre-fixed points, then compare
    for (int j = 0; j < 5; ++j) {
      Rel x = random_rel(u, rng, 30);
      for (int guard = 0; guard < u->size() * u->size() + 1; ++guard) {
        Rel fx = f(x);
        if (leq(fx, x)) break;
        x = join(x, fx);
      }
      CHECK(leq(f(x), x));
      CHECK(leq(lfp, x));
    }
  }
}

TEST_CASE("non-monotone functions are rejected") {
  auto u = small_universe();
  // F flips between a nonempty value on bottom and bottom elsewhere
  Rel probe = rel_of(u, {{0, 1}});
  auto f = [&](const Rel& x) { return x.empty() ? probe : bottom(u); };
  CHECK_THROWS_WITH_AS(kleene_lfp(f, u), doctest::Contains("non-monotone"),
                       std::logic_error);
  auto g = [&](const Rel& x) {
    return x.contains(0, 1) ? bottom(u) : probe;
  };
  CHECK_THROWS_AS(kleene_lfp(g, u, /*spot_check=*/false), std::logic_error);
}

TEST_CASE("sparse and dense representations behave identically") {
  auto u = small_universe();
  std::mt19937_64 rng(9);
  int n = u->size();
  // densities straddling the switch-over threshold
  for (int npairs : {3, 20, n * n / 8, n * n / 2}) {
    Rel a = random_rel(u, rng, npairs);
    Rel b = random_rel(u, rng, npairs);
    CHECK(as_set(compose(a, b)) == ref_compose(as_set(a), as_set(b)));
    for (int i = 0; i < 50; ++i) {
      int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
      CHECK(a.contains(x, y) == (as_set(a).count({x, y}) > 0));
    }
  }
  CHECK(!random_rel(u, rng, 3).is_dense());
  CHECK(top(u).is_dense());
}
