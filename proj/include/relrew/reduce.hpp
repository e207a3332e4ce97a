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
// Forward-image enumerators for each reduction relation, working on raw
// terms with no depth bound. These are the reference semantics against which
// the extensional fixed points of ops.hpp are cross-checked.

#ifndef RELREW_REDUCE_HPP
#define RELREW_REDUCE_HPP

#include <functional>

#include "relrew/term.hpp"

namespace relrew {

using TermSet = std::set<Term>;

/// Reducts of t by a rule applied at the root.
inline TermSet ground_image(const Term& t, const ESystem& es) {
  TermSet out;
  for (const Rule& r : es.rules())
    if (auto g = match_term(r.lhs, t)) out.insert(apply_subst(r.rhs, *g));
  return out;
}

/// Reducts of t by one rule instance applied at one position.
inline TermSet seq_image(const Term& t, const ESystem& es) {
  TermSet out;
  for (const Position& p : positions(t))
    for (const Term& red : ground_image(subterm_at(t, p), es))
      out.insert(replace_at(t, p, red));
  return out;
}

/// Sequential reduction with raw ground steps: a subterm is replaced only
/// when it is literally a rule's left-hand side (no substitution instance).
inline TermSet seq_image_raw(const Term& t, const ESystem& es) {
  TermSet out;
  for (const Position& p : positions(t)) {
    const Term& sub = subterm_at(t, p);
    for (const Rule& r : es.rules())
      if (sub == r.lhs) out.insert(replace_at(t, p, r.rhs));
  }
  return out;
}

/// Parallel reduction: contract any set of pairwise disjoint redex
/// instances, or the whole term as one root redex. Always contains t.
inline TermSet parallel_image(const Term& t, const ESystem& es) {
  if (t.is_var()) return {t};
  std::vector<TermSet> kid_images;
  for (const Term& k : t.children())
    kid_images.push_back(parallel_image(k, es));
  TermSet out;
  std::vector<Term> pick;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == kid_images.size()) {
      out.insert(Term::node(t.symbol(), pick));
      return;
    }
    for (const Term& k : kid_images[i]) {
      pick.push_back(k);
      walk(i + 1);
      pick.pop_back();
    }
  };
  walk(0);
  for (const Term& red : ground_image(t, es)) out.insert(red);
  return out;
}

/// Full reduction: reduce all children fully, then optionally contract the
/// rebuilt term at the root. Reaches nested redexes in a single step.
inline TermSet full_image(const Term& t, const ESystem& es) {
  if (t.is_var()) return {t};
  std::vector<TermSet> kid_images;
  for (const Term& k : t.children()) kid_images.push_back(full_image(k, es));
  TermSet out;
  std::vector<Term> pick;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == kid_images.size()) {
      Term u = Term::node(t.symbol(), pick);
      out.insert(u);
      for (const Term& red : ground_image(u, es)) out.insert(red);
      return;
    }
    for (const Term& k : kid_images[i]) {
      pick.push_back(k);
      walk(i + 1);
      pick.pop_back();
    }
  };
  walk(0);
  return out;
}

/// Multi-step reduction: rule instances whose substitution parts are
/// themselves multi-step reduced, plus argumentwise reduction.
inline TermSet scc_image(const Term& t, const ESystem& es) {
  if (t.is_var()) return {t};
  TermSet out;
  {
    std::vector<TermSet> kid_images;
    for (const Term& k : t.children()) kid_images.push_back(scc_image(k, es));
    std::vector<Term> pick;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == kid_images.size()) {
        out.insert(Term::node(t.symbol(), pick));
        return;
      }
      for (const Term& k : kid_images[i]) {
        pick.push_back(k);
        walk(i + 1);
        pick.pop_back();
      }
    };
    walk(0);
  }
  for (const Rule& r : es.rules()) {
    auto g = match_term(r.lhs, t);
    if (!g) continue;
    // instantiate the rhs through reduced substitution parts
    std::vector<VarId> rv;
    for (VarId v : term_vars(r.rhs)) rv.push_back(v);
    std::vector<std::vector<Term>> choices(rv.size());
    for (std::size_t i = 0; i < rv.size(); ++i) {
      TermSet s = scc_image(g->bind.at(rv[i]), es);
      choices[i].assign(s.begin(), s.end());
    }
    Subst gp;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (i == rv.size()) {
        out.insert(apply_subst(r.rhs, gp));
        return;
      }
      for (const Term& c : choices[i]) {
        gp.bind.insert_or_assign(rv[i], c);
        walk(i + 1);
      }
      gp.bind.erase(rv[i]);
    };
    walk(0);
  }
  return out;
}

/// Union of i-step images for i <= steps (the image functions are reflexive
/// except ground/seq, whose iterate accumulates every intermediate).
template <class ImageFn>
TermSet iterate_image(const Term& t, int steps, const ImageFn& image) {
  TermSet seen{t};
  TermSet frontier{t};
  for (int i = 0; i < steps && !frontier.empty(); ++i) {
    TermSet next;
    for (const Term& s : frontier)
      for (const Term& r : image(s))
        if (seen.insert(r).second) next.insert(r);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace relrew

#endif  // RELREW_REDUCE_HPP
