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
// Confluence techniques and the law suite: diamond checks, operational
// orthogonality and nesting, critical pairs, the Kleisli premise, the
// sequentialisation laws, and randomized verification of the algebraic laws
// of the augmented relation calculus under the truncation-margin discipline.

#ifndef RELREW_ANALYZE_HPP
#define RELREW_ANALYZE_HPP

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

#include "relrew/ops.hpp"
#include "relrew/reduce.hpp"

namespace relrew {

// ---------------------------------------------------------------------------
// diamond check

template <class T>
struct DiamondReport {
  bool pass = true;
  long long peaks = 0;
  // first failing triple: peak, left reduct, right reduct
  std::optional<std::array<T, 3>> failure;
};

/// Checks the one-step diamond of an image enumerator over the given terms:
/// every peak s1 <- t -> s2 must join in one step from each side. Reports
/// the first failing triple.
template <class T, class ImageFn>
DiamondReport<T> diamond_check(const std::vector<T>& terms,
                               const ImageFn& image) {
  DiamondReport<T> report;
  for (const T& t : terms) {
    std::vector<T> img;
    for (const T& s : image(t)) img.push_back(s);
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = i + 1; j < img.size(); ++j) {
        ++report.peaks;
        std::vector<T> a, b;
        for (const T& s : image(img[i])) a.push_back(s);
        for (const T& s : image(img[j])) b.push_back(s);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::vector<T> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        if (common.empty()) {
          report.pass = false;
          report.failure = {t, img[i], img[j]};
          return report;
        }
      }
  }
  return report;
}

// ---------------------------------------------------------------------------
// operational orthogonality, nesting, Kleisli premise

struct InclusionVerdict {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when pass
};

inline InclusionVerdict check_inclusion(const std::string& name, const Rel& a,
                                        const Rel& b) {
  InclusionVerdict v{name};
  if (auto w = leq_witness(a, b)) {
    v.pass = false;
    const UniverseRef& u = a.universe();
    v.witness = "(" + u->show(w->first) + ", " + u->show(w->second) + ")";
  }
  return v;
}

struct OrthogonalityReport {
  InclusionVerdict root_determinism;   // ground° ; ground <= identity
  InclusionVerdict redex_preservation; // ground° ; node_refine(par) <= rules°[par]
  bool pass() const {
    return root_determinism.pass && redex_preservation.pass;
  }
};

/// The operational orthogonality conditions, checked extensionally with the
/// parallel (or full) extension of the system.
inline OrthogonalityReport orthogonality_check(const UniverseRef& u,
                                               bool use_full = false) {
  Rel ground = ground_instances(u);
  Rel ext = use_full ? full_rel(u) : parallel_rel(u);
  Rel rules = rules_rel(u);
  OrthogonalityReport r;
  r.root_determinism = check_inclusion(
      "root reducts are unique", compose(converse(ground), ground),
      identity(u));
  r.redex_preservation = check_inclusion(
      "reduction under a redex keeps it a redex instance",
      compose(converse(ground), node_refine(ext)),
      rel_subst(converse(rules), ext));
  return r;
}

enum class ReductionMode { Parallel, Full };

/// The nesting property: reducing the substitution part of a redex can be
/// completed to a reduction of the contractum.
inline InclusionVerdict nesting_check(const UniverseRef& u,
                                      ReductionMode mode) {
  Rel ext = mode == ReductionMode::Full ? full_rel(u) : parallel_rel(u);
  Rel rules_conv = converse(rules_rel(u));
  return check_inclusion("nesting property",
                         rel_subst(rules_conv, ext),
                         compose(ext, rel_subst(rules_conv, identity(u))));
}

struct KleisliReport {
  bool weak = false;
  InclusionVerdict premise;
  InclusionVerdict conclusion;      // only checked when the premise holds
  bool implication_violated = false;  // premise held but conclusion failed
};

/// Premise ground° ; par <= par ; par° (strong) or its starred weak variant;
/// when the premise holds the implied conclusion is verified as an
/// implementation consistency check.
inline KleisliReport kleisli_premise_check(const UniverseRef& u, bool weak) {
  KleisliReport r;
  r.weak = weak;
  Rel ground = ground_instances(u);
  Rel par = parallel_rel(u);
  Rel right = weak ? rtc(par) : par;
  Rel target = compose(right, converse(right));
  r.premise = check_inclusion(weak ? "weak Kleisli premise" : "Kleisli premise",
                              compose(converse(ground), par), target);
  if (r.premise.pass) {
    r.conclusion = check_inclusion("Kleisli conclusion",
                                   compose(converse(par), par), target);
    r.implication_violated = !r.conclusion.pass;
  }
  return r;
}

// ---------------------------------------------------------------------------
// left-linearity and critical pairs

inline int count_var_occurrences(const Term& t, VarId v) {
  if (t.is_var()) return t.var_id() == v ? 1 : 0;
  int n = 0;
  for (const Term& k : t.children()) n += count_var_occurrences(k, v);
  return n;
}

inline bool left_linear(const ESystem& es) {
  for (const Rule& r : es.rules())
    for (VarId v : term_vars(r.lhs))
      if (count_var_occurrences(r.lhs, v) > 1) return false;
  return true;
}

struct CriticalPair {
  Term peak;
  Term left;
  Term right;
  Position position;     // where the inner rule overlaps the outer lhs
  int outer_rule = 0;    // contracted at the root, yielding `left`
  int inner_rule = 0;    // contracted at `position`, yielding `right`
  Subst unifier;
};

namespace detail {

inline Term shift_vars(const Term& t, int offset) {
  if (t.is_var()) return Term::var(t.var_id() + offset);
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const Term& k : t.children()) kids.push_back(shift_vars(k, offset));
  return Term::node(t.symbol(), std::move(kids));
}

}  // namespace detail

/// All overlaps between rule left-hand sides: the inner rule's lhs (renamed
/// apart) unified with a non-variable subterm of the outer rule's lhs. The
/// trivial overlap of a rule with itself at the root is excluded.
inline std::vector<CriticalPair> critical_pairs(const ESystem& es) {
  std::vector<CriticalPair> out;
  int nv = es.vars().size();
  for (std::size_t outer = 0; outer < es.rules().size(); ++outer) {
    for (std::size_t inner = 0; inner < es.rules().size(); ++inner) {
      Term inner_lhs = detail::shift_vars(es.rules()[inner].lhs, nv);
      Term inner_rhs = detail::shift_vars(es.rules()[inner].rhs, nv);
      for (const Position& p : positions(es.rules()[outer].lhs)) {
        if (outer == inner && p.empty()) continue;
        const Term& sub = subterm_at(es.rules()[outer].lhs, p);
        if (sub.is_var()) continue;
        auto mgu = unify(sub, inner_lhs);
        if (!mgu) continue;
        out.push_back(CriticalPair{
            apply_subst(es.rules()[outer].lhs, *mgu),
            apply_subst(es.rules()[outer].rhs, *mgu),
            apply_subst(replace_at(es.rules()[outer].lhs, p, inner_rhs),
                        *mgu),
            p, static_cast<int>(outer), static_cast<int>(inner), *mgu});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// sequentialisation of the signature relator

struct SeqLawVerdict {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct SequentialisationReport {
  std::vector<SeqLawVerdict> laws;
  int trials = 0;
  bool pass() const {
    for (const SeqLawVerdict& v : laws)
      if (!v.pass) return false;
    return true;
  }
};

namespace detail {

/// The space of constructor tuples over a universe: elements of the
/// signature functor applied to the universe's carrier.
class TupleSpace {
 public:
  explicit TupleSpace(UniverseRef u) : u_(std::move(u)) {
    for (SymbolId s = 0; s < u_->es().sig().size(); ++s) {
      int ar = u_->es().sig().arity(s);
      std::vector<int> args(ar, 0);
      std::function<void(int)> gen = [&](int i) {
        if (i == ar) {
          index_.emplace(std::make_pair(s, args),
                         static_cast<int>(tuples_.size()));
          tuples_.emplace_back(s, args);
          return;
        }
        for (int id = 0; id < u_->size(); ++id) {
          args[i] = id;
          gen(i + 1);
        }
      };
      gen(0);
    }
  }

  int size() const { return static_cast<int>(tuples_.size()); }
  const std::pair<SymbolId, std::vector<int>>& tuple(int i) const {
    return tuples_[i];
  }
  std::optional<int> find(SymbolId s, const std::vector<int>& args) const {
    auto it = index_.find(std::make_pair(s, args));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::string show(int i) const {
    const auto& [s, args] = tuples_[i];
    std::string out = u_->es().sig().name(s);
    if (!args.empty()) {
      out += '(';
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (k) out += ", ";
        out += u_->show(args[k]);
      }
      out += ')';
    }
    return out;
  }

  using PairVec = std::vector<std::pair<int, int>>;

  static void canon(PairVec& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  /// Sequentialisation: same symbol, exactly one argument position related
  /// by a, all others equal; constants relate to themselves.
  PairVec gamma(const Rel& a) const {
    PairVec out;
    for (int i = 0; i < size(); ++i) {
      const auto& [s, args] = tuples_[i];
      if (args.empty()) {
        out.emplace_back(i, i);
        continue;
      }
      for (std::size_t pos = 0; pos < args.size(); ++pos)
        for (int succ : a.successors(args[pos])) {
          std::vector<int> target = args;
          target[pos] = succ;
          out.emplace_back(i, *find(s, target));
        }
    }
    canon(out);
    return out;
  }

  /// The signature relator: same symbol, all argument positions related.
  PairVec sigma_hat(const Rel& a) const {
    PairVec out;
    for (int i = 0; i < size(); ++i) {
      const auto& [s, args] = tuples_[i];
      std::vector<std::vector<int>> choice(args.size());
      bool viable = true;
      for (std::size_t k = 0; k < args.size(); ++k) {
        choice[k] = a.successors(args[k]);
        if (choice[k].empty()) viable = false;
      }
      if (!viable) continue;
      std::vector<int> target(args.size(), 0);
      std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k == args.size()) {
          out.emplace_back(i, *find(s, target));
          return;
        }
        for (int c : choice[k]) {
          target[k] = c;
          walk(k + 1);
        }
      };
      walk(0);
    }
    canon(out);
    return out;
  }

  PairVec diag() const {
    PairVec out;
    for (int i = 0; i < size(); ++i) out.emplace_back(i, i);
    return out;
  }

  static PairVec converse_of(const PairVec& a) {
    PairVec out;
    out.reserve(a.size());
    for (const auto& [x, y] : a) out.emplace_back(y, x);
    canon(out);
    return out;
  }

  static PairVec join_of(PairVec a, const PairVec& b) {
    a.insert(a.end(), b.begin(), b.end());
    canon(a);
    return a;
  }

  PairVec rtc_of(const PairVec& a) const {
    std::vector<std::vector<int>> succ(size());
    for (const auto& [x, y] : a) succ[x].push_back(y);
    PairVec out;
    for (int s = 0; s < size(); ++s) {
      std::vector<bool> seen(size(), false);
      std::vector<int> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.emplace_back(s, x);
        for (int y : succ[x])
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
      }
    }
    canon(out);
    return out;
  }

  std::optional<std::pair<int, int>> leq_witness_of(const PairVec& a,
                                                    const PairVec& b) const {
    for (const auto& p : a)
      if (!std::binary_search(b.begin(), b.end(), p)) return p;
    return std::nullopt;
  }

 private:
  UniverseRef u_;
  std::vector<std::pair<SymbolId, std::vector<int>>> tuples_;
  std::map<std::pair<SymbolId, std::vector<int>>, int> index_;
};

inline Rel random_rel_depth(const UniverseRef& u, std::mt19937_64& rng,
                            int npairs, int max_depth) {
  std::vector<int> pool;
  for (int i = 0; i < u->size(); ++i)
    if (max_depth <= 0 || u->term(i).depth() <= max_depth) pool.push_back(i);
  std::vector<Rel::Pair> ps;
  if (pool.empty()) return Rel(u, std::move(ps));
  for (int i = 0; i < npairs; ++i)
    ps.emplace_back(pool[rng() % pool.size()], pool[rng() % pool.size()]);
  return Rel(u, std::move(ps));
}

}  // namespace detail

/// Verifies the five sequentialisation laws of the signature relator over
/// random relations whose argument tuples are drawn from the universe. The
/// inclusion Gamma a <= Sigma a requires reflexive a (the untouched argument
/// positions must be self-related), so that law draws reflexively closed
/// samples.
inline SequentialisationReport sequentialisation_check(const UniverseRef& u,
                                                       int trials,
                                                       std::uint64_t seed) {
  detail::TupleSpace space(u);
  std::mt19937_64 rng(seed);
  SequentialisationReport report;
  report.trials = trials;
  std::vector<SeqLawVerdict> laws(5);
  laws[0].name = "Gamma(identity) = identity";
  laws[1].name = "Gamma(a converse) = (Gamma a) converse";
  laws[2].name = "Gamma(a join b) = Gamma a join Gamma b";
  laws[3].name = "Gamma a <= Sigma a   [reflexive a]";
  laws[4].name = "Sigma a <= rtc(Gamma a)";

  auto fail = [&](int i, const std::string& w) {
    if (laws[i].pass) {
      laws[i].pass = false;
      laws[i].witness = w;
    }
  };
  auto eq_or_fail = [&](int i, const detail::TupleSpace::PairVec& a,
                        const detail::TupleSpace::PairVec& b) {
    if (auto w = space.leq_witness_of(a, b)) {
      fail(i, "(" + space.show(w->first) + ", " + space.show(w->second) + ")");
      return;
    }
    if (auto w = space.leq_witness_of(b, a))
      fail(i, "(" + space.show(w->first) + ", " + space.show(w->second) + ")");
  };

  {
    auto gd = space.gamma(identity(u));
    eq_or_fail(0, gd, space.diag());
  }
  int npairs = std::max(2, u->size() / 3);
  for (int trial = 0; trial < trials; ++trial) {
    Rel a = detail::random_rel_depth(u, rng, npairs, 0);
    Rel b = detail::random_rel_depth(u, rng, npairs, 0);
    eq_or_fail(1, space.gamma(converse(a)),
               detail::TupleSpace::converse_of(space.gamma(a)));
    eq_or_fail(2, space.gamma(join(a, b)),
               detail::TupleSpace::join_of(space.gamma(a), space.gamma(b)));
    Rel ar = refl_close(a);
    if (auto w = space.leq_witness_of(space.gamma(ar), space.sigma_hat(ar)))
      fail(3, "(" + space.show(w->first) + ", " + space.show(w->second) + ")");
    if (auto w = space.leq_witness_of(space.sigma_hat(a),
                                      space.rtc_of(space.gamma(a))))
      fail(4, "(" + space.show(w->first) + ", " + space.show(w->second) + ")");
  }
  report.laws = std::move(laws);
  return report;
}

// ---------------------------------------------------------------------------
// informative status of the triangle property for multi-step reduction

struct TriangleStatus {
  // x <= x;x~ (holds trivially for reflexive relations)
  bool simple_form = true;
  // every term has an apex one step away that every one-step reduct also
  // reaches in one step
  bool apex_form = true;
  std::string apex_witness;  // a term with no apex, when apex_form fails
};

/// Records, without judging, whether the multi-step reduction of the system
/// satisfies the two readings of the triangle property over the universe.
inline TriangleStatus triangle_status(const UniverseRef& u) {
  TriangleStatus s;
  Rel scc = scc_rel(u);
  s.simple_form = leq(scc, compose(scc, converse(scc)));
  for (int t = 0; t < u->size() && s.apex_form; ++t) {
    std::vector<int> reducts = scc.successors(t);
    bool has_apex = false;
    for (int apex : reducts) {
      bool all = true;
      for (int r : reducts)
        if (!scc.contains(r, apex)) {
          all = false;
          break;
        }
      if (all) {
        has_apex = true;
        break;
      }
    }
    if (!has_apex) {
      s.apex_form = false;
      s.apex_witness = u->show(t);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// the law suite

struct LawResult {
  std::string name;
  std::string anchor;  // the law formula being checked
  int trials = 0;
  int margin = 0;
  bool pass = true;
  bool expected_fail = false;  // negative-control laws must find a witness
  std::string counterexample;
};

struct LawReport {
  std::vector<LawResult> laws;
  int depth = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool pass() const {
    for (const LawResult& l : laws)
      if (!l.pass) return false;
    return true;
  }
};

struct LawConfig {
  int depth = 3;
  int trials = 100;
  std::uint64_t seed = 0;
  std::size_t universe_cap = Universe::kDefaultCap;
  bool include_mutants = false;
};

namespace detail {

struct LawContext {
  UniverseRef u;
  std::mt19937_64 rng;
  int depth;
  int pairs_budget;

  Rel sample(int margin) {
    return random_rel_depth(u, rng, pairs_budget,
                            std::max(1, depth - margin));
  }
  Rel sample_leaves() { return random_rel_depth(u, rng, pairs_budget, 1); }
};

inline std::string pair_text(const Rel& r, const Rel::Pair& p) {
  const UniverseRef& u = r.universe();
  return "(" + u->show(p.first) + ", " + u->show(p.second) + ")";
}

inline bool expect_leq(const Rel& a, const Rel& b, LawResult& out) {
  if (auto w = leq_witness(a, b)) {
    out.pass = false;
    out.counterexample = "pair " + pair_text(a, *w) + " on the left only";
    return false;
  }
  return true;
}

inline bool expect_eq(const Rel& a, const Rel& b, LawResult& out) {
  if (auto w = leq_witness(a, b)) {
    out.pass = false;
    out.counterexample = "pair " + pair_text(a, *w) + " on the left only";
    return false;
  }
  if (auto w = leq_witness(b, a)) {
    out.pass = false;
    out.counterexample = "pair " + pair_text(b, *w) + " on the right only";
    return false;
  }
  return true;
}

}  // namespace detail

/// Runs every algebraic law of the calculus against seeded random relations
/// over a depth-bounded universe. Margins confine each law's inputs to the
/// region where the finite model agrees with the unbounded semantics;
/// preconditions (reflexive or variable-padded inputs) are established by
/// closure post-processing of the samples. With include_mutants, a broken
/// variant of the compatible-refinement substitution law is added as a
/// negative control: the suite must find a counterexample for it.
inline LawReport law_suite(const ESystem& es, const LawConfig& cfg) {
  if (cfg.depth < std::max(2, es.max_rule_depth()))
    throw std::invalid_argument(
        "law suite depth must be at least the maximal rule depth (and 2)");
  LawReport report;
  report.depth = cfg.depth;
  report.trials = cfg.trials;
  report.seed = cfg.seed;
  UniverseRef u = make_universe(es, cfg.depth, cfg.universe_cap);

  struct LawDef {
    std::string name;
    std::string anchor;
    int margin;
    int trials;  // 0 = once, no random inputs
    bool expected_fail = false;
    std::function<void(detail::LawContext&, LawResult&)> run;
  };

  Rel delta = identity(u);
  Rel vd = var_diag(u);
  bool has_rules = !es.rules().empty();
  std::vector<LawDef> defs;

  // --- allegory laws, no margin
  defs.push_back({"modular law", "a;b ^ c <= (a ^ c;b~);b", 0, cfg.trials,
                  false, [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(0), b = c.sample(0), x = c.sample(0);
                    detail::expect_leq(
                        meet(compose(a, b), x),
                        compose(meet(a, compose(x, converse(b))), b), out);
                  }});
  defs.push_back({"composition distributes over join",
                  "a;(b v c) = a;b v a;c", 0, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(0), b = c.sample(0), x = c.sample(0);
                    detail::expect_eq(compose(a, join(b, x)),
                                      join(compose(a, b), compose(a, x)),
                                      out);
                  }});
  defs.push_back({"converse is an involution that antidistributes",
                  "a~~ = a, (a;b)~ = b~;a~, a <= b => a~ <= b~", 0,
                  cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(0), b = c.sample(0);
                    if (!detail::expect_eq(converse(converse(a)), a, out))
                      return;
                    if (!detail::expect_eq(converse(compose(a, b)),
                                           compose(converse(b), converse(a)),
                                           out))
                      return;
                    detail::expect_leq(converse(a), converse(join(a, b)),
                                       out);
                  }});
  defs.push_back({"least fixed point is below pre-fixed points",
                  "F(x) <= x => lfp(F) <= x", 0, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(0);
                    auto f = [&](const Rel& x) {
                      return join(delta, compose(a, x));
                    };
                    Rel lfp = kleene_lfp(f, c.u, false);
                    if (!detail::expect_eq(f(lfp), lfp, out)) return;
                    Rel x = c.sample(0);
                    for (int i = 0; i <= c.u->size(); ++i) {
                      Rel fx = f(x);
                      if (leq(fx, x)) break;
                      x = join(x, fx);
                    }
                    detail::expect_leq(lfp, x, out);
                  }});

  // --- refinement relator laws, margin 1
  defs.push_back({"refinement preserves identity",
                  "compref(id) = id, compreff(id) = id on nodes", 1, 0, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    if (!detail::expect_eq(compat_refine(delta), delta, out))
                      return;
                    Rel nodes_only = node_refine(delta);
                    detail::expect_eq(join(vd, nodes_only), delta, out);
                  }});
  defs.push_back({"refinement is functorial on composition",
                  "compreff(a;b) = compreff(a);compreff(b)", 1, cfg.trials,
                  false, [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1), b = c.sample(1);
                    if (!detail::expect_eq(node_refine(compose(a, b)),
                                           compose(node_refine(a),
                                                   node_refine(b)),
                                           out))
                      return;
                    detail::expect_eq(
                        compat_refine(compose(a, b)),
                        compose(compat_refine(a), compat_refine(b)), out);
                  }});
  defs.push_back({"refinement preserves converse",
                  "compref(a~) = compref(a)~", 1, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1);
                    detail::expect_eq(compat_refine(converse(a)),
                                      converse(compat_refine(a)), out);
                  }});
  defs.push_back({"refinement preserves chain joins",
                  "a <= b => compref(a v b) = compref(a) v compref(b)", 1,
                  cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1);
                    Rel b = join(a, c.sample(1));  // a <= b
                    detail::expect_eq(
                        compat_refine(join(a, b)),
                        join(compat_refine(a), compat_refine(b)), out);
                  }});
  defs.push_back({"variable diagonal meets node refinement in bottom",
                  "compreff(a) ^ I = bottom", 0, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(0);
                    detail::expect_eq(meet(node_refine(a), vd), bottom(c.u),
                                      out);
                  }});

  // --- substitution laws
  defs.push_back({"substitution under node refinement",
                  "compreff(a)[b] <= compreff(a[b])", 1, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1);
                    Rel b = c.sample_leaves();
                    detail::expect_leq(rel_subst(node_refine(a), b),
                                       node_refine(rel_subst(a, b)), out);
                  }});
  defs.push_back({"substitution under the variable diagonal",
                  "I[b] <= b", 0, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel b = c.sample(0);
                    detail::expect_leq(rel_subst(vd, b), b, out);
                  }});
  defs.push_back({"substitution under compatible refinement",
                  "compref(a)[b] <= compref(a[b]) v b", 1, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1);
                    Rel b = c.sample_leaves();
                    detail::expect_leq(
                        rel_subst(compat_refine(a), b),
                        join(compat_refine(rel_subst(a, b)), b), out);
                  }});
  defs.push_back(
      {"substitution is associative",
       "a[b][c] = a[b[c]]   [b, c padded with the variable diagonal]", 1,
       cfg.trials, false, [&](detail::LawContext& c, LawResult& out) {
         Rel a = c.sample(1);
         Rel b = join(c.sample_leaves(), vd);
         Rel cc = join(c.sample_leaves(), vd);
         detail::expect_eq(rel_subst(rel_subst(a, b), cc),
                           rel_subst(a, rel_subst(b, cc)), out);
       }});
  defs.push_back({"substitution is a lax bi-relator",
                  "(a;c)[b;d] <= a[b];c[d], a[b]~ = a~[b~], monotone", 1,
                  cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1), x = c.sample(1);
                    Rel b = c.sample_leaves(), d = c.sample_leaves();
                    if (!detail::expect_eq(converse(rel_subst(a, b)),
                                           rel_subst(converse(a),
                                                     converse(b)),
                                           out))
                      return;
                    if (!detail::expect_leq(
                            rel_subst(compose(a, x), compose(b, d)),
                            compose(rel_subst(a, b), rel_subst(x, d)), out))
                      return;
                    detail::expect_leq(rel_subst(a, b),
                                       rel_subst(join(a, x), join(b, d)),
                                       out);
                  }});
  // the adjunction is a construction-level fact needing no rules, so its
  // quadratic pointwise computation runs on the depth-2 sub-universe
  UniverseRef u_adj =
      make_universe(ESystem(es.sig(), es.vars(), {}), std::min(cfg.depth, 2),
                    cfg.universe_cap);
  defs.push_back({"substitution adjunction",
                  "a[b] <= c <=> a <= b >> c", 1, cfg.trials, false,
                  [&, u_adj](detail::LawContext& c, LawResult& out) {
                    Rel a = detail::random_rel_depth(u_adj, c.rng, 5, 0);
                    Rel b = detail::random_rel_depth(u_adj, c.rng, 5, 1);
                    Rel x = detail::random_rel_depth(u_adj, c.rng, 40, 0);
                    bool lhs = leq(rel_subst(a, b), x);
                    Rel adj = subst_adjoint(b, x);
                    bool rhs = leq(a, adj);
                    if (lhs != rhs) {
                      out.pass = false;
                      out.counterexample = "adjunction sides disagree";
                      return;
                    }
                    detail::expect_leq(rel_subst(adj, b), x, out);
                  }});
  defs.push_back({"refinement commutes with iteration",
                  "compref(a*) = compref(a)*   [reflexive a]", 1, cfg.trials,
                  false, [&](detail::LawContext& c, LawResult& out) {
                    Rel a = refl_close(c.sample(1));
                    detail::expect_eq(compat_refine(rtc(a)),
                                      rtc(compat_refine(a)), out);
                  }});
  defs.push_back({"reflexive closure exchanges with instantiation",
                  "a[id]^= = a^=[id]", 1, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    Rel a = c.sample(1);
                    detail::expect_eq(refl_close(rel_subst(a, delta)),
                                      rel_subst(refl_close(a), delta), out);
                  }});

  // --- closure facts of the system's own reductions
  if (has_rules) {
    defs.push_back({"parallel extension is closed under substitution",
                    "par[id] <= par", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      Rel par = parallel_rel(c.u);
                      detail::expect_leq(rel_subst(par, delta), par, out);
                    }});
    defs.push_back({"parallel extension absorbs substitution pointwise",
                    "id[par] <= par", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      Rel par = parallel_rel(c.u);
                      detail::expect_leq(rel_subst(delta, par), par, out);
                    }});
    defs.push_back({"full extension is compatible",
                    "compref(full) <= full", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      Rel full = full_rel(c.u);
                      detail::expect_leq(compat_refine(full), full, out);
                    }});
    defs.push_back({"full extension is substitutive",
                    "full[full] <= full   [leaf substitution parts]", 1, 0,
                    false, [&](detail::LawContext& c, LawResult& out) {
                      Rel full = full_rel(c.u);
                      std::vector<Rel::Pair> leaves;
                      for (const auto& [x, y] : full.pairs())
                        if (c.u->term(x).depth() == 1 &&
                            c.u->term(y).depth() == 1)
                          leaves.emplace_back(x, y);
                      Rel leaf_part(c.u, std::move(leaves));
                      detail::expect_leq(rel_subst(full, leaf_part), full,
                                         out);
                    }});
    defs.push_back({"inclusion chain of the extensions",
                    "par <= full <= par* = full*", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      Rel par = parallel_rel(c.u);
                      Rel full = full_rel(c.u);
                      if (!detail::expect_leq(par, full, out)) return;
                      Rel ps = rtc(par);
                      if (!detail::expect_leq(full, ps, out)) return;
                      detail::expect_eq(ps, rtc(full), out);
                    }});
    defs.push_back({"multi-step reduction is below the Howe extension",
                    "scc <= howe", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      detail::expect_leq(scc_rel(c.u), howe_rel(c.u), out);
                    }});
    defs.push_back({"full extension equals the Howe extension",
                    "full = howe", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      detail::expect_eq(full_rel(c.u), howe_rel(c.u), out);
                    }});
    defs.push_back({"parallel extension is the substitutive context closure",
                    "par = ctx_closure(ground)", 0, 0, false,
                    [&](detail::LawContext& c, LawResult& out) {
                      detail::expect_eq(parallel_rel(c.u),
                                        subst_ctx_closure(c.u), out);
                    }});
  }
  defs.push_back({"shape lifting equals its fixed point",
                  "lift(a) = lfp(x -> a v compreff(x))", 0, cfg.trials, false,
                  [&](detail::LawContext& c, LawResult& out) {
                    int nv = c.u->var_count();
                    if (nv == 0) return;
                    std::vector<Rel::Pair> vp;
                    for (int k = 0; k < 3; ++k)
                      vp.emplace_back(static_cast<int>(c.rng() % nv),
                                      static_cast<int>(c.rng() % nv));
                    Rel a(c.u, std::move(vp));
                    Rel mu = kleene_lfp(
                        [&](const Rel& x) {
                          return join(a, node_refine(x));
                        },
                        c.u, false);
                    detail::expect_eq(shape_lift(a), mu, out);
                  }});

  if (cfg.include_mutants) {
    defs.push_back({"mutant: substitution under compatible refinement "
                    "without the join",
                    "compref(a)[b] <= compref(a[b])   [expected to fail]", 1,
                    cfg.trials, true,
                    [&](detail::LawContext& c, LawResult& out) {
                      Rel a = c.sample(1);
                      Rel b = c.sample_leaves();
                      detail::expect_leq(rel_subst(compat_refine(a), b),
                                         compat_refine(rel_subst(a, b)),
                                         out);
                    }});
  }

  for (std::size_t i = 0; i < defs.size(); ++i) {
    LawDef& def = defs[i];
    LawResult res;
    res.name = def.name;
    res.anchor = def.anchor;
    res.margin = def.margin;
    res.expected_fail = def.expected_fail;
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(i + 1)};
    detail::LawContext ctx{u, std::mt19937_64(seq), cfg.depth,
                           std::max(4, u->size() / 4)};
    int runs = def.trials == 0 ? 1 : def.trials;
    res.trials = runs;
    auto started = std::chrono::steady_clock::now();
    for (int trial = 0; trial < runs && res.pass; ++trial) def.run(ctx, res);
    if (std::getenv("RELREW_LAW_TIMING") != nullptr)
      std::fprintf(stderr, "%9.3fs  %s\n",
                   std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - started)
                       .count(),
                   def.name.c_str());
    if (def.expected_fail) {
      // a negative control passes exactly when a counterexample was found
      bool found = !res.pass;
      res.pass = found;
      if (!found)
        res.counterexample = "no counterexample found within trials";
    }
    report.laws.push_back(std::move(res));
  }
  return report;
}

}  // namespace relrew

#endif  // RELREW_ANALYZE_HPP
