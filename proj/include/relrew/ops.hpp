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
// Operators of the augmented relation calculus over a bounded term universe:
// compatible refinement, relation substitution and its right adjoint, the
// closure operators, the syntax lifting of a variable relation, and the
// extensional reduction relations built from an E-system's rules.
//
// Everything here computes over the finite universe: pairs whose canonical
// witnesses exceed the depth bound are silently absent. Law checks built on
// these operators therefore restrict inputs by per-law depth margins (see
// analyze.hpp).

#ifndef RELREW_OPS_HPP
#define RELREW_OPS_HPP

#include "relrew/rel.hpp"

namespace relrew {

namespace detail {

/// Dense membership snapshot of a relation, for inner loops.
class PairBits {
 public:
  explicit PairBits(const Rel& a) : n_(a.universe()->size()) {
    bits_.assign((static_cast<std::size_t>(n_) * n_ + 63) / 64, 0);
    for (const auto& [x, y] : a.pairs()) {
      std::size_t i = static_cast<std::size_t>(x) * n_ + y;
      bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }
  bool operator()(int x, int y) const {
    std::size_t i = static_cast<std::size_t>(x) * n_ + y;
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }

 private:
  int n_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// Diagonal restricted to variable leaves: the property of being a variable.
inline Rel var_diag(const UniverseRef& u) {
  std::vector<Rel::Pair> ps;
  for (int v = 0; v < u->var_count(); ++v) ps.emplace_back(v, v);
  return Rel(u, std::move(ps));
}

/// Relates o(t1..tn) to o(s1..sn) when every (ti, si) is in a. Constants
/// relate to themselves (empty argument conjunction); variables are not
/// related at all.
inline Rel node_refine(const Rel& a) {
  const UniverseRef& u = a.universe();
  detail::PairBits in(a);
  std::vector<Rel::Pair> ps;
  for (SymbolId s = 0; s < u->es().sig().size(); ++s) {
    const std::vector<int>& nodes = u->nodes_of(s);
    int ar = u->es().sig().arity(s);
    for (int src : nodes)
      for (int dst : nodes) {
        const auto& ck = u->child_ids(src);
        const auto& dk = u->child_ids(dst);
        bool ok = true;
        for (int i = 0; i < ar && ok; ++i) ok = in(ck[i], dk[i]);
        if (ok) ps.emplace_back(src, dst);
      }
  }
  return Rel(u, std::move(ps));
}

/// Compatible refinement: node_refine plus the variable diagonal.
inline Rel compat_refine(const Rel& a) {
  return join(var_diag(a.universe()), node_refine(a));
}

namespace detail {

/// Matches a pattern against a universe term by id, extending the binding
/// (var -> term id, -1 when unbound).
inline bool match_id(const Universe& u, const Term& p, int tid,
                     std::vector<int>& bind) {
  if (p.is_var()) {
    int& slot = bind[p.var_id()];
    if (slot < 0) {
      slot = tid;
      return true;
    }
    return slot == tid;
  }
  const Term& t = u.term(tid);
  if (t.is_var() || t.symbol() != p.symbol()) return false;
  const std::vector<int>& kids = u.child_ids(tid);
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!match_id(u, p.children()[i], kids[i], bind)) return false;
  return true;
}

/// Successor adjacency of a relation in CSR form, shared across the pattern
/// pairs of one substitution computation.
struct SuccIndex {
  std::vector<int> offsets;
  std::vector<int> flat;
  std::vector<int> targets;  // all targets, sorted unique
  bool empty = true;

  explicit SuccIndex(const Rel& b) {
    int n = b.universe()->size();
    offsets.assign(n + 1, 0);
    empty = b.empty();
    for (const auto& [x, y] : b.pairs()) ++offsets[x + 1];
    for (int i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    flat.resize(b.pairs().size());
    {
      std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
      for (const auto& [x, y] : b.pairs()) flat[cursor[x]++] = y;
    }
    targets.reserve(b.pairs().size());
    for (const auto& [x, y] : b.pairs()) targets.push_back(y);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()),
                  targets.end());
  }

  std::pair<const int*, const int*> succ(int x) const {
    return {flat.data() + offsets[x], flat.data() + offsets[x + 1]};
  }
};

/// The target pattern compiled to a bottom-up build plan: per instance it
/// resolves universe ids with a reused key buffer and no allocation.
class InstanceBuilder {
 public:
  InstanceBuilder(const Universe& u, const Term& q) : u_(&u) {
    root_ = compile(q);
    slots_.resize(nodes_.size());
  }

  /// Id of q instantiated by the binding, or -1 when it leaves the universe.
  int build(const std::vector<int>& bind) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      key_.clear();
      key_.push_back(n.sym);
      bool ok = true;
      for (int c : n.args) {
        int v = c >= 0 ? slots_[c] : bind[-c - 1];
        if (v < 0) {
          ok = false;
          break;
        }
        key_.push_back(v);
      }
      slots_[i] = ok ? u_->node_id(key_) : -1;
    }
    return root_ >= 0 ? slots_[root_] : bind[-root_ - 1];
  }

 private:
  struct Node {
    int sym;
    std::vector<int> args;  // slot index, or -(var+1) for a variable leaf
  };

  int compile(const Term& q) {
    if (q.is_var()) return -(q.var_id() + 1);
    Node n;
    n.sym = q.symbol();
    for (const Term& k : q.children()) n.args.push_back(compile(k));
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  const Universe* u_;
  std::vector<Node> nodes_;  // post-order, root last
  int root_;
  std::vector<int> slots_;
  std::vector<int> key_;
};

/// Enumerates the substitution instances of the source/target pattern pair
/// (p, q) through b (presented as a SuccIndex), calling
/// emit(source_id, target_id) for each instance landing in the universe.
/// Quantification is over total substitutions on the declared variable set,
/// pointwise related by b. Returns false as soon as emit does.
template <class Emit>
bool for_subst_instances(const UniverseRef& u, const Term& p, const Term& q,
                         const SuccIndex& b, const Emit& emit) {
  int nv = u->es().vars().size();
  std::vector<char> in_p(nv, 0), in_q(nv, 0);
  for (VarId v : term_vars(p)) in_p[v] = 1;
  for (VarId v : term_vars(q)) in_q[v] = 1;
  bool has_unused = false;
  for (VarId v = 0; v < nv; ++v)
    if (!in_p[v] && !in_q[v]) has_unused = true;
  if (has_unused && b.empty) return true;  // no pointwise-related pair

  std::vector<VarId> qvars;
  for (VarId v = 0; v < nv; ++v)
    if (in_q[v]) qvars.push_back(v);
  const std::size_t k = qvars.size();

  // candidate sources: a non-variable pattern only matches nodes of its own
  // head symbol
  std::vector<int> all;
  const std::vector<int>* candidates;
  if (p.is_var()) {
    all.resize(u->size());
    for (int i = 0; i < u->size(); ++i) all[i] = i;
    candidates = &all;
  } else {
    candidates = &u->nodes_of(p.symbol());
  }

  InstanceBuilder builder(*u, q);
  std::vector<int> bind(nv, -1), target_bind(nv, -1);
  std::vector<std::pair<const int*, const int*>> choice(k);
  std::vector<const int*> idx(k);
  for (int tid : *candidates) {
    std::fill(bind.begin(), bind.end(), -1);
    if (!match_id(*u, p, tid, bind)) continue;
    bool viable = true;
    for (VarId v = 0; v < nv && viable; ++v)
      if (in_p[v] && !in_q[v]) {
        auto [lo, hi] = b.succ(bind[v]);
        if (lo == hi) viable = false;  // p-only vars need some b-successor
      }
    for (std::size_t i = 0; i < k && viable; ++i) {
      VarId v = qvars[i];
      choice[i] = in_p[v]
                      ? b.succ(bind[v])
                      : std::make_pair(b.targets.data(),
                                       b.targets.data() + b.targets.size());
      if (choice[i].first == choice[i].second) viable = false;
    }
    if (!viable) continue;
    if (k == 0) {
      int sid = builder.build(target_bind);
      if (sid >= 0 && !emit(tid, sid)) return false;
      continue;
    }
    // odometer over the per-variable choice ranges
    for (std::size_t i = 0; i < k; ++i) {
      idx[i] = choice[i].first;
      target_bind[qvars[i]] = *idx[i];
    }
    bool exhausted = false;
    while (!exhausted) {
      int sid = builder.build(target_bind);
      if (sid >= 0 && !emit(tid, sid)) return false;
      std::size_t j = k;
      while (true) {
        if (j == 0) {
          exhausted = true;
          break;
        }
        --j;
        if (++idx[j] != choice[j].second) {
          target_bind[qvars[j]] = *idx[j];
          break;
        }
        idx[j] = choice[j].first;
        target_bind[qvars[j]] = *idx[j];
      }
    }
  }
  return true;
}

}  // namespace detail

/// Relation substitution a[b]: all pairs (p g, q g') with (p, q) in a and
/// total substitutions g, g' into the universe that are pointwise related by
/// b on every declared variable, kept when both instances stay within the
/// universe.
inline Rel rel_subst(const Rel& a, const Rel& b) {
  a.check_same(b);
  const UniverseRef& u = a.universe();
  if (u->es().vars().size() > 0 && b.empty()) return bottom(u);
  detail::SuccIndex bi(b);
  std::vector<Rel::Pair> ps;
  for (const auto& [pid, qid] : a.pairs())
    detail::for_subst_instances(u, u->term(pid), u->term(qid), bi,
                                [&](int s, int t) {
                                  ps.emplace_back(s, t);
                                  return true;
                                });
  return Rel(u, std::move(ps));
}

/// Right adjoint of substitution: the largest x with x[b] <= c. Computed
/// pointwise, which is valid because -[b] preserves joins in its first
/// argument.
inline Rel subst_adjoint(const Rel& b, const Rel& c) {
  b.check_same(c);
  const UniverseRef& u = b.universe();
  detail::PairBits inc(c);
  detail::SuccIndex bi(b);
  std::vector<Rel::Pair> ps;
  for (int t = 0; t < u->size(); ++t)
    for (int s = 0; s < u->size(); ++s) {
      bool within = detail::for_subst_instances(
          u, u->term(t), u->term(s), bi,
          [&](int x, int y) { return inc(x, y); });
      if (within) ps.emplace_back(t, s);
    }
  return Rel(u, std::move(ps));
}

/// Least compatible relation containing a.
inline Rel ctx_closure(const Rel& a) {
  return kleene_lfp(
      [&](const Rel& x) { return join(a, compat_refine(x)); }, a.universe(),
      /*spot_check=*/false);
}

/// The rule pairs of the universe's E-system as a relation. Rules whose
/// sides exceed the depth bound cannot be embedded and raise an error.
inline Rel rules_rel(const UniverseRef& u) {
  std::vector<Rel::Pair> ps;
  const ESystem& es = u->es();
  for (std::size_t i = 0; i < es.rules().size(); ++i) {
    const Rule& r = es.rules()[i];
    auto l = u->id_of(r.lhs);
    auto rr = u->id_of(r.rhs);
    if (!l || !rr)
      throw std::invalid_argument(
          "rule " + std::to_string(i) +
          " does not embed in a universe of depth " +
          std::to_string(u->depth_bound()));
    ps.emplace_back(*l, *rr);
  }
  return Rel(u, std::move(ps));
}

/// All substitution instances of the rules: the one-step root reduction
/// relation over the universe.
inline Rel ground_instances(const UniverseRef& u) {
  return rel_subst(rules_rel(u), identity(u));
}

/// Substitutive context closure of the rules: the context closure of their
/// ground instances.
inline Rel subst_ctx_closure(const UniverseRef& u) {
  return ctx_closure(ground_instances(u));
}

/// Lifts a relation on variable leaves shapewise: relates terms with the
/// same constructor tree whose variable leaves are pointwise related.
inline Rel shape_lift(const Rel& a_vars) {
  const UniverseRef& u = a_vars.universe();
  for (const auto& [x, y] : a_vars.pairs())
    if (x >= u->var_count() || y >= u->var_count())
      throw std::invalid_argument("shape_lift input relates non-variables");
  detail::PairBits in(a_vars);
  int n = u->size();
  std::vector<signed char> memo(static_cast<std::size_t>(n) * n, -1);
  std::function<bool(int, int)> rec = [&](int x, int y) -> bool {
    signed char& m = memo[static_cast<std::size_t>(x) * n + y];
    if (m >= 0) return m == 1;
    const Term& tx = u->term(x);
    const Term& ty = u->term(y);
    bool r;
    if (tx.is_var() && ty.is_var()) {
      r = in(x, y);
    } else if (!tx.is_var() && !ty.is_var() && tx.symbol() == ty.symbol()) {
      r = true;
      const auto& cx = u->child_ids(x);
      const auto& cy = u->child_ids(y);
      for (std::size_t i = 0; i < cx.size() && r; ++i) r = rec(cx[i], cy[i]);
    } else {
      r = false;
    }
    m = r ? 1 : 0;
    return r;
  };
  std::vector<Rel::Pair> ps;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (rec(x, y)) ps.emplace_back(x, y);
  return Rel(u, std::move(ps));
}

/// Parallel reduction: contracts any set of pairwise disjoint redex
/// instances in one step; the context closure of the ground instances.
inline Rel parallel_rel(const UniverseRef& u) {
  Rel g = ground_instances(u);
  return kleene_lfp(
      [&](const Rel& x) { return join(g, compat_refine(x)); }, u,
      /*spot_check=*/false);
}

/// Full reduction: contracts possibly nested redexes in one step. Computed
/// as the unfolding mu x. (var_diag v node_refine(x)) ; (ground v identity).
inline Rel full_rel(const UniverseRef& u) {
  Rel g = refl_close(ground_instances(u));
  Rel vd = var_diag(u);
  return kleene_lfp(
      [&](const Rel& x) { return compose(join(vd, node_refine(x)), g); }, u,
      /*spot_check=*/false);
}

/// Howe extension of the ground instances: mu x. compat_refine(x) ; (ground
/// v identity). Extensionally equal to full_rel; computed independently so
/// the equality can be cross-checked.
inline Rel howe_rel(const UniverseRef& u) {
  Rel g = refl_close(ground_instances(u));
  return kleene_lfp(
      [&](const Rel& x) { return compose(compat_refine(x), g); }, u,
      /*spot_check=*/false);
}

/// Multi-step reduction mu x. rules[x] v compat_refine(x): rule instances
/// whose substitution parts are themselves already reduced.
inline Rel scc_rel(const UniverseRef& u) {
  Rel rules = rules_rel(u);
  return kleene_lfp(
      [&](const Rel& x) {
        return join(rel_subst(rules, x), compat_refine(x));
      },
      u,
      /*spot_check=*/false);
}

}  // namespace relrew

#endif  // RELREW_OPS_HPP
