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

#ifndef RELREW_REL_HPP
#define RELREW_REL_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <unordered_map>

#include "relrew/term.hpp"

namespace relrew {

/// All well-formed terms over an ESystem up to a depth bound, with stable
/// integer identities. Enumeration order: variables first (declaration
/// order), then nodes layer by layer, each layer sorted by symbol then by
/// child ids. The set is closed under subterms by construction.
class Universe {
 public:
  static constexpr std::size_t kDefaultCap = 20000;

  Universe(ESystem es, int depth, std::size_t cap = kDefaultCap)
      : es_(std::move(es)), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("universe depth must be >= 1");
    // layer 1: variables in declaration order, then constants in symbol order
    for (VarId v = 0; v < es_.vars().size(); ++v) add(Term::var(v), cap);
    for (SymbolId s = 0; s < es_.sig().size(); ++s)
      if (es_.sig().arity(s) == 0) add(Term::node(s, {}), cap);
    std::size_t prev_begin = 0;
    std::size_t prev_end = terms_.size();
    // layer d: nodes of depth exactly d, i.e. with at least one child in
    // layer d-1; per layer, sorted by symbol then child ids
    for (int d = 2; d <= depth; ++d) {
      std::size_t all_end = terms_.size();
      for (SymbolId s = 0; s < es_.sig().size(); ++s) {
        int ar = es_.sig().arity(s);
        if (ar == 0) continue;
        std::vector<int> tuple(ar, 0);
        enumerate_tuples(s, tuple, 0, prev_begin, all_end, cap);
      }
      prev_begin = all_end;
      prev_end = terms_.size();
      if (prev_begin == prev_end) break;  // nothing new can appear deeper
    }
    vars_end_ = es_.vars().size();
    nodes_by_symbol_.resize(es_.sig().size());
    child_ids_.resize(terms_.size());
    for (int id = 0; id < size(); ++id) {
      const Term& t = terms_[id];
      if (t.is_var()) continue;
      nodes_by_symbol_[t.symbol()].push_back(id);
      std::vector<int> key{t.symbol()};
      for (const Term& k : t.children()) {
        int kid = index_.at(k);
        child_ids_[id].push_back(kid);
        key.push_back(kid);
      }
      node_index_.emplace(std::move(key), id);
    }
  }

  const ESystem& es() const { return es_; }
  int depth_bound() const { return depth_; }
  int size() const { return static_cast<int>(terms_.size()); }
  const Term& term(int id) const { return terms_.at(id); }
  const std::vector<Term>& terms() const { return terms_; }

  std::optional<int> id_of(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::string show(int id) const {
    return term_to_string(terms_.at(id), es_.sig(), es_.vars());
  }

  /// Ids of the variable leaves (they occupy the front of the enumeration).
  int var_count() const { return vars_end_; }

  const std::vector<int>& nodes_of(SymbolId s) const {
    return nodes_by_symbol_.at(s);
  }

  /// Child ids of a node term (empty for variables and constants).
  const std::vector<int>& child_ids(int id) const { return child_ids_.at(id); }

  /// Id of the node with the given head and child ids, when it is in the
  /// universe; -1 otherwise. Key layout: [symbol, child ids...].
  int node_id(const std::vector<int>& key) const {
    auto it = node_index_.find(key);
    return it == node_index_.end() ? -1 : it->second;
  }

 private:
  void add(Term t, std::size_t cap) {
    if (terms_.size() >= cap)
      throw std::length_error("universe cardinality cap of " +
                              std::to_string(cap) + " terms exceeded");
    index_.emplace(t, static_cast<int>(terms_.size()));
    terms_.push_back(std::move(t));
  }

  void enumerate_tuples(SymbolId s, std::vector<int>& tuple, std::size_t pos,
                        std::size_t prev_begin, std::size_t all_end,
                        std::size_t cap) {
    if (pos == tuple.size()) {
      bool fresh = false;
      for (int id : tuple)
        if (id >= static_cast<int>(prev_begin)) fresh = true;
      if (!fresh) return;  // depth < d, already present
      std::vector<Term> kids;
      kids.reserve(tuple.size());
      for (int id : tuple) kids.push_back(terms_[id]);
      add(Term::node(s, std::move(kids)), cap);
      return;
    }
    for (std::size_t id = 0; id < all_end; ++id) {
      tuple[pos] = static_cast<int>(id);
      enumerate_tuples(s, tuple, pos + 1, prev_begin, all_end, cap);
    }
  }

  struct IntVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::uint64_t h = 0xcbf29ce484222325ull;
      for (int x : v) h = (h ^ static_cast<std::uint32_t>(x)) * 0x100000001b3ull;
      return static_cast<std::size_t>(h);
    }
  };

  ESystem es_;
  int depth_;
  std::vector<Term> terms_;
  std::map<Term, int> index_;
  int vars_end_ = 0;
  std::vector<std::vector<int>> nodes_by_symbol_;
  std::vector<std::vector<int>> child_ids_;
  std::unordered_map<std::vector<int>, int, IntVecHash> node_index_;
};

using UniverseRef = std::shared_ptr<const Universe>;

inline UniverseRef make_universe(ESystem es, int depth,
                                 std::size_t cap = Universe::kDefaultCap) {
  return std::make_shared<const Universe>(std::move(es), depth, cap);
}

/// A finite binary relation over a Universe. Pairs of term ids, kept sorted
/// and deduplicated; beyond a density threshold a dense bit matrix is kept
/// alongside as an accelerator. Relations over different universes cannot be
/// combined.
class Rel {
 public:
  using Pair = std::pair<int, int>;

  explicit Rel(UniverseRef u) : u_(std::move(u)) {}

  Rel(UniverseRef u, std::vector<Pair> pairs) : u_(std::move(u)) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const Pair& p : pairs)
      if (p.first < 0 || p.first >= u_->size() || p.second < 0 ||
          p.second >= u_->size())
        throw std::out_of_range("relation pair outside universe");
    pairs_ = std::move(pairs);
    refresh_rep();
  }

  const UniverseRef& universe() const { return u_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t count() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool is_dense() const { return dense_; }

  bool contains(int a, int b) const {
    if (dense_) return bit(a, b);
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{a, b});
  }

  /// Successors of a under this relation, in ascending order.
  std::vector<int> successors(int a) const {
    std::vector<int> out;
    auto lo = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{a, -1});
    for (auto it = lo; it != pairs_.end() && it->first == a; ++it)
      out.push_back(it->second);
    return out;
  }

  bool operator==(const Rel& o) const {
    check_same(o);
    return pairs_ == o.pairs_;
  }
  bool operator!=(const Rel& o) const { return !(*this == o); }

  void check_same(const Rel& o) const {
    if (u_.get() != o.u_.get())
      throw std::invalid_argument("relations over different universes");
  }

 private:
  friend Rel compose(const Rel&, const Rel&);
  friend Rel converse(const Rel&);
  friend Rel meet(const Rel&, const Rel&);
  friend Rel join(const Rel&, const Rel&);
  friend bool leq(const Rel&, const Rel&);

  bool bit(int a, int b) const {
    std::size_t i = static_cast<std::size_t>(a) * u_->size() + b;
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }

  void refresh_rep() {
    std::size_t n = static_cast<std::size_t>(u_->size());
    dense_ = n > 0 && pairs_.size() * 8 >= n * n / 8 + 1;
    if (!dense_) {
      bits_.clear();
      return;
    }
    bits_.assign((n * n + 63) / 64, 0);
    for (const Pair& p : pairs_) {
      std::size_t i = static_cast<std::size_t>(p.first) * n + p.second;
      bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  }

  UniverseRef u_;
  std::vector<Pair> pairs_;
  bool dense_ = false;
  std::vector<std::uint64_t> bits_;
};

inline Rel bottom(const UniverseRef& u) { return Rel(u); }

inline Rel identity(const UniverseRef& u) {
  std::vector<Rel::Pair> ps;
  ps.reserve(u->size());
  for (int i = 0; i < u->size(); ++i) ps.emplace_back(i, i);
  return Rel(u, std::move(ps));
}

inline Rel top(const UniverseRef& u) {
  std::vector<Rel::Pair> ps;
  ps.reserve(static_cast<std::size_t>(u->size()) * u->size());
  for (int i = 0; i < u->size(); ++i)
    for (int j = 0; j < u->size(); ++j) ps.emplace_back(i, j);
  return Rel(u, std::move(ps));
}

inline Rel converse(const Rel& a) {
  std::vector<Rel::Pair> ps;
  ps.reserve(a.pairs().size());
  for (const auto& [x, y] : a.pairs()) ps.emplace_back(y, x);
  return Rel(a.universe(), std::move(ps));
}

inline Rel meet(const Rel& a, const Rel& b) {
  a.check_same(b);
  std::vector<Rel::Pair> ps;
  std::set_intersection(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                        b.pairs().end(), std::back_inserter(ps));
  return Rel(a.universe(), std::move(ps));
}

inline Rel join(const Rel& a, const Rel& b) {
  a.check_same(b);
  std::vector<Rel::Pair> ps;
  std::set_union(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                 b.pairs().end(), std::back_inserter(ps));
  return Rel(a.universe(), std::move(ps));
}

inline bool leq(const Rel& a, const Rel& b) {
  a.check_same(b);
  return std::includes(b.pairs().begin(), b.pairs().end(), a.pairs().begin(),
                       a.pairs().end());
}

inline Rel compose(const Rel& a, const Rel& b) {
  a.check_same(b);
  std::size_t n = static_cast<std::size_t>(a.universe()->size());
  std::size_t words = (n + 63) / 64;
  // row-bitset join: rows(result)[x] = union of rows(b)[y] over (x,y) in a
  std::vector<std::uint64_t> brows(n * words, 0);
  for (const auto& [y, z] : b.pairs())
    brows[y * words + (z >> 6)] |= std::uint64_t{1} << (z & 63);
  std::vector<std::uint64_t> rrows(n * words, 0);
  for (const auto& [x, y] : a.pairs())
    for (std::size_t w = 0; w < words; ++w)
      rrows[x * words + w] |= brows[y * words + w];
  std::vector<Rel::Pair> ps;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = rrows[x * words + w];
      while (bits) {
        int z = static_cast<int>((w << 6) + std::countr_zero(bits));
        ps.emplace_back(static_cast<int>(x), z);
        bits &= bits - 1;
      }
    }
  return Rel(a.universe(), std::move(ps));
}

/// First counterexample to an inclusion, if any.
inline std::optional<Rel::Pair> leq_witness(const Rel& a, const Rel& b) {
  a.check_same(b);
  for (const auto& p : a.pairs())
    if (!std::binary_search(b.pairs().begin(), b.pairs().end(), p)) return p;
  return std::nullopt;
}

inline Rel refl_close(const Rel& a) { return join(a, identity(a.universe())); }

/// Least fixed point by Kleene iteration from bottom. The function must be
/// monotone; monotonicity is spot-checked up front (F(bot) <= F(sample)) and
/// any shrink observed mid-iteration aborts. Iteration count is hard-capped
/// at |U|^2 + 1, which a monotone function on this lattice cannot exceed.
inline Rel kleene_lfp(const std::function<Rel(const Rel&)>& f,
                      const UniverseRef& u, bool spot_check = true) {
  Rel x = bottom(u);
  Rel fx = f(x);
  if (spot_check) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    const Rel samples[2] = {identity(u), [&] {
                              std::vector<Rel::Pair> ps;
                              int n = u->size();
                              for (int k = 0; k < n; ++k)
                                ps.emplace_back(
                                    static_cast<int>(rng() % n),
                                    static_cast<int>(rng() % n));
                              return Rel(u, std::move(ps));
                            }()};
    for (const Rel& s : samples) {
      if (auto w = leq_witness(fx, f(s)))
        throw std::logic_error(
            "kleene_lfp: non-monotone function (F(bot) !<= F(sample), lost "
            "pair (" + u->show(w->first) + ", " + u->show(w->second) + "))");
    }
  }
  std::size_t n = static_cast<std::size_t>(u->size());
  std::size_t bound = n * n + 1;
  for (std::size_t i = 0; i <= bound; ++i) {
    if (fx == x) return x;
    if (auto w = leq_witness(x, fx))
      throw std::logic_error(
          "kleene_lfp: iteration shrank, function is not monotone (lost "
          "pair (" + u->show(w->first) + ", " + u->show(w->second) + "))");
    x = fx;
    fx = f(x);
  }
  throw std::logic_error("kleene_lfp: iteration bound |U|^2+1 exceeded");
}

/// Reflexive-transitive closure, as the least fixed point of
/// x -> identity v a;x.
inline Rel rtc(const Rel& a) {
  const UniverseRef& u = a.universe();
  Rel delta = identity(u);
  return kleene_lfp(
      [&](const Rel& x) { return join(delta, compose(a, x)); }, u,
      /*spot_check=*/false);
}

}  // namespace relrew

#endif  // RELREW_REL_HPP
