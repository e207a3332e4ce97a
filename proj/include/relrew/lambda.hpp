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
// Well-scoped de Bruijn lambda terms with beta as the ground rule, plus
// parallel and full reduction enumerators and scope-indexed relation checks.
// Terms are hash-consed in an arena, so term identity is pointer (id)
// identity and alpha-equivalence is syntactic.

#ifndef RELREW_LAMBDA_HPP
#define RELREW_LAMBDA_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace relrew {

using LamRef = std::int32_t;

class LamArena {
 public:
  enum class Tag : std::uint8_t { Var, Lam, App };

  struct Node {
    Tag tag;
    std::int32_t a = 0;  // var index / lam body / app function
    std::int32_t b = 0;  // app argument
    std::int32_t size = 1;
  };

  LamRef var(int idx) {
    if (idx < 0) throw std::invalid_argument("negative de Bruijn index");
    return intern({Tag::Var, idx, 0, 1});
  }
  LamRef lam(LamRef body) {
    return intern({Tag::Lam, body, 0, node(body).size + 1});
  }
  LamRef app(LamRef f, LamRef a) {
    return intern({Tag::App, f, a, node(f).size + node(a).size + 1});
  }

  const Node& node(LamRef t) const { return nodes_.at(t); }
  int size(LamRef t) const { return node(t).size; }

  bool well_scoped(LamRef t, int scope) const {
    const Node& n = node(t);
    switch (n.tag) {
      case Tag::Var: return n.a < scope;
      case Tag::Lam: return well_scoped(n.a, scope + 1);
      case Tag::App: return well_scoped(n.a, scope) && well_scoped(n.b, scope);
    }
    return false;
  }

  /// Add d to every free index >= cutoff.
  LamRef shift(LamRef t, int d, int cutoff = 0) {
    const Node n = node(t);
    switch (n.tag) {
      case Tag::Var:
        return n.a >= cutoff ? var(n.a + d) : t;
      case Tag::Lam:
        return lam(shift(n.a, d, cutoff + 1));
      case Tag::App:
        return app(shift(n.a, d, cutoff), shift(n.b, d, cutoff));
    }
    return t;
  }

  /// Capture-avoiding substitution of index j by arg, with downshift of the
  /// indices above j.
  LamRef subst(LamRef t, int j, LamRef arg) {
    const Node n = node(t);
    switch (n.tag) {
      case Tag::Var:
        if (n.a == j) return shift(arg, j);
        return n.a > j ? var(n.a - 1) : t;
      case Tag::Lam:
        return lam(subst(n.a, j + 1, arg));
      case Tag::App:
        return app(subst(n.a, j, arg), subst(n.b, j, arg));
    }
    return t;
  }

  /// Beta contraction plumbing: body lives at scope n+1, arg at scope n, the
  /// result at scope n.
  LamRef lam_subst(LamRef body, LamRef arg) { return subst(body, 0, arg); }

  /// Applies a context renaming rho : n -> m to the free indices.
  LamRef rename(LamRef t, const std::vector<int>& rho, int depth = 0) {
    const Node n = node(t);
    switch (n.tag) {
      case Tag::Var:
        if (n.a < depth) return t;
        return var(rho.at(n.a - depth) + depth);
      case Tag::Lam:
        return lam(rename(n.a, rho, depth + 1));
      case Tag::App:
        return app(rename(n.a, rho, depth), rename(n.b, rho, depth));
    }
    return t;
  }

  std::string show(LamRef t) const {
    const Node& n = node(t);
    switch (n.tag) {
      case Tag::Var: return std::to_string(n.a);
      case Tag::Lam: return "\\." + show(n.a);
      case Tag::App: {
        const Node& f = node(n.a);
        std::string fs = f.tag == Tag::Lam ? "(" + show(n.a) + ")" : show(n.a);
        const Node& a = node(n.b);
        std::string as = a.tag == Tag::Var ? show(n.b) : "(" + show(n.b) + ")";
        return fs + " " + as;
      }
    }
    return "?";
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Key {
    Tag tag;
    std::int32_t a, b;
    bool operator==(const Key& o) const {
      return tag == o.tag && a == o.a && b == o.b;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = static_cast<std::uint64_t>(k.tag);
      h = h * 0x100000001b3ull ^ static_cast<std::uint32_t>(k.a);
      h = h * 0x100000001b3ull ^ static_cast<std::uint32_t>(k.b);
      return static_cast<std::size_t>(h);
    }
  };

  LamRef intern(Node n) {
    Key k{n.tag, n.a, n.b};
    auto it = index_.find(k);
    if (it != index_.end()) return it->second;
    LamRef id = static_cast<LamRef>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(k, id);
    return id;
  }

  std::vector<Node> nodes_;
  std::unordered_map<Key, LamRef, KeyHash> index_;
};

/// All well-scoped terms at the given scope with node count <= max_size, in
/// deterministic order: by exact size, then variables, abstractions,
/// applications (applications by split point, then function, then argument).
class LamEnumerator {
 public:
  explicit LamEnumerator(LamArena& arena, std::size_t cap = 2000000)
      : arena_(&arena), cap_(cap) {}

  std::vector<LamRef> terms_up_to(int scope, int max_size) {
    std::vector<LamRef> out;
    for (int s = 1; s <= max_size; ++s) {
      const std::vector<LamRef>& layer = exact(scope, s);
      out.insert(out.end(), layer.begin(), layer.end());
      if (out.size() > cap_)
        throw std::length_error("lambda enumeration cap of " +
                                std::to_string(cap_) + " terms exceeded");
    }
    return out;
  }

  const std::vector<LamRef>& exact(int scope, int size) {
    auto key = std::make_pair(scope, size);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<LamRef> out;
    if (size == 1) {
      for (int i = 0; i < scope; ++i) out.push_back(arena_->var(i));
    } else if (size >= 2) {
      for (LamRef b : exact(scope + 1, size - 1))
        out.push_back(arena_->lam(b));
      for (int i = 1; i <= size - 2; ++i)
        for (LamRef f : exact(scope, i))
          for (LamRef a : exact(scope, size - 1 - i))
            out.push_back(arena_->app(f, a));
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  LamArena* arena_;
  std::size_t cap_;
  std::map<std::pair<int, int>, std::vector<LamRef>> memo_;
};

/// Size-indexed counting recursion, independent of the enumerator. Oracle
/// for enumeration cardinalities.
inline long long count_lams(int scope, int size,
                            std::map<std::pair<int, int>, long long>* memo) {
  if (size < 1) return 0;
  auto key = std::make_pair(scope, size);
  auto it = memo->find(key);
  if (it != memo->end()) return it->second;
  long long n = 0;
  if (size == 1) {
    n = scope;
  } else {
    n = count_lams(scope + 1, size - 1, memo);
    for (int i = 1; i <= size - 2; ++i)
      n += count_lams(scope, i, memo) * count_lams(scope, size - 1 - i, memo);
  }
  memo->emplace(key, n);
  return n;
}

namespace detail {

inline void sort_unique(std::vector<LamRef>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Memoizing image enumerators for beta. Parallel reduction contracts any
/// set of pairwise disjoint redexes: at an application either both sides
/// step independently, or the root redex fires with body and argument left
/// untouched. Full reduction contracts the root redex after the sides have
/// stepped, reaching nested redexes in one pass.
class LamReducer {
 public:
  explicit LamReducer(LamArena& arena) : arena_(&arena) {}

  LamArena& arena() { return *arena_; }

  const std::vector<LamRef>& parallel_image(LamRef t) {
    auto it = par_.find(t);
    if (it != par_.end()) return it->second;
    std::vector<LamRef> out;
    const LamArena::Node n = arena_->node(t);
    switch (n.tag) {
      case LamArena::Tag::Var:
        out.push_back(t);
        break;
      case LamArena::Tag::Lam:
        for (LamRef b : parallel_image(n.a)) out.push_back(arena_->lam(b));
        break;
      case LamArena::Tag::App: {
        const std::vector<LamRef>& fs = parallel_image(n.a);
        const std::vector<LamRef>& as = parallel_image(n.b);
        for (LamRef f : fs)
          for (LamRef a : as) out.push_back(arena_->app(f, a));
        if (arena_->node(n.a).tag == LamArena::Tag::Lam)
          out.push_back(arena_->lam_subst(arena_->node(n.a).a, n.b));
        break;
      }
    }
    detail::sort_unique(out);
    return par_.emplace(t, std::move(out)).first->second;
  }

  const std::vector<LamRef>& full_image(LamRef t) {
    auto it = full_.find(t);
    if (it != full_.end()) return it->second;
    std::vector<LamRef> out;
    const LamArena::Node n = arena_->node(t);
    switch (n.tag) {
      case LamArena::Tag::Var:
        out.push_back(t);
        break;
      case LamArena::Tag::Lam:
        for (LamRef b : full_image(n.a)) out.push_back(arena_->lam(b));
        break;
      case LamArena::Tag::App: {
        const std::vector<LamRef>& fs = full_image(n.a);
        const std::vector<LamRef>& as = full_image(n.b);
        for (LamRef f : fs)
          for (LamRef a : as) {
            out.push_back(arena_->app(f, a));
            if (arena_->node(f).tag == LamArena::Tag::Lam)
              out.push_back(arena_->lam_subst(arena_->node(f).a, a));
          }
        break;
      }
    }
    detail::sort_unique(out);
    return full_.emplace(t, std::move(out)).first->second;
  }

  /// Normal-order normal form with a step budget; absent when the budget is
  /// exhausted (the term may be diverging).
  std::optional<LamRef> normalize(LamRef t, int fuel = 10000) {
    for (int i = 0; i < fuel; ++i) {
      std::optional<LamRef> s = step(t);
      if (!s) return t;
      t = *s;
    }
    return std::nullopt;
  }

  bool beta_convertible(LamRef a, LamRef b, int fuel = 10000) {
    std::optional<LamRef> na = normalize(a, fuel);
    std::optional<LamRef> nb = normalize(b, fuel);
    return na && nb && *na == *nb;
  }

 private:
  std::optional<LamRef> step(LamRef t) {
    const LamArena::Node n = arena_->node(t);
    switch (n.tag) {
      case LamArena::Tag::Var:
        return std::nullopt;
      case LamArena::Tag::Lam:
        if (auto b = step(n.a)) return arena_->lam(*b);
        return std::nullopt;
      case LamArena::Tag::App: {
        if (arena_->node(n.a).tag == LamArena::Tag::Lam)
          return arena_->lam_subst(arena_->node(n.a).a, n.b);
        if (auto f = step(n.a)) return arena_->app(*f, n.b);
        if (auto a = step(n.b)) return arena_->app(n.a, *a);
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  LamArena* arena_;
  std::unordered_map<LamRef, std::vector<LamRef>> par_;
  std::unordered_map<LamRef, std::vector<LamRef>> full_;
};

/// A scope-indexed family of term relations.
struct ScopedRel {
  std::map<int, std::vector<std::pair<LamRef, LamRef>>> family;
};

/// Builds the scope-indexed relation of an image enumerator over all terms
/// in range.
template <class ImageFn>
ScopedRel scoped_rel_of_image(LamArena& arena, const ImageFn& image,
                              int max_scope, int max_size) {
  ScopedRel r;
  LamEnumerator en(arena);
  for (int n = 0; n <= max_scope; ++n)
    for (LamRef t : en.terms_up_to(n, max_size))
      for (LamRef s : image(t)) r.family[n].emplace_back(t, s);
  return r;
}

struct RenamingWitness {
  int scope_from = 0;
  int scope_to = 0;
  LamRef term = 0;
  std::vector<int> renaming;
  std::string detail;
};

struct RenamingReport {
  bool pass = true;
  int checked = 0;
  std::vector<RenamingWitness> failures;
};

/// Verifies that an image enumerator commutes with context renamings:
/// image(t rho) = (image(t)) rho for every sampled renaming rho : n -> m and
/// every term in range. Weakening is the special case of injective rho into
/// a larger scope.
template <class ImageFn>
RenamingReport renaming_closure_check(LamArena& arena, const ImageFn& image,
                                      int max_scope, int max_size) {
  RenamingReport report;
  LamEnumerator en(arena);
  for (int n = 0; n <= max_scope; ++n) {
    // all renamings n -> m for m <= max_scope + 1 (identity, swaps,
    // weakenings, merges: everything at these sizes)
    std::vector<std::pair<int, std::vector<int>>> renamings;
    for (int m = 1; m <= max_scope + 1; ++m) {
      std::vector<int> rho(n, 0);
      std::function<void(int)> gen = [&](int i) {
        if (i == n) {
          renamings.emplace_back(m, rho);
          return;
        }
        for (int v = 0; v < m; ++v) {
          rho[i] = v;
          gen(i + 1);
        }
      };
      gen(0);
    }
    for (LamRef t : en.terms_up_to(n, max_size)) {
      for (const auto& [m, rho] : renamings) {
        LamRef tr = arena.rename(t, rho);
        std::vector<LamRef> lhs = image(tr);
        std::vector<LamRef> rhs;
        for (LamRef s : image(t)) rhs.push_back(arena.rename(s, rho));
        detail::sort_unique(rhs);
        ++report.checked;
        if (lhs != rhs) {
          report.pass = false;
          report.failures.push_back(
              {n, m, t, rho,
               "image(t rho) != image(t) rho for t = " + arena.show(t)});
          if (report.failures.size() >= 5) return report;
        }
      }
    }
  }
  return report;
}

/// Parses the CLI lambda syntax: `\.` for abstraction, juxtaposition for
/// application, natural numbers for de Bruijn indices.
inline LamRef parse_lambda(LamArena& arena, const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  std::function<LamRef()> term;
  std::function<std::optional<LamRef>()> atom = [&]() -> std::optional<LamRef> {
    skip();
    if (pos >= text.size()) return std::nullopt;
    if (text[pos] == '(') {
      ++pos;
      LamRef t = term();
      skip();
      if (pos >= text.size() || text[pos] != ')')
        throw std::invalid_argument("lambda parse error: expected ')'");
      ++pos;
      return t;
    }
    if (text[pos] == '\\') {
      ++pos;
      if (pos >= text.size() || text[pos] != '.')
        throw std::invalid_argument("lambda parse error: expected '.'");
      ++pos;
      return arena.lam(term());
    }
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int v = 0;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      return arena.var(v);
    }
    return std::nullopt;
  };
  term = [&]() -> LamRef {
    std::optional<LamRef> head = atom();
    if (!head) throw std::invalid_argument("lambda parse error: empty term");
    while (std::optional<LamRef> next = atom())
      head = arena.app(*head, *next);
    return *head;
  };
  LamRef t = term();
  skip();
  if (pos != text.size())
    throw std::invalid_argument("lambda parse error: trailing input at byte " +
                                std::to_string(pos));
  return t;
}

}  // namespace relrew

#endif  // RELREW_LAMBDA_HPP
