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

#ifndef RELREW_TERM_HPP
#define RELREW_TERM_HPP

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relrew {

using SymbolId = int;
using VarId = int;

/// First-order signature: an ordered list of (symbol, arity) entries.
/// Symbols are pairwise distinct; arities are non-negative.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::pair<std::string, int>> entries)
      : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].second < 0)
        throw std::invalid_argument("signature: negative arity for symbol '" +
                                    entries_[i].first + "'");
      for (std::size_t j = i + 1; j < entries_.size(); ++j)
        if (entries_[i].first == entries_[j].first)
          throw std::invalid_argument("signature: duplicate symbol '" +
                                      entries_[i].first + "'");
    }
  }

  int size() const { return static_cast<int>(entries_.size()); }
  const std::string& name(SymbolId s) const { return entries_.at(s).first; }
  int arity(SymbolId s) const { return entries_.at(s).second; }

  std::optional<SymbolId> find(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].first == name) return static_cast<SymbolId>(i);
    return std::nullopt;
  }

  const std::vector<std::pair<std::string, int>>& entries() const {
    return entries_;
  }

  bool operator==(const Signature& o) const { return entries_ == o.entries_; }

 private:
  std::vector<std::pair<std::string, int>> entries_;
};

/// Declared variables, ordered. Names must be pairwise distinct and disjoint
/// from the signature's symbols.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("varset: duplicate variable '" +
                                      names_[i] + "'");
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(VarId v) const { return names_.at(v); }

  std::optional<VarId> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<VarId>(i);
    return std::nullopt;
  }

  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const VarSet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

/// A first-order term: either a variable leaf or a constructor node.
/// Immutable value type; copies share child vectors. Depth of a leaf
/// (variable or constant) is 1.
class Term {
 public:
  static Term var(VarId v) { return Term(v, true, 1, nullptr); }

  static Term node(SymbolId s, std::vector<Term> kids) {
    int d = 1;
    for (const Term& k : kids) d = std::max(d, k.depth() + 1);
    auto shared = kids.empty()
                      ? nullptr
                      : std::make_shared<const std::vector<Term>>(std::move(kids));
    return Term(s, false, d, std::move(shared));
  }

  bool is_var() const { return is_var_; }
  VarId var_id() const { return head_; }
  SymbolId symbol() const { return head_; }
  int depth() const { return depth_; }

  const std::vector<Term>& children() const {
    static const std::vector<Term> kEmpty;
    return kids_ ? *kids_ : kEmpty;
  }

  bool operator==(const Term& o) const {
    if (is_var_ != o.is_var_ || head_ != o.head_ || depth_ != o.depth_)
      return false;
    const auto& a = children();
    const auto& b = o.children();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }

  // Structural order: variables before nodes, then head, then children.
  bool operator<(const Term& o) const { return cmp(*this, o) < 0; }

  static int cmp(const Term& a, const Term& b) {
    if (a.is_var_ != b.is_var_) return a.is_var_ ? -1 : 1;
    if (a.head_ != b.head_) return a.head_ < b.head_ ? -1 : 1;
    const auto& ka = a.children();
    const auto& kb = b.children();
    if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
    for (std::size_t i = 0; i < ka.size(); ++i)
      if (int c = cmp(ka[i], kb[i])) return c;
    return 0;
  }

 private:
  Term(int head, bool is_var, int depth,
       std::shared_ptr<const std::vector<Term>> kids)
      : head_(head), is_var_(is_var), depth_(depth), kids_(std::move(kids)) {}

  int head_;
  bool is_var_;
  int depth_;
  std::shared_ptr<const std::vector<Term>> kids_;
};

/// Finite substitution: variable id -> term. Application is simultaneous;
/// unbound variables are left in place.
struct Subst {
  std::map<VarId, Term> bind;

  bool operator==(const Subst& o) const { return bind == o.bind; }
};

inline Term apply_subst(const Term& t, const Subst& s) {
  if (t.is_var()) {
    auto it = s.bind.find(t.var_id());
    return it == s.bind.end() ? t : it->second;
  }
  if (t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const Term& k : t.children()) kids.push_back(apply_subst(k, s));
  return Term::node(t.symbol(), std::move(kids));
}

/// Substitution composition: (compose_subst(g, d))(v) = apply_subst(g(v), d)
/// for bound v, and d(v) for v bound only in d.
inline Subst compose_subst(const Subst& g, const Subst& d) {
  Subst out;
  for (const auto& [v, t] : g.bind) out.bind.emplace(v, apply_subst(t, d));
  for (const auto& [v, t] : d.bind) out.bind.emplace(v, t);
  return out;
}

namespace detail {
inline bool match_into(const Term& pattern, const Term& subject, Subst& out) {
  if (pattern.is_var()) {
    auto it = out.bind.find(pattern.var_id());
    if (it == out.bind.end()) {
      out.bind.emplace(pattern.var_id(), subject);
      return true;
    }
    return it->second == subject;
  }
  if (subject.is_var() || pattern.symbol() != subject.symbol()) return false;
  const auto& pk = pattern.children();
  const auto& sk = subject.children();
  for (std::size_t i = 0; i < pk.size(); ++i)
    if (!match_into(pk[i], sk[i], out)) return false;
  return true;
}
}  // namespace detail

/// One-sided matching. When a substitution is returned, its domain is exactly
/// vars(pattern) and apply_subst(pattern, *result) == subject.
inline std::optional<Subst> match_term(const Term& pattern,
                                       const Term& subject) {
  Subst s;
  if (detail::match_into(pattern, subject, s)) return s;
  return std::nullopt;
}

inline void collect_vars(const Term& t, std::set<VarId>& out) {
  if (t.is_var()) {
    out.insert(t.var_id());
    return;
  }
  for (const Term& k : t.children()) collect_vars(k, out);
}

inline std::set<VarId> term_vars(const Term& t) {
  std::set<VarId> out;
  collect_vars(t, out);
  return out;
}

inline bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  for (const Term& k : t.children())
    if (occurs_in(v, k)) return true;
  return false;
}

namespace detail {
inline bool unify_into(Term a, Term b, Subst& s) {
  a = apply_subst(a, s);
  b = apply_subst(b, s);
  if (a.is_var() && b.is_var() && a.var_id() == b.var_id()) return true;
  if (a.is_var() || b.is_var()) {
    if (!a.is_var()) std::swap(a, b);
    if (occurs_in(a.var_id(), b)) return false;
    Subst single;
    single.bind.emplace(a.var_id(), b);
    for (auto& [v, t] : s.bind) t = apply_subst(t, single);
    s.bind.emplace(a.var_id(), b);
    return true;
  }
  if (a.symbol() != b.symbol()) return false;
  const auto& ka = a.children();
  const auto& kb = b.children();
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!unify_into(ka[i], kb[i], s)) return false;
  return true;
}
}  // namespace detail

/// Most general unifier with occurs check, or absent on clash.
inline std::optional<Subst> unify(const Term& t1, const Term& t2) {
  Subst s;
  if (detail::unify_into(t1, t2, s)) return s;
  return std::nullopt;
}

/// Positions address subterms by child-index paths; the empty path is the
/// root. Listed in pre-order.
using Position = std::vector<int>;

inline void collect_positions(const Term& t, Position& here,
                              std::vector<Position>& out) {
  out.push_back(here);
  const auto& kids = t.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    here.push_back(static_cast<int>(i));
    collect_positions(kids[i], here, out);
    here.pop_back();
  }
}

inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position here;
  collect_positions(t, here, out);
  return out;
}

inline std::string position_to_string(const Position& p) {
  if (p.empty()) return "<root>";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= static_cast<int>(cur->children().size()))
      throw std::out_of_range(
          "invalid position: no child at prefix " +
          position_to_string(Position(p.begin(), p.begin() + i + 1)));
    cur = &cur->children()[p[i]];
  }
  return *cur;
}

inline Term replace_at(const Term& t, const Position& p, const Term& s,
                       std::size_t from = 0) {
  if (from == p.size()) return s;
  int i = p[from];
  if (t.is_var() || i < 0 || i >= static_cast<int>(t.children().size()))
    throw std::out_of_range(
        "invalid position: no child at prefix " +
        position_to_string(Position(p.begin(), p.begin() + from + 1)));
  std::vector<Term> kids = t.children();
  kids[i] = replace_at(kids[i], p, s, from + 1);
  return Term::node(t.symbol(), std::move(kids));
}

/// One ground reduction pair. The left-hand side may not be a bare variable,
/// and every right-hand-side variable must occur on the left; both are
/// validated by ESystem.
struct Rule {
  Term lhs;
  Term rhs;
};

inline bool well_formed(const Term& t, const Signature& sig,
                        const VarSet& vars) {
  if (t.is_var()) return t.var_id() >= 0 && t.var_id() < vars.size();
  if (t.symbol() < 0 || t.symbol() >= sig.size()) return false;
  if (static_cast<int>(t.children().size()) != sig.arity(t.symbol()))
    return false;
  for (const Term& k : t.children())
    if (!well_formed(k, sig, vars)) return false;
  return true;
}

/// An expression system: signature, variables, and ground rules.
class ESystem {
 public:
  ESystem(Signature sig, VarSet vars, std::vector<Rule> rules)
      : sig_(std::move(sig)), vars_(std::move(vars)), rules_(std::move(rules)) {
    for (const std::string& v : vars_.names())
      if (sig_.find(v))
        throw std::invalid_argument("variable '" + v +
                                    "' clashes with a signature symbol");
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const Rule& r = rules_[i];
      std::string where = "rule " + std::to_string(i) + ": ";
      if (!well_formed(r.lhs, sig_, vars_) || !well_formed(r.rhs, sig_, vars_))
        throw std::invalid_argument(where + "ill-formed term");
      if (r.lhs.is_var())
        throw std::invalid_argument(where + "lhs is a variable");
      std::set<VarId> lv = term_vars(r.lhs);
      for (VarId v : term_vars(r.rhs))
        if (!lv.count(v))
          throw std::invalid_argument(where + "rhs variable '" +
                                      vars_.name(v) + "' not bound by lhs");
    }
  }

  const Signature& sig() const { return sig_; }
  const VarSet& vars() const { return vars_; }
  const std::vector<Rule>& rules() const { return rules_; }

  int max_rule_depth() const {
    int d = 0;
    for (const Rule& r : rules_)
      d = std::max({d, r.lhs.depth(), r.rhs.depth()});
    return d;
  }

 private:
  Signature sig_;
  VarSet vars_;
  std::vector<Rule> rules_;
};

inline std::string term_to_string(const Term& t, const Signature& sig,
                                  const VarSet& vars) {
  if (t.is_var()) return vars.name(t.var_id());
  std::string s = sig.name(t.symbol());
  if (!t.children().empty()) {
    s += '(';
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i) s += ", ";
      s += term_to_string(t.children()[i], sig, vars);
    }
    s += ')';
  }
  return s;
}

}  // namespace relrew

#endif  // RELREW_TERM_HPP
