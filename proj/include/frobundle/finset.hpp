#pragma once

// The ambient cartesian category: finite sets as index ranges 0..n-1 and
// total functions as index tables. Every construction fixes a canonical
// enumeration order so results are reproducible bit for bit.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/error.hpp"

namespace frobundle {

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(Index size) : size_(size) {}

  explicit FinSet(std::vector<std::string> labels) : size_(labels.size()) {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
      throw Error(ErrorKind::InvalidTable, "FinSet labels must be pairwise distinct");
    }
    labels_ = std::move(labels);
  }

  Index size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  Index size_ = 0;
  std::optional<std::vector<std::string>> labels_;
};

class FinFn {
 public:
  FinFn() = default;

  FinFn(FinSet dom, FinSet cod, std::vector<Index> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) {
      throw Error(ErrorKind::InvalidTable,
                  "table length " + std::to_string(table_.size()) + " != domain size " +
                      std::to_string(dom_.size()));
    }
    for (Index i = 0; i < table_.size(); ++i) {
      if (table_[i] >= cod_.size()) {
        throw Error(ErrorKind::InvalidTable,
                    "entry " + std::to_string(i) + " maps outside the codomain", {i});
      }
    }
  }

  static FinFn identity(const FinSet& a) {
    std::vector<Index> t(a.size());
    std::iota(t.begin(), t.end(), Index{0});
    return FinFn(a, a, std::move(t));
  }

  static FinFn constant(const FinSet& dom, const FinSet& cod, Index value) {
    return FinFn(dom, cod, std::vector<Index>(dom.size(), value));
  }

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<Index>& table() const noexcept { return table_; }
  Index operator()(Index i) const { return table_[i]; }

  friend bool operator==(const FinFn&, const FinFn&) = default;

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<Index> table_;
};

/// g after f.
inline FinFn compose(const FinFn& g, const FinFn& f) {
  if (!(f.cod() == g.dom())) {
    throw Error(ErrorKind::CodMismatch, "compose: codomain of the first map is not the domain of the second");
  }
  std::vector<Index> t(f.dom().size());
  for (Index i = 0; i < t.size(); ++i) t[i] = g(f(i));
  return FinFn(f.dom(), g.cod(), std::move(t));
}

inline bool is_surjection(const FinFn& f) {
  std::vector<bool> hit(f.cod().size(), false);
  for (Index v : f.table()) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool is_injection(const FinFn& f) {
  std::vector<bool> hit(f.cod().size(), false);
  for (Index v : f.table()) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

inline bool is_bijection(const FinFn& f) {
  return f.dom().size() == f.cod().size() && is_injection(f);
}

inline FinFn inverse(const FinFn& f) {
  if (!is_bijection(f)) throw Error(ErrorKind::InvalidTable, "inverse of a non-bijection");
  std::vector<Index> t(f.cod().size());
  for (Index i = 0; i < f.dom().size(); ++i) t[f(i)] = i;
  return FinFn(f.cod(), f.dom(), std::move(t));
}

/// Evidence for an isomorphism claim: a pair of mutually inverse maps.
struct IsoCertificate {
  FinFn forward;
  FinFn backward;

  bool valid() const {
    return forward.cod() == backward.dom() && backward.cod() == forward.dom() &&
           compose(backward, forward) == FinFn::identity(forward.dom()) &&
           compose(forward, backward) == FinFn::identity(forward.cod());
  }

  static IsoCertificate make(FinFn forward, FinFn backward) {
    IsoCertificate c{std::move(forward), std::move(backward)};
    if (!c.valid()) throw Error(ErrorKind::InvalidTable, "maps are not mutually inverse");
    return c;
  }

  static IsoCertificate from_bijection(const FinFn& f) { return IsoCertificate{f, inverse(f)}; }

  IsoCertificate inverted() const { return IsoCertificate{backward, forward}; }
};

/// g after f for certificates.
inline IsoCertificate compose(const IsoCertificate& g, const IsoCertificate& f) {
  return IsoCertificate{compose(g.forward, f.forward), compose(f.backward, g.backward)};
}

/// An object Y_f of the slice C/X, stored as its structure map.
class SliceObject {
 public:
  SliceObject() = default;
  explicit SliceObject(FinFn proj) : proj_(std::move(proj)) {}

  const FinSet& total() const noexcept { return proj_.dom(); }
  const FinSet& base() const noexcept { return proj_.cod(); }
  const FinFn& proj() const noexcept { return proj_; }

  friend bool operator==(const SliceObject&, const SliceObject&) = default;

 private:
  FinFn proj_;
};

inline FinSet terminal_set() { return FinSet(1); }

inline FinFn to_terminal(const FinSet& a) { return FinFn::constant(a, terminal_set(), 0); }

struct Product {
  FinSet set;
  FinFn first;
  FinFn second;
  Index right_size = 0;

  Index pair(Index i, Index j) const { return i * right_size + j; }
};

/// Row-major: the pair (i, j) has index i * b.size() + j.
inline Product product(const FinSet& a, const FinSet& b) {
  FinSet p(a.size() * b.size());
  std::vector<Index> t1(p.size()), t2(p.size());
  for (Index i = 0; i < a.size(); ++i) {
    for (Index j = 0; j < b.size(); ++j) {
      t1[i * b.size() + j] = i;
      t2[i * b.size() + j] = j;
    }
  }
  return Product{p, FinFn(p, a, std::move(t1)), FinFn(p, b, std::move(t2)), b.size()};
}

/// Pairing (f, g): Z -> A x B into a row-major product.
inline FinFn pairing(const Product& prod, const FinFn& f, const FinFn& g) {
  if (!(f.dom() == g.dom())) throw Error(ErrorKind::DomMismatch, "pairing: legs have different domains");
  std::vector<Index> t(f.dom().size());
  for (Index z = 0; z < t.size(); ++z) t[z] = prod.pair(f(z), g(z));
  return FinFn(f.dom(), prod.set, std::move(t));
}

/// Pullback of a cospan, carrier { (a, b) | f(a) = g(b) } in lexicographic order.
struct Pullback {
  FinSet set;
  FinFn first;
  FinFn second;
  std::vector<std::pair<Index, Index>> elements;

  /// Index of (a, b), or npos when f(a) != g(b).
  Index find(Index a, Index b) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), std::make_pair(a, b));
    if (it == elements.end() || *it != std::make_pair(a, b)) return npos;
    return static_cast<Index>(it - elements.begin());
  }

  /// The pullback as an object over the common codomain.
  SliceObject over(const FinFn& f) const { return SliceObject(compose(f, first)); }
};

inline Pullback pullback(const FinFn& f, const FinFn& g) {
  if (!(f.cod() == g.cod())) throw Error(ErrorKind::CodMismatch, "pullback: legs have different codomains");
  // Bucket g's domain by image so the scan is linear in the output size.
  std::vector<std::vector<Index>> fiber(g.cod().size());
  for (Index b = 0; b < g.dom().size(); ++b) fiber[g(b)].push_back(b);
  Pullback pb;
  for (Index a = 0; a < f.dom().size(); ++a) {
    for (Index b : fiber[f(a)]) pb.elements.emplace_back(a, b);
  }
  pb.set = FinSet(pb.elements.size());
  std::vector<Index> t1(pb.elements.size()), t2(pb.elements.size());
  for (Index k = 0; k < pb.elements.size(); ++k) {
    t1[k] = pb.elements[k].first;
    t2[k] = pb.elements[k].second;
  }
  pb.first = FinFn(pb.set, f.dom(), std::move(t1));
  pb.second = FinFn(pb.set, g.dom(), std::move(t2));
  return pb;
}

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Index{0}); }

  Index find(Index i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  // The smaller root wins, so every root is the least member of its class.
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Index> parent_;
};

struct Quotient {
  FinSet set;
  FinFn map;
  std::vector<Index> representative;  // least member of each class
};

/// Quotient of `a` by the equivalence generated by `pairs`. Classes are
/// numbered in order of their least representative.
inline Quotient quotient(const FinSet& a, const std::vector<std::pair<Index, Index>>& pairs) {
  DisjointSets ds(a.size());
  for (auto [x, y] : pairs) ds.unite(x, y);
  std::vector<Index> class_of_root(a.size(), npos);
  std::vector<Index> t(a.size());
  std::vector<Index> reps;
  for (Index i = 0; i < a.size(); ++i) {
    Index r = ds.find(i);
    if (class_of_root[r] == npos) {
      class_of_root[r] = reps.size();
      reps.push_back(i);
    }
    t[i] = class_of_root[r];
  }
  FinSet q(reps.size());
  return Quotient{q, FinFn(a, q, std::move(t)), std::move(reps)};
}

inline Quotient coequalizer(const FinFn& f, const FinFn& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw Error(ErrorKind::DomMismatch, "coequalizer: legs are not parallel");
  }
  std::vector<std::pair<Index, Index>> pairs(f.dom().size());
  for (Index x = 0; x < f.dom().size(); ++x) pairs[x] = {f(x), g(x)};
  return quotient(f.cod(), pairs);
}

/// The unique h with h after q = k, or nullopt if k does not coequalize.
inline std::optional<FinFn> factor_through(const Quotient& q, const FinFn& k) {
  if (!(k.dom() == q.map.dom())) throw Error(ErrorKind::DomMismatch, "factor_through: domain mismatch");
  std::vector<Index> t(q.set.size(), npos);
  for (Index x = 0; x < k.dom().size(); ++x) {
    Index c = q.map(x);
    if (t[c] == npos) {
      t[c] = k(x);
    } else if (t[c] != k(x)) {
      return std::nullopt;
    }
  }
  return FinFn(q.set, k.cod(), std::move(t));
}

/// Fibers of f, each listed in increasing order.
inline std::vector<std::vector<Index>> fibers(const FinFn& f) {
  std::vector<std::vector<Index>> out(f.cod().size());
  for (Index i = 0; i < f.dom().size(); ++i) out[f(i)].push_back(i);
  return out;
}

/// Calls visit(table) for every function dom -> cod (odometer order).
template <class Visit>
void for_each_function(Index dom, Index cod, Visit&& visit) {
  if (dom > 0 && cod == 0) return;
  std::vector<Index> t(dom, 0);
  while (true) {
    visit(static_cast<const std::vector<Index>&>(t));
    Index i = 0;
    while (i < dom && ++t[i] == cod) t[i++] = 0;
    if (i == dom) return;
  }
}

/// Every slice over `base` with total size at most `max_total`, one per
/// isomorphism class (nondecreasing structure tables).
inline std::vector<FinFn> slices_up_to_iso(const FinSet& base, Index max_total) {
  std::vector<FinFn> out;
  std::vector<Index> t;
  auto rec = [&](auto& self, Index len, Index lo) -> void {
    if (t.size() == len) {
      out.emplace_back(FinSet(len), base, t);
      return;
    }
    for (Index v = lo; v < base.size(); ++v) {
      t.push_back(v);
      self(self, len, v);
      t.pop_back();
    }
  };
  for (Index len = 0; len <= max_total; ++len) rec(rec, len, 0);
  return out;
}

}  // namespace frobundle
