#pragma once

// Internal groups and groupoids in finite sets and their categories of
// actions. A group is handled as a one-object groupoid everywhere below, so
// there is a single action representation.
//
// Direction convention: an arrow g goes from src(g) to tgt(g); comp(g2, g1)
// is g2 after g1 and is defined iff src(g2) == tgt(g1). An arrow acts on an
// element a iff src(g) == anchor(a), and anchor(g . a) == tgt(g).

#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/category.hpp"
#include "frobundle/finset.hpp"

namespace frobundle {

class FinGroupoid {
 public:
  /// Checks every axiom exhaustively; throws with a witness on failure.
  static FinGroupoid validate(Index objects, Index arrows, std::vector<Index> src, std::vector<Index> tgt,
                              std::vector<Index> ident, std::vector<std::vector<Index>> comp,
                              std::vector<Index> inv) {
    FinGroupoid g;
    g.objects_ = objects;
    g.arrows_ = arrows;
    g.src_ = std::move(src);
    g.tgt_ = std::move(tgt);
    g.ident_ = std::move(ident);
    g.inv_ = std::move(inv);
    if (g.src_.size() != arrows || g.tgt_.size() != arrows || g.inv_.size() != arrows ||
        g.ident_.size() != objects || comp.size() != arrows) {
      throw Error(ErrorKind::InvalidTable, "groupoid tables are not well-sized");
    }
    g.comp_.assign(arrows * arrows, npos);
    for (Index a = 0; a < arrows; ++a) {
      if (comp[a].size() != arrows) throw Error(ErrorKind::InvalidTable, "comp row has wrong length", {a});
      if (g.src_[a] >= objects || g.tgt_[a] >= objects || g.inv_[a] >= arrows) {
        throw Error(ErrorKind::InvalidTable, "arrow table entry out of range", {a});
      }
      for (Index b = 0; b < arrows; ++b) {
        if (comp[a][b] != npos && comp[a][b] >= arrows) {
          throw Error(ErrorKind::InvalidTable, "comp entry out of range", {a, b});
        }
        g.comp_[a * arrows + b] = comp[a][b];
      }
    }
    for (Index o = 0; o < objects; ++o) {
      if (g.ident_[o] >= arrows) throw Error(ErrorKind::InvalidTable, "identity out of range", {o});
    }
    g.check_laws();
    return g;
  }

  Index objects() const noexcept { return objects_; }
  Index arrows() const noexcept { return arrows_; }
  Index src(Index a) const { return src_[a]; }
  Index tgt(Index a) const { return tgt_[a]; }
  Index ident(Index o) const { return ident_[o]; }
  Index inv(Index a) const { return inv_[a]; }
  /// a2 after a1, or npos when not composable.
  Index comp(Index a2, Index a1) const { return comp_[a2 * arrows_ + a1]; }
  bool one_object() const noexcept { return objects_ == 1; }

  FinFn src_map() const { return FinFn(FinSet(arrows_), FinSet(objects_), src_); }
  FinFn tgt_map() const { return FinFn(FinSet(arrows_), FinSet(objects_), tgt_); }

  std::vector<std::vector<Index>> comp_rows() const {
    std::vector<std::vector<Index>> rows(arrows_, std::vector<Index>(arrows_));
    for (Index a = 0; a < arrows_; ++a)
      for (Index b = 0; b < arrows_; ++b) rows[a][b] = comp(a, b);
    return rows;
  }
  const std::vector<Index>& src_table() const noexcept { return src_; }
  const std::vector<Index>& tgt_table() const noexcept { return tgt_; }
  const std::vector<Index>& ident_table() const noexcept { return ident_; }
  const std::vector<Index>& inv_table() const noexcept { return inv_; }

  friend bool operator==(const FinGroupoid&, const FinGroupoid&) = default;

 private:
  void check_laws() const {
    for (Index o = 0; o < objects_; ++o) {
      if (src_[ident_[o]] != o || tgt_[ident_[o]] != o) throw Error(ErrorKind::BadIdentity, "identity has wrong ends", {o});
    }
    for (Index a = 0; a < arrows_; ++a) {
      for (Index b = 0; b < arrows_; ++b) {
        bool composable = src_[a] == tgt_[b];
        Index c = comp(a, b);
        if (composable != (c != npos)) {
          throw Error(ErrorKind::BadComposability, "comp defined on a non-composable pair or missing", {a, b});
        }
        if (c != npos && (src_[c] != src_[b] || tgt_[c] != tgt_[a])) {
          throw Error(ErrorKind::BadComposability, "composite has wrong ends", {a, b});
        }
      }
    }
    for (Index a = 0; a < arrows_; ++a) {
      if (comp(ident_[tgt_[a]], a) != a || comp(a, ident_[src_[a]]) != a) {
        throw Error(ErrorKind::BadIdentity, "identity law fails", {a});
      }
    }
    for (Index a = 0; a < arrows_; ++a) {
      Index i = inv_[a];
      if (src_[i] != tgt_[a] || tgt_[i] != src_[a] || comp(i, a) != ident_[src_[a]] ||
          comp(a, i) != ident_[tgt_[a]]) {
        throw Error(ErrorKind::BadInverse, "inverse law fails", {a});
      }
    }
    for (Index a = 0; a < arrows_; ++a)
      for (Index b = 0; b < arrows_; ++b) {
        Index ab = comp(a, b);
        if (ab == npos) continue;
        for (Index c = 0; c < arrows_; ++c) {
          Index bc = comp(b, c);
          if (bc == npos) continue;
          if (comp(ab, c) != comp(a, bc)) throw Error(ErrorKind::NotAssociative, "composition is not associative", {a, b, c});
        }
      }
  }

  Index objects_ = 0;
  Index arrows_ = 0;
  std::vector<Index> src_, tgt_, ident_, inv_;
  std::vector<Index> comp_;
};

class FinGroup {
 public:
  /// Checks unit, inverse and associativity laws in that order.
  static FinGroup validate(Index order, std::vector<std::vector<Index>> mul, Index unit, std::vector<Index> inv) {
    if (order == 0) throw Error(ErrorKind::InvalidTable, "a group needs at least one element");
    if (mul.size() != order || inv.size() != order || unit >= order) {
      throw Error(ErrorKind::InvalidTable, "group tables are not well-sized");
    }
    FinGroup g;
    g.order_ = order;
    g.unit_ = unit;
    g.inv_ = std::move(inv);
    g.mul_.resize(order * order);
    for (Index a = 0; a < order; ++a) {
      if (mul[a].size() != order) throw Error(ErrorKind::InvalidTable, "mul row has wrong length", {a});
      if (g.inv_[a] >= order) throw Error(ErrorKind::InvalidTable, "inverse out of range", {a});
      for (Index b = 0; b < order; ++b) {
        if (mul[a][b] >= order) throw Error(ErrorKind::InvalidTable, "mul entry out of range", {a, b});
        g.mul_[a * order + b] = mul[a][b];
      }
    }
    for (Index a = 0; a < order; ++a) {
      if (g.mul(unit, a) != a || g.mul(a, unit) != a) throw Error(ErrorKind::NoUnit, "unit law fails", {a});
    }
    for (Index a = 0; a < order; ++a) {
      if (g.mul(a, g.inv_[a]) != unit || g.mul(g.inv_[a], a) != unit) {
        throw Error(ErrorKind::NoInverse, "inverse law fails", {a});
      }
    }
    for (Index a = 0; a < order; ++a)
      for (Index b = 0; b < order; ++b)
        for (Index c = 0; c < order; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
            throw Error(ErrorKind::NotAssociative, "multiplication is not associative", {a, b, c});
          }
    return g;
  }

  Index order() const noexcept { return order_; }
  Index unit() const noexcept { return unit_; }
  Index mul(Index a, Index b) const { return mul_[a * order_ + b]; }
  Index inv(Index a) const { return inv_[a]; }
  FinSet carrier() const { return FinSet(order_); }

  std::vector<std::vector<Index>> mul_rows() const {
    std::vector<std::vector<Index>> rows(order_, std::vector<Index>(order_));
    for (Index a = 0; a < order_; ++a)
      for (Index b = 0; b < order_; ++b) rows[a][b] = mul(a, b);
    return rows;
  }
  const std::vector<Index>& inv_table() const noexcept { return inv_; }

  /// The same group as a groupoid with one object.
  FinGroupoid as_groupoid() const {
    return FinGroupoid::validate(1, order_, std::vector<Index>(order_, 0), std::vector<Index>(order_, 0), {unit_},
                                 mul_rows(), inv_);
  }

  friend bool operator==(const FinGroup&, const FinGroup&) = default;

 private:
  Index order_ = 0;
  std::vector<Index> mul_;
  Index unit_ = 0;
  std::vector<Index> inv_;
};

using Algebra = std::shared_ptr<const FinGroupoid>;

inline Algebra make_algebra(FinGroupoid g) { return std::make_shared<const FinGroupoid>(std::move(g)); }
inline Algebra make_algebra(const FinGroup& g) { return make_algebra(g.as_groupoid()); }

inline bool same_algebra(const Algebra& a, const Algebra& b) { return a == b || (a && b && *a == *b); }

/// Cyclic group Z/n with the usual tables.
inline FinGroup cyclic_group(Index n) {
  std::vector<std::vector<Index>> mul(n, std::vector<Index>(n));
  std::vector<Index> inv(n);
  for (Index a = 0; a < n; ++a) {
    inv[a] = (n - a) % n;
    for (Index b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  }
  return FinGroup::validate(n, std::move(mul), 0, std::move(inv));
}

/// Discrete groupoid on n objects: identities only.
inline FinGroupoid discrete_groupoid(Index n) {
  std::vector<Index> ids(n);
  std::iota(ids.begin(), ids.end(), Index{0});
  std::vector<std::vector<Index>> comp(n, std::vector<Index>(n, npos));
  for (Index i = 0; i < n; ++i) comp[i][i] = i;
  return FinGroupoid::validate(n, n, ids, ids, ids, std::move(comp), ids);
}

/// Codiscrete (pair) groupoid on n objects: one arrow i -> j for every pair,
/// the arrow (i -> j) has index j * n + i.
inline FinGroupoid codiscrete_groupoid(Index n) {
  Index m = n * n;
  std::vector<Index> src(m), tgt(m), inv(m), ident(n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      src[j * n + i] = i;
      tgt[j * n + i] = j;
      inv[j * n + i] = i * n + j;
    }
  for (Index o = 0; o < n; ++o) ident[o] = o * n + o;
  std::vector<std::vector<Index>> comp(m, std::vector<Index>(m, npos));
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      if (src[a] == tgt[b]) comp[a][b] = tgt[a] * n + src[b];
  return FinGroupoid::validate(n, m, src, tgt, ident, std::move(comp), inv);
}

/// An object of [G, C]: a carrier with an anchor to the objects of the
/// algebra and a partial action table indexed by (arrow, element).
class ActionObject {
 public:
  ActionObject() = default;

  static ActionObject validate(Algebra alg, FinSet carrier, FinFn anchor, std::vector<Index> act) {
    ActionObject a = unchecked(std::move(alg), std::move(carrier), std::move(anchor), std::move(act));
    a.check_laws();
    return a;
  }

  static ActionObject unchecked(Algebra alg, FinSet carrier, FinFn anchor, std::vector<Index> act) {
    if (!alg) throw Error(ErrorKind::AlgebraMismatch, "action without an algebra");
    if (!(anchor.dom() == carrier) || anchor.cod().size() != alg->objects()) {
      throw Error(ErrorKind::AnchorMismatch, "anchor map has the wrong ends");
    }
    if (act.size() != alg->arrows() * carrier.size()) {
      throw Error(ErrorKind::InvalidTable, "action table is not well-sized");
    }
    ActionObject a;
    a.alg_ = std::move(alg);
    a.carrier_ = std::move(carrier);
    a.anchor_ = std::move(anchor);
    a.act_ = std::move(act);
    return a;
  }

  const Algebra& algebra() const noexcept { return alg_; }
  const FinSet& carrier() const noexcept { return carrier_; }
  Index size() const noexcept { return carrier_.size(); }
  const FinFn& anchor() const noexcept { return anchor_; }
  /// g . x, or npos when src(g) != anchor(x).
  Index act(Index g, Index x) const { return act_[g * carrier_.size() + x]; }
  const std::vector<Index>& act_table() const noexcept { return act_; }

  friend bool operator==(const ActionObject& a, const ActionObject& b) {
    return same_algebra(a.alg_, b.alg_) && a.carrier_ == b.carrier_ && a.anchor_ == b.anchor_ && a.act_ == b.act_;
  }

 private:
  void check_laws() const {
    const FinGroupoid& g = *alg_;
    const Index n = carrier_.size();
    for (Index a = 0; a < g.arrows(); ++a) {
      for (Index x = 0; x < n; ++x) {
        Index y = act(a, x);
        bool defined = g.src(a) == anchor_(x);
        if (defined != (y != npos)) throw Error(ErrorKind::AnchorMismatch, "action defined off its anchor", {a, x});
        if (y == npos) continue;
        if (y >= n) throw Error(ErrorKind::InvalidTable, "action entry out of range", {a, x});
        if (anchor_(y) != g.tgt(a)) throw Error(ErrorKind::AnchorMismatch, "action does not move the anchor to the target", {a, x});
      }
    }
    for (Index x = 0; x < n; ++x) {
      if (act(g.ident(anchor_(x)), x) != x) throw Error(ErrorKind::UnitLawFail, "identity does not act trivially", {x});
    }
    for (Index a = 0; a < g.arrows(); ++a)
      for (Index b = 0; b < g.arrows(); ++b) {
        Index ab = g.comp(a, b);
        if (ab == npos) continue;
        for (Index x = 0; x < n; ++x) {
          if (g.src(b) != anchor_(x)) continue;
          if (act(ab, x) != act(a, act(b, x))) throw Error(ErrorKind::AssocLawFail, "action is not associative", {a, b, x});
        }
      }
  }

  Algebra alg_;
  FinSet carrier_;
  FinFn anchor_;
  std::vector<Index> act_;
};

/// Group convenience: act[g][x] = g . x.
inline ActionObject validate_action(const Algebra& alg, const FinSet& carrier, const std::vector<std::vector<Index>>& act,
                                    std::optional<FinFn> anchor = std::nullopt) {
  if (!anchor) {
    if (alg->objects() != 1) throw Error(ErrorKind::AnchorMismatch, "groupoid actions need an anchor");
    anchor = FinFn::constant(carrier, FinSet(1), 0);
  }
  if (act.size() != alg->arrows()) throw Error(ErrorKind::InvalidTable, "action table is not well-sized");
  std::vector<Index> flat;
  flat.reserve(alg->arrows() * carrier.size());
  for (const auto& row : act) {
    if (row.size() != carrier.size()) throw Error(ErrorKind::InvalidTable, "action row has wrong length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ActionObject::validate(alg, carrier, std::move(*anchor), std::move(flat));
}

/// A morphism of [G, C].
struct EquivariantMap {
  ActionObject dom;
  ActionObject cod;
  FinFn map;
};

inline std::optional<std::vector<Index>> equivariance_violation(const ActionObject& a, const ActionObject& b,
                                                               const FinFn& f) {
  const FinGroupoid& g = *a.algebra();
  for (Index x = 0; x < a.size(); ++x) {
    if (b.anchor()(f(x)) != a.anchor()(x)) return std::vector<Index>{x};
  }
  for (Index arrow = 0; arrow < g.arrows(); ++arrow)
    for (Index x = 0; x < a.size(); ++x) {
      Index y = a.act(arrow, x);
      if (y == npos) continue;
      if (f(y) != b.act(arrow, f(x))) return std::vector<Index>{arrow, x};
    }
  return std::nullopt;
}

inline EquivariantMap make_equivariant(const ActionObject& a, const ActionObject& b, FinFn f) {
  if (!same_algebra(a.algebra(), b.algebra())) throw Error(ErrorKind::AlgebraMismatch, "maps between actions of different algebras");
  if (!(f.dom() == a.carrier()) || !(f.cod() == b.carrier())) throw Error(ErrorKind::CodMismatch, "map has the wrong ends");
  if (auto w = equivariance_violation(a, b, f)) throw Error(ErrorKind::NotEquivariant, "map does not commute with the actions", *w);
  return EquivariantMap{a, b, std::move(f)};
}

/// The functor G*: X goes to G0 x X with anchor pi1 and g . (src g, x) = (tgt g, x).
inline ActionObject trivial_action(const Algebra& alg, const FinSet& x) {
  const FinGroupoid& g = *alg;
  const Index n = x.size();
  FinSet carrier(g.objects() * n);
  std::vector<Index> anchor(carrier.size());
  for (Index o = 0; o < g.objects(); ++o)
    for (Index i = 0; i < n; ++i) anchor[o * n + i] = o;
  std::vector<Index> act(g.arrows() * carrier.size(), npos);
  for (Index a = 0; a < g.arrows(); ++a)
    for (Index i = 0; i < n; ++i) act[a * carrier.size() + g.src(a) * n + i] = g.tgt(a) * n + i;
  return ActionObject::unchecked(alg, carrier, FinFn(carrier, FinSet(g.objects()), std::move(anchor)), std::move(act));
}

inline EquivariantMap trivial_action_map(const Algebra& alg, const FinFn& f) {
  ActionObject a = trivial_action(alg, f.dom());
  ActionObject b = trivial_action(alg, f.cod());
  const Index n = f.dom().size(), m = f.cod().size();
  std::vector<Index> t(a.size());
  for (Index o = 0; o < alg->objects(); ++o)
    for (Index i = 0; i < n; ++i) t[o * n + i] = o * m + f(i);
  FinFn map(a.carrier(), b.carrier(), std::move(t));
  return EquivariantMap{std::move(a), std::move(b), std::move(map)};
}

/// The regular action: G acting on itself by multiplication; for a groupoid,
/// arrows anchored at their target acting by postcomposition.
inline ActionObject self_action(const Algebra& alg) {
  const FinGroupoid& g = *alg;
  FinSet carrier(g.arrows());
  std::vector<Index> act(g.arrows() * g.arrows());
  for (Index a = 0; a < g.arrows(); ++a)
    for (Index b = 0; b < g.arrows(); ++b) act[a * g.arrows() + b] = g.comp(a, b);
  return ActionObject::unchecked(alg, carrier, g.tgt_map(), std::move(act));
}

/// Sigma_G: the coequalizer of pi2 and the action on G1 x_G0 A.
inline Quotient sigma(const ActionObject& a) {
  Pullback acting = pullback(a.algebra()->src_map(), a.anchor());
  std::vector<Index> moved(acting.set.size());
  for (Index k = 0; k < moved.size(); ++k) moved[k] = a.act(acting.elements[k].first, acting.elements[k].second);
  return coequalizer(acting.second, FinFn(acting.set, a.carrier(), std::move(moved)));
}

/// Sigma on morphisms: the map induced on orbit sets.
inline FinFn sigma_map(const EquivariantMap& m) {
  Quotient qa = sigma(m.dom);
  Quotient qb = sigma(m.cod);
  auto f = factor_through(qa, compose(qb.map, m.map));
  if (!f) throw Error(ErrorKind::NotEquivariant, "map does not respect orbits");
  return *f;
}

struct ActionCone {
  ActionObject apex;
  EquivariantMap first;
  EquivariantMap second;
};

/// Pullback of equivariant maps, computed on carriers with the diagonal action.
inline ActionCone action_pullback(const EquivariantMap& f, const EquivariantMap& g) {
  if (!same_algebra(f.dom.algebra(), g.dom.algebra())) throw Error(ErrorKind::AlgebraMismatch, "pullback across algebras");
  if (!(f.cod == g.cod)) throw Error(ErrorKind::CodMismatch, "pullback legs have different codomains");
  Pullback pb = pullback(f.map, g.map);
  const FinGroupoid& alg = *f.dom.algebra();
  const Index n = pb.set.size();
  std::vector<Index> anchor(n), act(alg.arrows() * n, npos);
  for (Index k = 0; k < n; ++k) {
    auto [x, y] = pb.elements[k];
    anchor[k] = f.dom.anchor()(x);
    for (Index a = 0; a < alg.arrows(); ++a) {
      Index ax = f.dom.act(a, x);
      if (ax == npos) continue;
      act[a * n + k] = pb.find(ax, g.dom.act(a, y));
    }
  }
  ActionObject apex = ActionObject::unchecked(f.dom.algebra(), pb.set, FinFn(pb.set, FinSet(alg.objects()), std::move(anchor)),
                                              std::move(act));
  return ActionCone{apex, EquivariantMap{apex, f.dom, pb.first}, EquivariantMap{apex, g.dom, pb.second}};
}

/// Product in [G, C]: for a groupoid the carrier is fibred over G0.
inline ActionCone action_product(const ActionObject& a, const ActionObject& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw Error(ErrorKind::AlgebraMismatch, "product across algebras");
  ActionObject t = trivial_action(a.algebra(), FinSet(1));
  return action_pullback(EquivariantMap{a, t, a.anchor()}, EquivariantMap{b, t, b.anchor()});
}

/// Disjoint union, a's elements first.
inline ActionObject coproduct(const ActionObject& a, const ActionObject& b) {
  const FinGroupoid& g = *a.algebra();
  const Index n = a.size() + b.size();
  std::vector<Index> anchor(n), act(g.arrows() * n, npos);
  for (Index x = 0; x < a.size(); ++x) anchor[x] = a.anchor()(x);
  for (Index y = 0; y < b.size(); ++y) anchor[a.size() + y] = b.anchor()(y);
  for (Index arrow = 0; arrow < g.arrows(); ++arrow) {
    for (Index x = 0; x < a.size(); ++x) act[arrow * n + x] = a.act(arrow, x);
    for (Index y = 0; y < b.size(); ++y) {
      Index v = b.act(arrow, y);
      act[arrow * n + a.size() + y] = v == npos ? npos : a.size() + v;
    }
  }
  return ActionObject::unchecked(a.algebra(), FinSet(n), FinFn(FinSet(n), FinSet(g.objects()), std::move(anchor)),
                                 std::move(act));
}

struct UntwistIso {
  ActionObject untwisted;  // (A, pi2) x (G, m)
  ActionObject twisted;    // (A, *) x (G, m)
  EquivariantMap forward;  // (a, g) -> (g . a, g)
  EquivariantMap backward; // (a, g) -> (g^-1 . a, g)
  IsoCertificate certificate;
};

/// (A, *) x (G, m) is isomorphic to (A, pi2) x (G, m). Group case only.
inline UntwistIso untwist_iso(const ActionObject& a) {
  const Algebra& alg = a.algebra();
  if (!alg->one_object()) throw Error(ErrorKind::AlgebraMismatch, "untwist_iso is defined for groups");
  const FinGroupoid& g = *alg;
  ActionObject regular = self_action(alg);
  ActionObject a_triv = trivial_action(alg, a.carrier());
  ActionObject untwisted = action_product(a_triv, regular).apex;
  ActionObject twisted = action_product(a, regular).apex;
  const Index n = g.arrows();
  std::vector<Index> fwd(a.size() * n), bwd(a.size() * n);
  for (Index x = 0; x < a.size(); ++x)
    for (Index h = 0; h < n; ++h) {
      fwd[x * n + h] = a.act(h, x) * n + h;
      bwd[x * n + h] = a.act(g.inv(h), x) * n + h;
    }
  FinFn f(untwisted.carrier(), twisted.carrier(), std::move(fwd));
  FinFn b(twisted.carrier(), untwisted.carrier(), std::move(bwd));
  IsoCertificate cert{f, b};
  return UntwistIso{untwisted, twisted, make_equivariant(untwisted, twisted, f), make_equivariant(twisted, untwisted, b),
                    cert};
}

/// Every equivariant map a -> b. Each orbit of a is generated by its least
/// element, so a map is fixed by the images of those generators.
inline std::vector<EquivariantMap> equivariant_maps(const ActionObject& a, const ActionObject& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw Error(ErrorKind::AlgebraMismatch, "maps across algebras");
  const FinGroupoid& g = *a.algebra();
  Quotient orbits = sigma(a);
  // Each orbit as a list of (element, arrow from the generator to the element).
  std::vector<std::vector<std::pair<Index, Index>>> reach(orbits.set.size());
  for (Index c = 0; c < orbits.set.size(); ++c) {
    Index r = orbits.representative[c];
    std::vector<bool> seen(a.size(), false);
    for (Index arrow = 0; arrow < g.arrows(); ++arrow) {
      Index y = a.act(arrow, r);
      if (y == npos || seen[y]) continue;
      seen[y] = true;
      reach[c].emplace_back(y, arrow);
    }
  }
  // Candidate images of each generator.
  std::vector<std::vector<std::vector<Index>>> options(orbits.set.size());
  for (Index c = 0; c < orbits.set.size(); ++c) {
    Index r = orbits.representative[c];
    for (Index target = 0; target < b.size(); ++target) {
      if (b.anchor()(target) != a.anchor()(r)) continue;
      std::vector<Index> img(a.size(), npos);
      bool ok = true;
      for (auto [y, arrow] : reach[c]) img[y] = b.act(arrow, target);
      // Well-defined iff every arrow acting inside the orbit is respected.
      for (auto [y, arrow] : reach[c]) {
        for (Index e = 0; e < g.arrows() && ok; ++e) {
          Index z = a.act(e, y);
          if (z == npos) continue;
          if (img[z] != b.act(e, img[y])) ok = false;
        }
        if (!ok) break;
      }
      if (ok) options[c].push_back(std::move(img));
    }
  }
  std::vector<EquivariantMap> out;
  std::vector<Index> table(a.size(), 0);
  auto rec = [&](auto& self, Index c) -> void {
    if (c == orbits.set.size()) {
      out.push_back(EquivariantMap{a, b, FinFn(a.carrier(), b.carrier(), table)});
      return;
    }
    for (const auto& img : options[c]) {
      for (auto [y, arrow] : reach[c]) table[y] = img[y];
      self(self, c + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// Subsets of the vertex group at `o` closed under composition, as sorted
/// arrow lists.
inline std::vector<std::vector<Index>> vertex_subgroups(const FinGroupoid& g, Index o) {
  std::vector<Index> loops;
  for (Index a = 0; a < g.arrows(); ++a)
    if (g.src(a) == o && g.tgt(a) == o) loops.push_back(a);
  if (loops.size() > 20) throw Error(ErrorKind::FamilyTooLarge, "vertex group too large for subgroup search");
  std::vector<std::vector<Index>> out;
  for (Index mask = 0; mask < (Index{1} << loops.size()); ++mask) {
    std::vector<bool> in(g.arrows(), false);
    std::vector<Index> h;
    for (Index i = 0; i < loops.size(); ++i)
      if (mask & (Index{1} << i)) {
        in[loops[i]] = true;
        h.push_back(loops[i]);
      }
    if (!in[g.ident(o)]) continue;
    bool closed = true;
    for (Index x : h)
      for (Index y : h)
        if (!in[g.comp(x, y)]) closed = false;
    if (closed) out.push_back(std::move(h));
  }
  return out;
}

/// Transitive actions, one per isomorphism class: for each connected
/// component (based at its least object o) and each conjugacy class of
/// subgroups H of Aut(o), the arrows out of o modulo right multiplication by H.
inline std::vector<ActionObject> transitive_actions(const Algebra& alg) {
  const FinGroupoid& g = *alg;
  std::vector<ActionObject> out;
  DisjointSets comps(g.objects());
  for (Index a = 0; a < g.arrows(); ++a) comps.unite(g.src(a), g.tgt(a));
  for (Index o = 0; o < g.objects(); ++o) {
    if (comps.find(o) != o) continue;
    auto subgroups = vertex_subgroups(g, o);
    std::vector<std::vector<Index>> chosen;
    for (auto& h : subgroups) {
      bool conjugate = false;
      for (auto& k : chosen) {
        if (k.size() != h.size()) continue;
        for (Index x = 0; x < g.arrows() && !conjugate; ++x) {
          if (g.src(x) != o || g.tgt(x) != o) continue;
          std::vector<Index> conj;
          for (Index y : h) conj.push_back(g.comp(g.comp(x, y), g.inv(x)));
          std::sort(conj.begin(), conj.end());
          conjugate = conj == k;
        }
        if (conjugate) break;
      }
      if (!conjugate) chosen.push_back(h);
    }
    std::vector<Index> out_arrows;
    for (Index a = 0; a < g.arrows(); ++a)
      if (g.src(a) == o) out_arrows.push_back(a);
    std::vector<Index> pos(g.arrows(), npos);
    for (Index i = 0; i < out_arrows.size(); ++i) pos[out_arrows[i]] = i;
    for (auto& h : chosen) {
      std::vector<std::pair<Index, Index>> rel;
      for (Index a : out_arrows)
        for (Index k : h) rel.emplace_back(pos[a], pos[g.comp(a, k)]);
      Quotient q = quotient(FinSet(out_arrows.size()), rel);
      const Index n = q.set.size();
      std::vector<Index> anchor(n), act(g.arrows() * n, npos);
      for (Index c = 0; c < n; ++c) anchor[c] = g.tgt(out_arrows[q.representative[c]]);
      for (Index d = 0; d < g.arrows(); ++d)
        for (Index c = 0; c < n; ++c) {
          Index rep = out_arrows[q.representative[c]];
          if (g.src(d) != g.tgt(rep)) continue;
          act[d * n + c] = q.map(pos[g.comp(d, rep)]);
        }
      out.push_back(ActionObject::unchecked(alg, q.set, FinFn(q.set, FinSet(g.objects()), std::move(anchor)), std::move(act)));
    }
  }
  return out;
}

/// All actions with carrier at most k up to isomorphism, as disjoint unions
/// of transitive ones in nondecreasing type order. Includes the empty action.
inline std::vector<ActionObject> standard_family(const Algebra& alg, const std::vector<ActionObject>& types, Index k) {
  std::vector<ActionObject> out;
  ActionObject empty = ActionObject::unchecked(alg, FinSet(0), FinFn(FinSet(0), FinSet(alg->objects()), {}), {});
  auto rec = [&](auto& self, const ActionObject& acc, Index from) -> void {
    out.push_back(acc);
    for (Index t = from; t < types.size(); ++t) {
      if (acc.size() + types[t].size() > k) continue;
      self(self, coproduct(acc, types[t]), t);
    }
  };
  rec(rec, empty, 0);
  std::stable_sort(out.begin(), out.end(), [](const ActionObject& a, const ActionObject& b) { return a.size() < b.size(); });
  return out;
}

inline std::vector<ActionObject> standard_family(const Algebra& alg, Index k) {
  return standard_family(alg, transitive_actions(alg), k);
}

/// The category [G, C] of actions of a fixed algebra.
class ActionCat {
 public:
  using Object = ActionObject;
  using Morphism = EquivariantMap;

  explicit ActionCat(Algebra alg)
      : alg_(std::move(alg)), types_(std::make_shared<const std::vector<ActionObject>>(transitive_actions(alg_))) {}

  const Algebra& algebra() const { return alg_; }

  FinSet carrier(const ActionObject& a) const { return a.carrier(); }
  const ActionObject& dom(const EquivariantMap& m) const { return m.dom; }
  const ActionObject& cod(const EquivariantMap& m) const { return m.cod; }
  const FinFn& fn(const EquivariantMap& m) const { return m.map; }

  bool admits(const ActionObject& a, const ActionObject& b, const FinFn& f) const {
    return f.dom() == a.carrier() && f.cod() == b.carrier() && !equivariance_violation(a, b, f);
  }
  EquivariantMap make(const ActionObject& a, const ActionObject& b, const FinFn& f) const { return make_equivariant(a, b, f); }
  EquivariantMap wrap(const ActionObject& a, const ActionObject& b, const FinFn& f) const {
    return EquivariantMap{a, b, FinFn(a.carrier(), b.carrier(), f.table())};
  }

  bool same_object(const ActionObject& a, const ActionObject& b) const { return a == b; }
  ActionObject terminal() const { return trivial_action(alg_, FinSet(1)); }

  Cone<ActionObject, EquivariantMap> product(const ActionObject& a, const ActionObject& b) const {
    auto c = action_product(a, b);
    return {c.apex, c.first, c.second};
  }
  Cone<ActionObject, EquivariantMap> pullback(const EquivariantMap& f, const EquivariantMap& g) const {
    auto c = action_pullback(f, g);
    return {c.apex, c.first, c.second};
  }

  std::vector<EquivariantMap> homs(const ActionObject& a, const ActionObject& b) const { return equivariant_maps(a, b); }

  std::vector<ActionObject> objects(Index k) const { return standard_family(alg_, *types_, k); }

  std::vector<EquivariantMap> slices_over(const ActionObject& b, Index k) const {
    std::vector<EquivariantMap> out;
    for (auto& w : objects(k)) {
      auto maps = equivariant_maps(w, b);
      out.insert(out.end(), maps.begin(), maps.end());
    }
    return out;
  }

 private:
  Algebra alg_;
  std::shared_ptr<const std::vector<ActionObject>> types_;
};

}  // namespace frobundle
