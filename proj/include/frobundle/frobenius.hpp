#pragma once

// The correspondence between principal bundles over X and adjunctions
// C/X <-> [G, C] over C: the tensor and evaluation constructions, both
// directions of the correspondence, the sliced and factored forms of an
// adjunction, and the reference presentations used as controls.

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/adjunction.hpp"
#include "frobundle/algebra.hpp"
#include "frobundle/category.hpp"
#include "frobundle/torsor.hpp"

namespace frobundle {

using BundleAdjunction = Adjunction<SetSlice, ActionCat>;

/// P x_X W with the action on the first factor and the anchor of P.
struct LeftValue {
  Pullback pairs;
  ActionObject action;
};

inline LeftValue bundle_left(const TorsorWitness& w, const FinFn& g) {
  if (!(g.cod() == w.bundle.base)) throw Error(ErrorKind::BaseMismatch, "slice object is not over the bundle base");
  const ActionObject& p = w.action();
  const FinGroupoid& alg = *w.algebra();
  Pullback pb = pullback(w.bundle.proj, g);
  const Index n = pb.set.size();
  std::vector<Index> anchor(n), act(alg.arrows() * n, npos);
  for (Index k = 0; k < n; ++k) {
    auto [x, y] = pb.elements[k];
    anchor[k] = p.anchor()(x);
    for (Index a = 0; a < alg.arrows(); ++a) {
      Index ax = p.act(a, x);
      if (ax != npos) act[a * n + k] = pb.find(ax, y);
    }
  }
  ActionObject out = ActionObject::unchecked(w.algebra(), pb.set, FinFn(pb.set, FinSet(alg.objects()), std::move(anchor)),
                                             std::move(act));
  return LeftValue{std::move(pb), std::move(out)};
}

struct TensorResult {
  Pullback pairs;             // P x_G0 A
  Quotient classes;           // pairs -> P (x) A
  FinFn proj;                 // [p (x) a] -> f(p)
  IsoCertificate as_orbits;   // P (x) A = Sigma(P x A)

  const FinSet& carrier() const { return classes.set; }
  Index of(Index p, Index a) const { return classes.map(pairs.find(p, a)); }
};

/// The coequalizer of (g, p, a) -> (g.p, a) and (g, p, a) -> (p, g^-1.a),
/// defined on triples with src g = anchor p and tgt g = anchor a.
inline TensorResult tensor(const TorsorWitness& w, const ActionObject& a) {
  if (!same_algebra(w.algebra(), a.algebra())) throw Error(ErrorKind::AlgebraMismatch, "tensor across algebras");
  const ActionObject& p = w.action();
  const FinGroupoid& g = *w.algebra();
  Pullback pairs = pullback(p.anchor(), a.anchor());
  auto pfib = fibers(p.anchor());
  auto afib = fibers(a.anchor());
  std::vector<Index> moved_left, moved_right;
  for (Index arrow = 0; arrow < g.arrows(); ++arrow)
    for (Index x : pfib[g.src(arrow)])
      for (Index y : afib[g.tgt(arrow)]) {
        moved_left.push_back(pairs.find(p.act(arrow, x), y));
        moved_right.push_back(pairs.find(x, a.act(g.inv(arrow), y)));
      }
  FinSet triples(moved_left.size());
  Quotient q = coequalizer(FinFn(triples, pairs.set, std::move(moved_left)), FinFn(triples, pairs.set, std::move(moved_right)));
  std::vector<Index> down(q.set.size());
  for (Index c = 0; c < q.set.size(); ++c) down[c] = w.bundle.proj(pairs.elements[q.representative[c]].first);
  FinFn proj(q.set, w.bundle.base, std::move(down));

  Quotient orbits = sigma(action_product(p, a).apex);
  if (orbits.map.dom().size() != pairs.set.size()) throw Error(ErrorKind::InternalLaw, "product carrier differs from the anchored pairs");
  std::vector<Index> to(q.set.size());
  for (Index c = 0; c < q.set.size(); ++c) to[c] = orbits.map(q.representative[c]);
  FinFn forward(q.set, orbits.set, std::move(to));
  if (!is_bijection(forward) || !(compose(forward, q.map) == orbits.map)) {
    throw Error(ErrorKind::InternalLaw, "tensor does not match the orbit set of the product");
  }
  return TensorResult{std::move(pairs), std::move(q), std::move(proj), IsoCertificate::from_bijection(forward)};
}

/// P (x) (G, m) = P by [p (x) g] -> g^-1 . p, checked bijective and over X.
inline IsoCertificate tensor_regular_iso(const TorsorWitness& w) {
  const FinGroupoid& g = *w.algebra();
  TensorResult t = tensor(w, self_action(w.algebra()));
  std::vector<Index> table(t.carrier().size());
  for (Index e = 0; e < t.pairs.set.size(); ++e) {
    auto [p, h] = t.pairs.elements[e];
    Index v = w.action().act(g.inv(h), p);
    Index c = t.classes.map(e);
    if (e == t.classes.representative[c]) {
      table[c] = v;
    } else if (table[c] != v) {
      throw Error(ErrorKind::InternalLaw, "regular comparison depends on the representative", {p, h});
    }
  }
  FinFn forward(t.carrier(), w.action().carrier(), std::move(table));
  if (!is_bijection(forward) || !(compose(w.bundle.proj, forward) == t.proj)) {
    throw Error(ErrorKind::InternalLaw, "P (x) G is not P over X");
  }
  return IsoCertificate::from_bijection(forward);
}

/// P (x) G*Y = X x Y by [p (x) (o, y)] -> (f p, y), checked bijective and over X.
inline IsoCertificate tensor_trivial_iso(const TorsorWitness& w, const FinSet& y) {
  ActionObject ty = trivial_action(w.algebra(), y);
  TensorResult t = tensor(w, ty);
  Product xy = product(w.bundle.base, y);
  std::vector<Index> table(t.carrier().size());
  for (Index e = 0; e < t.pairs.set.size(); ++e) {
    auto [p, oy] = t.pairs.elements[e];
    Index v = xy.pair(w.bundle.proj(p), oy % y.size());
    Index c = t.classes.map(e);
    if (e == t.classes.representative[c]) {
      table[c] = v;
    } else if (table[c] != v) {
      throw Error(ErrorKind::InternalLaw, "trivial comparison depends on the representative", {p, oy});
    }
  }
  FinFn forward(t.carrier(), xy.set, std::move(table));
  if (!is_bijection(forward) || !(compose(xy.first, forward) == t.proj)) {
    throw Error(ErrorKind::InternalLaw, "P (x) G*Y is not X x Y over X");
  }
  return IsoCertificate::from_bijection(forward);
}

/// ev(p', [p (x) a]) = psi(p', p) . a on P x_X (P (x) A). Every
/// representative of every class is evaluated; disagreement throws InternalLaw.
inline EquivariantMap evaluation(const TorsorWitness& w, const ActionObject& a, const TensorResult& t) {
  LeftValue lra = bundle_left(w, t.proj);
  const FinFn& proj = w.bundle.proj;
  std::vector<Index> table(lra.pairs.set.size(), npos);
  auto pfib = fibers(proj);
  for (Index e = 0; e < t.pairs.set.size(); ++e) {
    auto [p, y] = t.pairs.elements[e];
    Index c = t.classes.map(e);
    for (Index p2 : pfib[proj(p)]) {
      Index v = a.act(w.psi(p2, p), y);
      Index k = lra.pairs.find(p2, c);
      if (table[k] == npos) {
        table[k] = v;
      } else if (table[k] != v) {
        throw Error(ErrorKind::InternalLaw, "evaluation depends on the representative", {p2, c});
      }
    }
  }
  return make_equivariant(lra.action, a, FinFn(lra.pairs.set, a.carrier(), std::move(table)));
}

inline EquivariantMap evaluation(const TorsorWitness& w, const ActionObject& a) { return evaluation(w, a, tensor(w, a)); }

/// Sends f: W -> P (x) A over X to the equivariant map L W -> A,
/// (p, y) -> ev(p, f(y)).
inline EquivariantMap transpose_down(const TorsorWitness& w, const ActionObject& a, const FinFn& over, const FinFn& f) {
  TensorResult t = tensor(w, a);
  if (!(f.cod() == t.carrier()) || !(f.dom() == over.dom())) throw Error(ErrorKind::CodMismatch, "map does not land in the tensor");
  if (!(compose(t.proj, f) == over)) throw Error(ErrorKind::BaseMismatch, "map is not over the base");
  EquivariantMap ev = evaluation(w, a, t);
  LeftValue lw = bundle_left(w, over);
  LeftValue lra = bundle_left(w, t.proj);
  std::vector<Index> table(lw.pairs.set.size());
  for (Index k = 0; k < table.size(); ++k) {
    auto [p, y] = lw.pairs.elements[k];
    table[k] = ev.map(lra.pairs.find(p, f(y)));
  }
  return make_equivariant(lw.action, a, FinFn(lw.pairs.set, a.carrier(), std::move(table)));
}

/// Inverse of transpose_down: y -> [s (x) g(s, y)] for any s over y.
inline FinFn transpose_up(const TorsorWitness& w, const ActionObject& a, const FinFn& over, const FinFn& g) {
  LeftValue lw = bundle_left(w, over);
  if (!(g.dom() == lw.pairs.set) || !(g.cod() == a.carrier())) throw Error(ErrorKind::CodMismatch, "map has the wrong ends");
  if (auto v = equivariance_violation(lw.action, a, g)) throw Error(ErrorKind::NotEquivariant, "map is not equivariant", *v);
  TensorResult t = tensor(w, a);
  std::vector<Index> table(over.dom().size());
  for (Index y = 0; y < table.size(); ++y) {
    Index s = w.section[over(y)];
    table[y] = t.of(s, g(lw.pairs.find(s, y)));
  }
  return FinFn(over.dom(), t.carrier(), std::move(table));
}

/// Over a point: f: Y -> P (x) A against P x Y -> A.
inline EquivariantMap transpose_down(const TorsorWitness& w, const ActionObject& a, const FinFn& f) {
  return transpose_down(w, a, to_terminal(f.dom()), f);
}

/// An adjunction C/X <-> [G, C] together with the isomorphisms
/// Sigma_G(L W) = W that make it an adjunction over C.
struct AdjunctionOverBase {
  BundleAdjunction adj;
  FinSet base;
  std::function<IsoCertificate(const FinFn&)> over_base;
};

/// L W = P x_X W, R A = P (x) A, unit y -> [s (x) (s, y)], counit ev.
inline AdjunctionOverBase bundle_to_adjunction(const TorsorWitness& witness, std::string name = "bundle") {
  using S = SetSlice;
  auto w = std::make_shared<const TorsorWitness>(witness);
  const FinSet& x = w->bundle.base;
  BundleAdjunction adj{std::move(name), slice_of_sets(x), ActionCat(w->algebra())};
  adj.left = [w](const FinFn& g) { return bundle_left(*w, g).action; };
  adj.left_map = [w](const S::Morphism& m) {
    LeftValue from = bundle_left(*w, m.dom);
    LeftValue to = bundle_left(*w, m.cod);
    std::vector<Index> t(from.pairs.set.size());
    for (Index k = 0; k < t.size(); ++k) {
      auto [p, y] = from.pairs.elements[k];
      t[k] = to.pairs.find(p, m.map(y));
    }
    return EquivariantMap{from.action, to.action, FinFn(from.pairs.set, to.pairs.set, std::move(t))};
  };
  adj.right = [w](const ActionObject& a) { return tensor(*w, a).proj; };
  adj.right_map = [w](const EquivariantMap& h) {
    TensorResult from = tensor(*w, h.dom);
    TensorResult to = tensor(*w, h.cod);
    std::vector<Index> t(from.carrier().size());
    for (Index c = 0; c < t.size(); ++c) {
      auto [p, y] = from.pairs.elements[from.classes.representative[c]];
      t[c] = to.of(p, h.map(y));
    }
    return S::Morphism{from.proj, to.proj, FinFn(from.carrier(), to.carrier(), std::move(t))};
  };
  adj.unit = [w](const FinFn& g) {
    LeftValue lw = bundle_left(*w, g);
    TensorResult t = tensor(*w, lw.action);
    std::vector<Index> table(g.dom().size());
    for (Index y = 0; y < table.size(); ++y) {
      Index s = w->section[g(y)];
      table[y] = t.of(s, lw.pairs.find(s, y));
    }
    return S::Morphism{g, t.proj, FinFn(g.dom(), t.carrier(), std::move(table))};
  };
  adj.counit = [w](const ActionObject& a) { return evaluation(*w, a); };
  auto over = [w](const FinFn& g) {
    LeftValue lw = bundle_left(*w, g);
    Quotient q = sigma(lw.action);
    std::vector<Index> t(q.set.size());
    for (Index c = 0; c < t.size(); ++c) t[c] = lw.pairs.elements[q.representative[c]].second;
    FinFn forward(q.set, g.dom(), std::move(t));
    if (!is_bijection(forward)) throw Error(ErrorKind::NotOverBase, "orbits of L W do not match W");
    return IsoCertificate::from_bijection(forward);
  };
  return AdjunctionOverBase{std::move(adj), x, std::move(over)};
}

/// The over-base isomorphisms at each object, and their naturality on the
/// given morphisms.
inline CheckReport check_over_base(const AdjunctionOverBase& ab, const std::vector<FinFn>& ws,
                                   const std::vector<SetSlice::Morphism>& ms) {
  CheckReport r{"over_base:" + ab.adj.name};
  r.bounds = {{"d_objects", ws.size()}, {"d_morphisms", ms.size()}};
  for (Index i = 0; i < ws.size(); ++i) {
    ++r.cases;
    try {
      IsoCertificate c = ab.over_base(ws[i]);
      if (!c.valid() || !(c.forward.dom() == sigma(ab.adj.left(ws[i])).set) || !(c.forward.cod() == ws[i].dom())) {
        r.fail("W#" + std::to_string(i));
      }
    } catch (const Error& e) {
      r.fail("W#" + std::to_string(i) + ": " + e.what());
    }
  }
  for (Index i = 0; i < ms.size(); ++i) {
    ++r.cases;
    try {
      FinFn lhs = compose(ab.over_base(ms[i].cod).forward, sigma_map(ab.adj.left_map(ms[i])));
      FinFn rhs = compose(ms[i].map, ab.over_base(ms[i].dom).forward);
      if (!(lhs == rhs)) r.fail("naturality at morphism #" + std::to_string(i));
    } catch (const Error& e) {
      r.fail("morphism #" + std::to_string(i) + ": " + e.what());
    }
  }
  return r;
}

/// Validates the presentation on the bounded family, then reads off
/// P = L(id_X) with projection Sigma(P) = X.
inline TorsorWitness adjunction_to_bundle(const AdjunctionOverBase& ab, const FrobeniusBounds& bounds = {}) {
  const auto& adj = ab.adj;
  auto as = family(adj.target, bounds.c_carrier);
  auto ws = family(adj.source, bounds.d_carrier);
  auto ms = morphisms_among(adj.source, ws);
  CheckReport ob = check_over_base(ab, ws, ms);
  if (!ob.pass) throw Error(ErrorKind::NotOverBase, ob.witnesses.empty() ? "over-base check failed" : ob.witnesses.front());
  CheckReport tri = check_triangles(adj, as, ws);
  if (!tri.pass) throw Error(ErrorKind::InternalLaw, "triangle identities fail: " + tri.witnesses.front());
  CheckReport fr = check_frobenius(adj, as, ws);
  if (!fr.pass) throw Error(ErrorKind::FrobeniusFail, "Frobenius reciprocity fails at " + fr.witnesses.front());
  FinFn id = FinFn::identity(ab.base);
  ActionObject p = adj.left(id);
  FinFn proj = compose(ab.over_base(id).forward, sigma(p).map);
  return is_principal_bundle(Bundle::make(p, ab.base, proj));
}

/// kappa_W = (L(!_W), Sigma-projection): L W -> P' x_X W, where P' is the
/// bundle read off the presentation. Checks each component is an
/// equivariant bijection and natural on the given morphisms.
inline CheckReport compare_left_adjoints(const AdjunctionOverBase& ab, const TorsorWitness& extracted,
                                         const std::vector<FinFn>& ws, const std::vector<SetSlice::Morphism>& ms) {
  CheckReport r{"left_adjoint_comparison:" + ab.adj.name};
  r.bounds = {{"d_objects", ws.size()}, {"d_morphisms", ms.size()}};
  FinFn id = FinFn::identity(ab.base);
  auto kappa = [&](const FinFn& g) {
    ActionObject lw = ab.adj.left(g);
    FinFn to_p = ab.adj.left_map(SetSlice::Morphism{g, id, g}).map;
    FinFn to_w = compose(ab.over_base(g).forward, sigma(lw).map);
    LeftValue target = bundle_left(extracted, g);
    std::vector<Index> t(lw.size());
    for (Index k = 0; k < t.size(); ++k) t[k] = target.pairs.find(to_p(k), to_w(k));
    return std::make_pair(lw, EquivariantMap{lw, target.action, FinFn(lw.carrier(), target.pairs.set, std::move(t))});
  };
  for (Index i = 0; i < ws.size(); ++i) {
    ++r.cases;
    try {
      auto [lw, k] = kappa(ws[i]);
      if (!is_bijection(k.map) || equivariance_violation(k.dom, k.cod, k.map)) r.fail("component at W#" + std::to_string(i));
    } catch (const Error& e) {
      r.fail("W#" + std::to_string(i) + ": " + e.what());
    }
  }
  for (Index i = 0; i < ms.size(); ++i) {
    ++r.cases;
    const auto& m = ms[i];
    auto k_dom = kappa(m.dom).second;
    auto k_cod = kappa(m.cod).second;
    LeftValue from = bundle_left(extracted, m.dom);
    LeftValue to = bundle_left(extracted, m.cod);
    std::vector<Index> t(from.pairs.set.size());
    for (Index k = 0; k < t.size(); ++k) t[k] = to.pairs.find(from.pairs.elements[k].first, m.map(from.pairs.elements[k].second));
    FinFn l2m(from.pairs.set, to.pairs.set, std::move(t));
    if (!(compose(k_cod.map, ab.adj.left_map(m).map) == compose(l2m, k_dom.map))) r.fail("naturality at morphism #" + std::to_string(i));
  }
  return r;
}

/// A map of bundles over X induces (phi x id): L W -> L' W. Checks that
/// every component is equivariant and natural on the given morphisms.
inline CheckReport induced_transformation(const TorsorWitness& a, const TorsorWitness& b, const FinFn& phi,
                                          const std::vector<FinFn>& ws, const std::vector<SetSlice::Morphism>& ms) {
  CheckReport r{"induced_transformation"};
  r.bounds = {{"d_objects", ws.size()}, {"d_morphisms", ms.size()}};
  auto component = [&](const FinFn& g) {
    LeftValue la = bundle_left(a, g);
    LeftValue lb = bundle_left(b, g);
    std::vector<Index> t(la.pairs.set.size());
    for (Index k = 0; k < t.size(); ++k) t[k] = lb.pairs.find(phi(la.pairs.elements[k].first), la.pairs.elements[k].second);
    return EquivariantMap{la.action, lb.action, FinFn(la.pairs.set, lb.pairs.set, std::move(t))};
  };
  for (Index i = 0; i < ws.size(); ++i) {
    ++r.cases;
    auto c = component(ws[i]);
    if (equivariance_violation(c.dom, c.cod, c.map)) r.fail("component at W#" + std::to_string(i));
  }
  auto la = bundle_to_adjunction(a).adj;
  auto lb = bundle_to_adjunction(b).adj;
  for (Index i = 0; i < ms.size(); ++i) {
    ++r.cases;
    const auto& m = ms[i];
    if (!(compose(component(m.cod).map, la.left_map(m).map) == compose(lb.left_map(m).map, component(m.dom).map))) {
      r.fail("naturality at morphism #" + std::to_string(i));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reference presentations.

/// Sigma_G -| G* : [G, C] <-> C.
inline Adjunction<ActionCat, FinSetCat> sigma_adjunction(const Algebra& alg) {
  Adjunction<ActionCat, FinSetCat> adj{"sigma", ActionCat(alg), FinSetCat{}};
  adj.left = [](const ActionObject& a) { return sigma(a).set; };
  adj.left_map = [](const EquivariantMap& m) { return sigma_map(m); };
  adj.right = [alg](const FinSet& x) { return trivial_action(alg, x); };
  adj.right_map = [alg](const FinFn& f) { return trivial_action_map(alg, f); };
  adj.unit = [alg](const ActionObject& a) {
    Quotient q = sigma(a);
    ActionObject t = trivial_action(alg, q.set);
    std::vector<Index> table(a.size());
    for (Index x = 0; x < a.size(); ++x) table[x] = a.anchor()(x) * q.set.size() + q.map(x);
    return EquivariantMap{a, t, FinFn(a.carrier(), t.carrier(), std::move(table))};
  };
  adj.counit = [alg](const FinSet& x) {
    Quotient q = sigma(trivial_action(alg, x));
    std::vector<Index> table(q.set.size());
    for (Index c = 0; c < table.size(); ++c) table[c] = q.representative[c] % x.size();
    return FinFn(q.set, x, std::move(table));
  };
  return adj;
}

/// G* -| fixed points, over a point. Over C, but not Frobenius unless G is
/// trivial. Group case.
inline AdjunctionOverBase trivial_action_adjunction(const Algebra& alg) {
  if (!alg->one_object()) throw Error(ErrorKind::AlgebraMismatch, "trivial_action_adjunction is defined for groups");
  using S = SetSlice;
  FinSet one = terminal_set();
  BundleAdjunction adj{"trivial_action", slice_of_sets(one), ActionCat(alg)};
  auto fixed = [alg](const ActionObject& a) {
    std::vector<Index> pts;
    for (Index x = 0; x < a.size(); ++x) {
      bool f = true;
      for (Index g = 0; g < alg->arrows() && f; ++g) f = a.act(g, x) == x;
      if (f) pts.push_back(x);
    }
    return pts;
  };
  adj.left = [alg](const FinFn& g) { return trivial_action(alg, g.dom()); };
  adj.left_map = [alg](const S::Morphism& m) { return trivial_action_map(alg, m.map); };
  adj.right = [fixed](const ActionObject& a) { return to_terminal(FinSet(fixed(a).size())); };
  adj.right_map = [fixed](const EquivariantMap& h) {
    auto from = fixed(h.dom);
    auto to = fixed(h.cod);
    std::vector<Index> t(from.size());
    for (Index i = 0; i < t.size(); ++i) t[i] = Index(std::lower_bound(to.begin(), to.end(), h.map(from[i])) - to.begin());
    return S::Morphism{to_terminal(FinSet(from.size())), to_terminal(FinSet(to.size())), FinFn(FinSet(from.size()), FinSet(to.size()), t)};
  };
  adj.unit = [](const FinFn& g) { return S::Morphism{g, g, FinFn::identity(g.dom())}; };
  adj.counit = [alg, fixed](const ActionObject& a) {
    auto pts = fixed(a);
    ActionObject t = trivial_action(alg, FinSet(pts.size()));
    return EquivariantMap{t, a, FinFn(t.carrier(), a.carrier(), pts)};
  };
  auto over = [alg](const FinFn& g) { return IsoCertificate::from_bijection(sigma(trivial_action(alg, g.dom())).map); };
  return AdjunctionOverBase{std::move(adj), one, std::move(over)};
}

/// The same presentation with each counit component followed by the map
/// sending every element to the least element of its orbit. Built
/// unchecked: the result is not an adjunction whenever some orbit is
/// nontrivial, and is used as a negative control.
inline AdjunctionOverBase corrupted_counit(AdjunctionOverBase ab) {
  auto counit = ab.adj.counit;
  ab.adj.name += "/corrupted";
  ab.adj.counit = [counit](const ActionObject& a) {
    EquivariantMap e = counit(a);
    Quotient q = sigma(a);
    std::vector<Index> t(e.map.dom().size());
    for (Index k = 0; k < t.size(); ++k) t[k] = q.representative[q.map(e.map(k))];
    return EquivariantMap{e.dom, a, FinFn(e.map.dom(), a.carrier(), std::move(t))};
  };
  return ab;
}

// ---------------------------------------------------------------------------
// Actions of G x X in C/X against G-sets over (X, pi2).

/// An action of the group bundle G x X -> X on A -> X: act is indexed by
/// the pullback (G x X) x_X A, whose elements are ((g, x), a) in
/// lexicographic order.
struct SlicedAction {
  Algebra algebra;
  FinFn over;
  Pullback acting;
  std::vector<Index> act;

  Index apply(Index g, Index a) const { return act[acting.find(g * over.cod().size() + over(a), a)]; }
};

inline Pullback sliced_acting(const Algebra& alg, const FinFn& over) {
  Product gx = product(FinSet(alg->arrows()), over.cod());
  return pullback(gx.second, over);
}

/// Unit and associativity laws, and preservation of the map to X.
inline void check_sliced_action(const SlicedAction& s) {
  const FinGroupoid& g = *s.algebra;
  const Index n = s.over.dom().size();
  for (Index h = 0; h < g.arrows(); ++h)
    for (Index a = 0; a < n; ++a) {
      Index v = s.apply(h, a);
      if (v >= n || s.over(v) != s.over(a)) throw Error(ErrorKind::NotInvariant, "action leaves the fibre", {h, a});
    }
  for (Index a = 0; a < n; ++a)
    if (s.apply(g.ident(0), a) != a) throw Error(ErrorKind::UnitLawFail, "identity does not act trivially", {a});
  for (Index h = 0; h < g.arrows(); ++h)
    for (Index k = 0; k < g.arrows(); ++k)
      for (Index a = 0; a < n; ++a)
        if (s.apply(g.comp(h, k), a) != s.apply(h, s.apply(k, a))) throw Error(ErrorKind::AssocLawFail, "action is not associative", {h, k, a});
}

/// A G-set over (X, pi2) as a G x X action in C/X.
inline SlicedAction to_sliced(const EquivariantMap& m) {
  const Algebra& alg = m.dom.algebra();
  if (!alg->one_object()) throw Error(ErrorKind::AlgebraMismatch, "sliced translation is defined for groups");
  if (!(m.cod == trivial_action(alg, m.cod.carrier()))) throw Error(ErrorKind::BaseMismatch, "codomain is not a trivial action");
  Pullback acting = sliced_acting(alg, m.map);
  std::vector<Index> act(acting.set.size());
  const Index nx = m.map.cod().size();
  for (Index k = 0; k < act.size(); ++k) {
    auto [gx, a] = acting.elements[k];
    act[k] = m.dom.act(gx / nx, a);
  }
  SlicedAction s{alg, m.map, std::move(acting), std::move(act)};
  check_sliced_action(s);
  return s;
}

inline EquivariantMap from_sliced(const SlicedAction& s) {
  check_sliced_action(s);
  const FinGroupoid& g = *s.algebra;
  const FinSet& carrier = s.over.dom();
  std::vector<Index> act(g.arrows() * carrier.size());
  for (Index h = 0; h < g.arrows(); ++h)
    for (Index a = 0; a < carrier.size(); ++a) act[h * carrier.size() + a] = s.apply(h, a);
  ActionObject dom = ActionObject::validate(s.algebra, carrier, FinFn::constant(carrier, FinSet(1), 0), std::move(act));
  return make_equivariant(dom, trivial_action(s.algebra, s.over.cod()), s.over);
}

/// Principal (G x X)-bundle over the terminal object of C/X: A -> X onto
/// and ((g, x), a) -> (g.a, a) a bijection onto A x_X A.
inline bool is_principal_sliced(const SlicedAction& s) {
  if (!is_surjection(s.over)) return false;
  Pullback kernel = pullback(s.over, s.over);
  if (kernel.set.size() != s.acting.set.size()) return false;
  std::vector<bool> hit(kernel.set.size(), false);
  const Index nx = s.over.cod().size();
  for (Index k = 0; k < s.acting.set.size(); ++k) {
    auto [gx, a] = s.acting.elements[k];
    Index e = kernel.find(s.apply(gx / nx, a), a);
    if (hit[e]) return false;
    hit[e] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sliced and factored forms.

/// G*X, the object of [G, C] sliced over in the factorization.
inline ActionObject anchor_object(const AdjunctionOverBase& ab) { return trivial_action(ab.adj.target.algebra(), ab.base); }

/// rho: L(1_X) -> G*X, (anchor, projection to X).
inline EquivariantMap anchor_map(const AdjunctionOverBase& ab) {
  FinFn id = FinFn::identity(ab.base);
  ActionObject p = ab.adj.left(id);
  FinFn down = compose(ab.over_base(id).forward, sigma(p).map);
  ActionObject b = anchor_object(ab);
  std::vector<Index> t(p.size());
  for (Index k = 0; k < t.size(); ++k) t[k] = p.anchor()(k) * ab.base.size() + down(k);
  return make_equivariant(p, b, FinFn(p.carrier(), b.carrier(), std::move(t)));
}

using SlicedSetSlice = SliceCat<SetSlice>;
using ActionSlice = SliceCat<ActionCat>;

struct SliceFactorization {
  ActionObject over;                  // G*X
  SetSlice::Morphism delta;           // 1_X -> R(G*X) in C/X
  Adjunction<SetSlice, ActionSlice> composite;
};

/// C/X = (C/X)/1_X -> (C/X)/R(G*X) -> [G, C]/G*X: the terminal-slice
/// equivalence, then Sigma along delta = R(rho) eta, then the sliced form
/// of the presentation at G*X.
inline SliceFactorization factor_to_slice(const AdjunctionOverBase& ab) {
  const auto& adj = ab.adj;
  EquivariantMap rho = anchor_map(ab);
  FinFn id = FinFn::identity(ab.base);
  SetSlice::Morphism delta = transpose_up(adj, id, rho);
  auto eq = terminal_slice_equivalence(adj.source);
  auto along = pullback_adjunction(adj.source, delta);
  auto sliced = slice_adjunction(adj, rho.cod);
  auto composite = compose(sliced, compose(along, eq));
  composite.name = "factored:" + adj.name;
  return SliceFactorization{rho.cod, delta, std::move(composite)};
}

/// Recomposes the factorization with Sigma along G*X -> 1 and compares the
/// left adjoint with the original one on the family. The comparison is on
/// the nose: both send W to the same action.
inline CheckReport check_factor_recompose(const AdjunctionOverBase& ab, const SliceFactorization& f, const std::vector<FinFn>& ws) {
  CheckReport r{"factor_recompose:" + ab.adj.name};
  r.bounds = {{"d_objects", ws.size()}};
  const ActionCat& k = ab.adj.target;
  auto down = pullback_adjunction(k, to_terminal(k, f.over));
  for (Index i = 0; i < ws.size(); ++i) {
    ++r.cases;
    auto lw = down.left(f.composite.left(ws[i]));
    if (!(k.dom(lw) == ab.adj.left(ws[i]))) r.fail("left adjoints differ at W#" + std::to_string(i));
  }
  return r;
}

struct AgreementReport {
  CheckReport criterion;  // Frobenius of the sliced form at G*X
  CheckReport full;       // stably Frobenius
  bool agree() const { return criterion.pass == full.pass; }
};

inline AgreementReport corollary_slice_criterion(const AdjunctionOverBase& ab, const FrobeniusBounds& bounds) {
  AgreementReport r{check_frobenius_sliced(ab.adj, anchor_object(ab), bounds), check_stably_frobenius(ab.adj, bounds)};
  r.criterion.check = "slice_criterion:" + ab.adj.name;
  r.criterion.bounds.insert(r.criterion.bounds.begin(),
                            {{"c_carrier", bounds.c_carrier}, {"d_carrier", bounds.d_carrier}});
  return r;
}

// ---------------------------------------------------------------------------
// Discrete groupoids: [S, C] is C/S and bundles are anchors X -> S.

/// The anchor a: X -> S carried by a bundle of a discrete groupoid.
inline FinFn discrete_anchor(const TorsorWitness& w) {
  const FinGroupoid& g = *w.algebra();
  if (g.arrows() != g.objects()) throw Error(ErrorKind::AlgebraMismatch, "groupoid is not discrete");
  std::vector<Index> t(w.bundle.base.size());
  for (Index x = 0; x < t.size(); ++x) t[x] = w.action().anchor()(w.section[x]);
  return FinFn(w.bundle.base, FinSet(g.objects()), std::move(t));
}

/// Compares L -| R of the bundle with Sigma_a -| a* on FinSet slices:
/// L W = P x_X W against (W, a w) by the second projection, and
/// R A = P (x) A against X x_S A by [p (x) y] -> (f p, y).
inline CheckReport compare_with_pullback_adjunction(const TorsorWitness& w, const std::vector<FinFn>& ws,
                                                    const std::vector<ActionObject>& as,
                                                    const std::vector<SetSlice::Morphism>& ms) {
  FinFn a = discrete_anchor(w);
  auto ab = bundle_to_adjunction(w);
  auto pa = pullback_adjunction(FinSetCat{}, a);
  CheckReport r{"discrete_vs_pullback"};
  r.bounds = {{"d_objects", ws.size()}, {"c_objects", as.size()}, {"d_morphisms", ms.size()}};
  for (Index i = 0; i < ws.size(); ++i) {
    ++r.cases;
    LeftValue lw = bundle_left(w, ws[i]);
    FinFn sa = pa.left(ws[i]);
    bool ok = is_bijection(lw.pairs.second);
    for (Index k = 0; ok && k < lw.pairs.set.size(); ++k) ok = lw.action.anchor()(k) == sa(lw.pairs.second(k));
    if (!ok) r.fail("left adjoints differ at W#" + std::to_string(i));
  }
  for (Index i = 0; i < ms.size(); ++i) {
    ++r.cases;
    LeftValue from = bundle_left(w, ms[i].dom);
    LeftValue to = bundle_left(w, ms[i].cod);
    if (!(compose(to.pairs.second, ab.adj.left_map(ms[i]).map) == compose(ms[i].map, from.pairs.second))) {
      r.fail("left comparison not natural at morphism #" + std::to_string(i));
    }
  }
  for (Index i = 0; i < as.size(); ++i) {
    ++r.cases;
    TensorResult t = tensor(w, as[i]);
    FinFn pulled = pa.right(as[i].anchor());
    Pullback xa = pullback(a, as[i].anchor());
    std::vector<Index> table(t.carrier().size());
    for (Index c = 0; c < table.size(); ++c) {
      auto [p, y] = t.pairs.elements[t.classes.representative[c]];
      table[c] = xa.find(w.bundle.proj(p), y);
    }
    FinFn cmp(t.carrier(), xa.set, std::move(table));
    if (cmp.dom().size() != pulled.dom().size() || !is_bijection(cmp) || !(compose(pulled, cmp) == t.proj)) {
      r.fail("right adjoints differ at A#" + std::to_string(i));
    }
  }
  return r;
}

}  // namespace frobundle
