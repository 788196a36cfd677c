#pragma once

// Adjunctions L -| R : D <-> C presented as computable functors together with
// per-object unit and counit components. Nothing here can quantify over all
// objects, so every check runs over an explicit family and the resulting
// report records the bounds it used.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/category.hpp"

namespace frobundle {

template <ConcreteCategory D, ConcreteCategory C>
struct Adjunction {
  using DObject = typename D::Object;
  using DMorphism = typename D::Morphism;
  using CObject = typename C::Object;
  using CMorphism = typename C::Morphism;

  std::string name;
  D source;  // domain of the left adjoint
  C target;  // domain of the right adjoint
  std::function<CObject(const DObject&)> left;
  std::function<CMorphism(const DMorphism&)> left_map;
  std::function<DObject(const CObject&)> right;
  std::function<DMorphism(const CMorphism&)> right_map;
  std::function<DMorphism(const DObject&)> unit;    // W -> R L W
  std::function<CMorphism(const CObject&)> counit;  // L R A -> A
};

struct CheckReport {
  std::string check;
  std::vector<std::pair<std::string, Index>> bounds;
  bool pass = true;
  Index cases = 0;
  std::vector<std::string> witnesses;

  void fail(std::string witness) {
    pass = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  }

  void absorb(const CheckReport& other, const std::string& prefix = {}) {
    cases += other.cases;
    if (!other.pass) {
      pass = false;
      for (const auto& w : other.witnesses)
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(prefix + w);
    }
  }

  static constexpr Index kMaxWitnesses = 5;
};

/// The transpose of f: W -> R A across the adjunction.
template <class D, class C>
typename C::Morphism transpose_down(const Adjunction<D, C>& adj, const typename C::Object& a,
                                    const typename D::Morphism& f) {
  return compose(adj.target, adj.counit(a), adj.left_map(f));
}

/// The transpose of g: L W -> A across the adjunction.
template <class D, class C>
typename D::Morphism transpose_up(const Adjunction<D, C>& adj, const typename D::Object& w,
                                  const typename C::Morphism& g) {
  return compose(adj.source, adj.right_map(g), adj.unit(w));
}

/// L(R A x W) -> L R A x L W -> A x L W.
template <class D, class C>
typename C::Morphism frobenius_map(const Adjunction<D, C>& adj, const typename C::Object& a,
                                   const typename D::Object& w) {
  auto ra = adj.right(a);
  auto prod = adj.source.product(ra, w);
  auto lw = adj.left(w);
  auto target_prod = adj.target.product(a, lw);
  auto leg1 = compose(adj.target, adj.counit(a), adj.left_map(prod.first));
  auto leg2 = adj.left_map(prod.second);
  return pair_into(adj.target, target_prod, leg1, leg2);
}

template <class D, class C>
CheckReport check_frobenius(const Adjunction<D, C>& adj, const std::vector<typename C::Object>& as,
                            const std::vector<typename D::Object>& ws) {
  CheckReport r{"frobenius:" + adj.name};
  r.bounds = {{"c_objects", as.size()}, {"d_objects", ws.size()}};
  for (Index i = 0; i < as.size(); ++i)
    for (Index j = 0; j < ws.size(); ++j) {
      ++r.cases;
      auto where = [&] {
        return "A#" + std::to_string(i) + " (carrier " + std::to_string(adj.target.carrier(as[i]).size()) + "), W#" +
               std::to_string(j) + " (carrier " + std::to_string(adj.source.carrier(ws[j]).size()) + ")";
      };
      // A presentation that is not an adjunction can produce ill-formed
      // objects; that counts as a failure at this pair.
      try {
        if (!is_iso(adj.target, frobenius_map(adj, as[i], ws[j]))) r.fail(where());
      } catch (const Error& e) {
        r.fail(where() + ": " + e.what());
      }
    }
  return r;
}

/// eps_{L W} after L(eta_W) = id and R(eps_A) after eta_{R A} = id.
template <class D, class C>
CheckReport check_triangles(const Adjunction<D, C>& adj, const std::vector<typename C::Object>& as,
                            const std::vector<typename D::Object>& ws) {
  CheckReport r{"triangles:" + adj.name};
  r.bounds = {{"c_objects", as.size()}, {"d_objects", ws.size()}};
  for (Index j = 0; j < ws.size(); ++j) {
    ++r.cases;
    auto lw = adj.left(ws[j]);
    auto lhs = compose(adj.target, adj.counit(lw), adj.left_map(adj.unit(ws[j])));
    if (!same_morphism(adj.target, lhs, identity(adj.target, lw))) r.fail("left triangle at W#" + std::to_string(j));
  }
  for (Index i = 0; i < as.size(); ++i) {
    ++r.cases;
    auto ra = adj.right(as[i]);
    auto rhs = compose(adj.source, adj.right_map(adj.counit(as[i])), adj.unit(ra));
    if (!same_morphism(adj.source, rhs, identity(adj.source, ra))) r.fail("right triangle at A#" + std::to_string(i));
  }
  return r;
}

/// Naturality squares of unit and counit, and preservation of identities
/// and composites by both functors, on the given morphisms.
template <class D, class C>
CheckReport check_naturality(const Adjunction<D, C>& adj, const std::vector<typename C::Morphism>& cms,
                             const std::vector<typename D::Morphism>& dms) {
  CheckReport r{"naturality:" + adj.name};
  r.bounds = {{"c_morphisms", cms.size()}, {"d_morphisms", dms.size()}};
  const auto& d = adj.source;
  const auto& c = adj.target;
  for (Index i = 0; i < dms.size(); ++i) {
    ++r.cases;
    const auto& m = dms[i];
    auto lhs = compose(d, adj.unit(d.cod(m)), m);
    auto rhs = compose(d, adj.right_map(adj.left_map(m)), adj.unit(d.dom(m)));
    if (!same_morphism(d, lhs, rhs)) r.fail("unit square at D-morphism #" + std::to_string(i));
    auto lid = adj.left_map(identity(d, d.dom(m)));
    if (!same_morphism(c, lid, identity(c, adj.left(d.dom(m))))) r.fail("L(id) at D-morphism #" + std::to_string(i));
  }
  for (Index i = 0; i < cms.size(); ++i) {
    ++r.cases;
    const auto& m = cms[i];
    auto lhs = compose(c, m, adj.counit(c.dom(m)));
    auto rhs = compose(c, adj.counit(c.cod(m)), adj.left_map(adj.right_map(m)));
    if (!same_morphism(c, lhs, rhs)) r.fail("counit square at C-morphism #" + std::to_string(i));
    auto rid = adj.right_map(identity(c, c.dom(m)));
    if (!same_morphism(d, rid, identity(d, adj.right(c.dom(m))))) r.fail("R(id) at C-morphism #" + std::to_string(i));
  }
  // Composites of composable pairs.
  for (Index i = 0; i < dms.size(); ++i)
    for (Index j = 0; j < dms.size(); ++j) {
      if (!d.same_object(d.cod(dms[i]), d.dom(dms[j]))) continue;
      ++r.cases;
      auto lhs = adj.left_map(compose(d, dms[j], dms[i]));
      auto rhs = compose(c, adj.left_map(dms[j]), adj.left_map(dms[i]));
      if (!same_morphism(c, lhs, rhs)) r.fail("L fails on composite #" + std::to_string(j) + " after #" + std::to_string(i));
    }
  for (Index i = 0; i < cms.size(); ++i)
    for (Index j = 0; j < cms.size(); ++j) {
      if (!c.same_object(c.cod(cms[i]), c.dom(cms[j]))) continue;
      ++r.cases;
      auto lhs = adj.right_map(compose(c, cms[j], cms[i]));
      auto rhs = compose(d, adj.right_map(cms[j]), adj.right_map(cms[i]));
      if (!same_morphism(d, lhs, rhs)) r.fail("R fails on composite #" + std::to_string(j) + " after #" + std::to_string(i));
    }
  return r;
}

/// L_B -| R_B : D/RB <-> C/B, with L_B(W_g) the transpose of g and
/// R_B(Y_f) = R f.
template <ConcreteCategory D, ConcreteCategory C>
Adjunction<SliceCat<D>, SliceCat<C>> slice_adjunction(const Adjunction<D, C>& adj, const typename C::Object& b) {
  using DS = SliceCat<D>;
  using CS = SliceCat<C>;
  Adjunction<DS, CS> s{adj.name + "/slice", DS(adj.source, adj.right(b)), CS(adj.target, b)};
  auto eps_b = adj.counit(b);
  s.left = [adj, eps_b](const typename DS::Object& g) { return compose(adj.target, eps_b, adj.left_map(g)); };
  s.left_map = [adj, left = s.left](const typename DS::Morphism& m) {
    return typename CS::Morphism{left(m.dom), left(m.cod), adj.left_map(m.map)};
  };
  s.right = [adj](const typename CS::Object& f) { return adj.right_map(f); };
  s.right_map = [adj](const typename CS::Morphism& m) {
    return typename DS::Morphism{adj.right_map(m.dom), adj.right_map(m.cod), adj.right_map(m.map)};
  };
  s.unit = [adj, left = s.left](const typename DS::Object& g) {
    return typename DS::Morphism{g, adj.right_map(left(g)), adj.unit(adj.source.dom(g))};
  };
  s.counit = [adj](const typename CS::Object& f) {
    auto eps = adj.counit(adj.target.dom(f));
    return typename CS::Morphism{compose(adj.target, f, eps), f, eps};
  };
  return s;
}

struct FrobeniusBounds {
  Index c_carrier = 4;  // objects of C (and of C/B) with carrier at most this
  Index d_carrier = 3;  // objects of D (and of D/RB) with carrier at most this
  Index base_carrier = 3;  // the objects B sliced over
};

template <ConcreteCategory D, ConcreteCategory C>
CheckReport check_frobenius_on_family(const Adjunction<D, C>& adj, const FrobeniusBounds& bounds) {
  auto r = check_frobenius(adj, family(adj.target, bounds.c_carrier), family(adj.source, bounds.d_carrier));
  r.bounds.insert(r.bounds.begin(), {{"c_carrier", bounds.c_carrier}, {"d_carrier", bounds.d_carrier}});
  return r;
}

/// Objects of the slice D/RB with carrier at most k: the structure maps
/// themselves.
template <ConcreteCategory D>
std::vector<typename D::Morphism> sliced_family(const SliceCat<D>& s, Index k) {
  return s.base().slices_over(s.over(), k);
}

/// Frobenius reciprocity of the sliced form at a single object B.
template <ConcreteCategory D, ConcreteCategory C>
CheckReport check_frobenius_sliced(const Adjunction<D, C>& adj, const typename C::Object& b, const FrobeniusBounds& bounds) {
  auto s = slice_adjunction(adj, b);
  auto ys = s.target.base().slices_over(b, bounds.c_carrier);
  auto ws = sliced_family(s.source, bounds.d_carrier);
  return check_frobenius(s, ys, ws);
}

/// Frobenius reciprocity of every sliced form L_B -| R_B over the objects
/// B of C with carrier at most bounds.base_carrier.
template <ConcreteCategory D, ConcreteCategory C>
CheckReport check_stably_frobenius(const Adjunction<D, C>& adj, const FrobeniusBounds& bounds) {
  CheckReport r{"stably_frobenius:" + adj.name};
  r.bounds = {{"base_carrier", bounds.base_carrier}, {"c_carrier", bounds.c_carrier}, {"d_carrier", bounds.d_carrier}};
  auto bases = family(adj.target, bounds.base_carrier);
  for (Index i = 0; i < bases.size(); ++i) {
    r.absorb(check_frobenius_sliced(adj, bases[i], bounds), "B#" + std::to_string(i) + ": ");
  }
  return r;
}

/// Second after first: L = L2 L1, R = R1 R2.
template <ConcreteCategory A, ConcreteCategory B, ConcreteCategory C>
Adjunction<A, C> compose(const Adjunction<B, C>& second, const Adjunction<A, B>& first) {
  Adjunction<A, C> out{second.name + "*" + first.name, first.source, second.target};
  out.left = [first, second](const typename A::Object& w) { return second.left(first.left(w)); };
  out.left_map = [first, second](const typename A::Morphism& m) { return second.left_map(first.left_map(m)); };
  out.right = [first, second](const typename C::Object& y) { return first.right(second.right(y)); };
  out.right_map = [first, second](const typename C::Morphism& m) { return first.right_map(second.right_map(m)); };
  out.unit = [first, second](const typename A::Object& w) {
    return compose(first.source, first.right_map(second.unit(first.left(w))), first.unit(w));
  };
  out.counit = [first, second](const typename C::Object& y) {
    return compose(second.target, second.counit(y), second.left_map(first.counit(second.right(y))));
  };
  return out;
}

/// Sigma_f -| f* : K/T <-> K/U for f: T -> U in any category with pullbacks.
template <ConcreteCategory K>
Adjunction<SliceCat<K>, SliceCat<K>> pullback_adjunction(const K& k, const typename K::Morphism& f) {
  using S = SliceCat<K>;
  Adjunction<S, S> adj{"pullback", S(k, k.dom(f)), S(k, k.cod(f))};
  adj.left = [k, f](const typename S::Object& g) { return compose(k, f, g); };
  adj.left_map = [left = adj.left](const typename S::Morphism& m) {
    return typename S::Morphism{left(m.dom), left(m.cod), m.map};
  };
  adj.right = [k, f](const typename S::Object& h) { return k.pullback(f, h).first; };
  adj.right_map = [k, f](const typename S::Morphism& m) {
    auto from = k.pullback(f, m.dom);
    auto to = k.pullback(f, m.cod);
    auto mapped = pair_into(k, to, from.first, compose(k, m.map, from.second));
    return typename S::Morphism{from.first, to.first, mapped};
  };
  adj.unit = [k, f](const typename S::Object& g) {
    auto lg = compose(k, f, g);
    auto cone = k.pullback(f, lg);
    auto eta = pair_into(k, cone, g, identity(k, k.dom(g)));
    return typename S::Morphism{g, cone.first, eta};
  };
  adj.counit = [k, f](const typename S::Object& h) {
    auto cone = k.pullback(f, h);
    return typename S::Morphism{compose(k, f, cone.first), h, cone.second};
  };
  return adj;
}

/// The equivalence K <-> K/1 sending W to W -> 1.
template <ConcreteCategory K>
Adjunction<K, SliceCat<K>> terminal_slice_equivalence(const K& k) {
  using S = SliceCat<K>;
  Adjunction<K, S> adj{"over_terminal", k, S(k, k.terminal())};
  adj.left = [k](const typename K::Object& w) { return to_terminal(k, w); };
  adj.left_map = [k](const typename K::Morphism& m) {
    return typename S::Morphism{to_terminal(k, k.dom(m)), to_terminal(k, k.cod(m)), m};
  };
  adj.right = [k](const typename S::Object& h) { return k.dom(h); };
  adj.right_map = [](const typename S::Morphism& m) { return m.map; };
  adj.unit = [k](const typename K::Object& w) { return identity(k, w); };
  adj.counit = [k](const typename S::Object& h) { return typename S::Morphism{h, h, identity(k, k.dom(h))}; };
  return adj;
}

}  // namespace frobundle
