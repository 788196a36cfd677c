#pragma once

// A small vocabulary for categories that are concrete over finite sets:
// every morphism has an underlying FinFn, and a morphism is an isomorphism
// iff that function is a bijection. FinSet itself, slices of any such
// category, and categories of actions all fit, which lets adjunctions and
// their checks be written once.

#include <concepts>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "frobundle/finset.hpp"

namespace frobundle {

template <class Object, class Morphism>
struct Cone {
  Object apex;
  Morphism first;
  Morphism second;
};

template <class C>
concept ConcreteCategory = requires(const C& c, const typename C::Object& a,
                                    const typename C::Morphism& m, const FinFn& f, Index k) {
  { c.carrier(a) } -> std::convertible_to<FinSet>;
  { c.dom(m) } -> std::convertible_to<typename C::Object>;
  { c.cod(m) } -> std::convertible_to<typename C::Object>;
  { c.fn(m) } -> std::convertible_to<FinFn>;
  { c.admits(a, a, f) } -> std::same_as<bool>;
  { c.make(a, a, f) } -> std::same_as<typename C::Morphism>;
  { c.wrap(a, a, f) } -> std::same_as<typename C::Morphism>;
  { c.same_object(a, a) } -> std::same_as<bool>;
  { c.terminal() } -> std::same_as<typename C::Object>;
  { c.product(a, a) } -> std::same_as<Cone<typename C::Object, typename C::Morphism>>;
  { c.pullback(m, m) } -> std::same_as<Cone<typename C::Object, typename C::Morphism>>;
  { c.homs(a, a) } -> std::same_as<std::vector<typename C::Morphism>>;
  { c.slices_over(a, k) } -> std::same_as<std::vector<typename C::Morphism>>;
};

template <ConcreteCategory C>
using ConeOf = Cone<typename C::Object, typename C::Morphism>;

template <ConcreteCategory C>
typename C::Morphism identity(const C& c, const typename C::Object& a) {
  return c.wrap(a, a, FinFn::identity(c.carrier(a)));
}

/// g after f.
template <ConcreteCategory C>
typename C::Morphism compose(const C& c, const typename C::Morphism& g, const typename C::Morphism& f) {
  if (!c.same_object(c.cod(f), c.dom(g))) {
    throw Error(ErrorKind::CodMismatch, "compose: morphisms are not composable");
  }
  return c.wrap(c.dom(f), c.cod(g), compose(c.fn(g), c.fn(f)));
}

template <ConcreteCategory C>
bool is_iso(const C& c, const typename C::Morphism& m) {
  return is_bijection(c.fn(m));
}

template <ConcreteCategory C>
bool same_morphism(const C& c, const typename C::Morphism& a, const typename C::Morphism& b) {
  return c.same_object(c.dom(a), c.dom(b)) && c.same_object(c.cod(a), c.cod(b)) && c.fn(a) == c.fn(b);
}

template <ConcreteCategory C>
typename C::Morphism to_terminal(const C& c, const typename C::Object& a) {
  auto t = c.terminal();
  auto maps = c.homs(a, t);
  if (maps.size() != 1) throw Error(ErrorKind::InternalLaw, "terminal object does not receive a unique map");
  return maps.front();
}

/// The map (f, g): Z -> apex into a product or pullback cone. Cones in a
/// concrete category are jointly injective, so the pairing is a lookup.
template <ConcreteCategory C>
typename C::Morphism pair_into(const C& c, const ConeOf<C>& cone, const typename C::Morphism& f,
                               const typename C::Morphism& g) {
  const FinFn& p1 = c.fn(cone.first);
  const FinFn& p2 = c.fn(cone.second);
  const Index width = p2.cod().size() + 1;
  std::unordered_map<Index, Index> at;
  at.reserve(p1.dom().size());
  for (Index e = 0; e < p1.dom().size(); ++e) at.emplace(p1(e) * width + p2(e), e);
  const FinFn& ff = c.fn(f);
  const FinFn& gg = c.fn(g);
  std::vector<Index> t(ff.dom().size());
  for (Index z = 0; z < t.size(); ++z) {
    auto it = at.find(ff(z) * width + gg(z));
    if (it == at.end()) throw Error(ErrorKind::CodMismatch, "pair_into: legs do not land in the cone", {z});
    t[z] = it->second;
  }
  return c.wrap(c.dom(f), cone.apex, FinFn(ff.dom(), p1.dom(), std::move(t)));
}

/// f x g between two chosen products.
template <ConcreteCategory C>
typename C::Morphism product_map(const C& c, const ConeOf<C>& from, const ConeOf<C>& to,
                                 const typename C::Morphism& f, const typename C::Morphism& g) {
  return pair_into(c, to, compose(c, f, from.first), compose(c, g, from.second));
}

/// Objects of C with carrier at most k, one per isomorphism class where the
/// category can enumerate them that way.
template <ConcreteCategory C>
std::vector<typename C::Object> family(const C& c, Index k) {
  std::vector<typename C::Object> out;
  for (const auto& m : c.slices_over(c.terminal(), k)) out.push_back(c.dom(m));
  return out;
}

/// Every morphism a -> b in `families` of candidate objects, plus identities.
template <ConcreteCategory C>
std::vector<typename C::Morphism> morphisms_among(const C& c, const std::vector<typename C::Object>& objs) {
  std::vector<typename C::Morphism> out;
  for (const auto& a : objs) {
    for (const auto& b : objs) {
      auto hs = c.homs(a, b);
      out.insert(out.end(), hs.begin(), hs.end());
    }
  }
  return out;
}

/// Some isomorphism a -> b, searched exhaustively.
template <ConcreteCategory C>
std::optional<typename C::Morphism> find_iso(const C& c, const typename C::Object& a, const typename C::Object& b) {
  if (c.carrier(a).size() != c.carrier(b).size()) return std::nullopt;
  for (auto& m : c.homs(a, b)) {
    if (is_iso(c, m)) return m;
  }
  return std::nullopt;
}

inline constexpr Index kMaxBruteForceMaps = 2'000'000;

inline Index power_bounded(Index base, Index exp) {
  Index r = 1;
  for (Index i = 0; i < exp; ++i) {
    if (base != 0 && r > kMaxBruteForceMaps / base + 1) return std::numeric_limits<Index>::max();
    r *= base;
  }
  return r;
}

/// The ambient category of finite sets.
struct FinSetCat {
  using Object = FinSet;
  using Morphism = FinFn;

  FinSet carrier(const FinSet& a) const { return a; }
  const FinSet& dom(const FinFn& m) const { return m.dom(); }
  const FinSet& cod(const FinFn& m) const { return m.cod(); }
  const FinFn& fn(const FinFn& m) const { return m; }

  bool admits(const FinSet& a, const FinSet& b, const FinFn& f) const { return f.dom() == a && f.cod() == b; }

  FinFn make(const FinSet& a, const FinSet& b, const FinFn& f) const {
    if (!admits(a, b, f)) throw Error(ErrorKind::CodMismatch, "function does not have the stated ends");
    return f;
  }
  FinFn wrap(const FinSet& a, const FinSet& b, const FinFn& f) const { return FinFn(a, b, f.table()); }

  bool same_object(const FinSet& a, const FinSet& b) const { return a == b; }
  FinSet terminal() const { return terminal_set(); }

  Cone<FinSet, FinFn> product(const FinSet& a, const FinSet& b) const {
    auto p = frobundle::product(a, b);
    return {p.set, p.first, p.second};
  }

  Cone<FinSet, FinFn> pullback(const FinFn& f, const FinFn& g) const {
    auto pb = frobundle::pullback(f, g);
    return {pb.set, pb.first, pb.second};
  }

  std::vector<FinFn> homs(const FinSet& a, const FinSet& b) const {
    if (power_bounded(b.size(), a.size()) > kMaxBruteForceMaps) {
      throw Error(ErrorKind::FamilyTooLarge, "hom-set too large to enumerate");
    }
    std::vector<FinFn> out;
    for_each_function(a.size(), b.size(), [&](const std::vector<Index>& t) { out.emplace_back(a, b, t); });
    return out;
  }

  std::vector<FinFn> slices_over(const FinSet& b, Index k) const { return slices_up_to_iso(b, k); }
};

/// The slice Base/over. Objects are Base-morphisms into `over`; morphisms
/// are commuting triangles.
template <ConcreteCategory Base>
class SliceCat {
 public:
  using BaseObject = typename Base::Object;
  using BaseMorphism = typename Base::Morphism;
  using Object = BaseMorphism;

  struct Morphism {
    Object dom;
    Object cod;
    BaseMorphism map;
  };

  SliceCat(Base base, BaseObject over) : base_(std::move(base)), over_(std::move(over)) {}

  const Base& base() const { return base_; }
  const BaseObject& over() const { return over_; }

  FinSet carrier(const Object& a) const { return base_.carrier(base_.dom(a)); }
  const Object& dom(const Morphism& m) const { return m.dom; }
  const Object& cod(const Morphism& m) const { return m.cod; }
  FinFn fn(const Morphism& m) const { return base_.fn(m.map); }

  bool lives_here(const Object& a) const { return base_.same_object(base_.cod(a), over_); }

  bool admits(const Object& a, const Object& b, const FinFn& f) const {
    if (!lives_here(a) || !lives_here(b)) return false;
    if (!base_.admits(base_.dom(a), base_.dom(b), f)) return false;
    return compose(base_.fn(b), f) == base_.fn(a);
  }

  Morphism make(const Object& a, const Object& b, const FinFn& f) const {
    if (!lives_here(a) || !lives_here(b)) throw Error(ErrorKind::BaseMismatch, "object is not over the slice base");
    if (!admits(a, b, f)) throw Error(ErrorKind::BaseMismatch, "map does not commute with the structure maps");
    return Morphism{a, b, base_.make(base_.dom(a), base_.dom(b), f)};
  }

  Morphism wrap(const Object& a, const Object& b, const FinFn& f) const {
    return Morphism{a, b, base_.wrap(base_.dom(a), base_.dom(b), f)};
  }

  bool same_object(const Object& a, const Object& b) const { return same_morphism(base_, a, b); }

  Object terminal() const { return identity(base_, over_); }

  Cone<Object, Morphism> product(const Object& a, const Object& b) const {
    if (!lives_here(a) || !lives_here(b)) throw Error(ErrorKind::BaseMismatch, "product: object is not over the slice base");
    auto pb = base_.pullback(a, b);
    Object apex = frobundle::compose(base_, a, pb.first);
    return {apex, Morphism{apex, a, pb.first}, Morphism{apex, b, pb.second}};
  }

  Cone<Object, Morphism> pullback(const Morphism& f, const Morphism& g) const {
    auto pb = base_.pullback(f.map, g.map);
    Object apex = frobundle::compose(base_, f.dom, pb.first);
    return {apex, Morphism{apex, f.dom, pb.first}, Morphism{apex, g.dom, pb.second}};
  }

  std::vector<Morphism> homs(const Object& a, const Object& b) const {
    std::vector<Morphism> out;
    for (auto& m : base_.homs(base_.dom(a), base_.dom(b))) {
      if (compose(base_.fn(b), base_.fn(m)) == base_.fn(a)) out.push_back(Morphism{a, b, m});
    }
    return out;
  }

  /// Objects over b (as slice maps into b) of carrier at most k.
  std::vector<Morphism> slices_over(const Object& b, Index k) const {
    std::vector<Morphism> out;
    for (auto& m : base_.slices_over(base_.dom(b), k)) {
      out.push_back(Morphism{frobundle::compose(base_, b, m), b, m});
    }
    return out;
  }

 private:
  Base base_;
  BaseObject over_;
};

using SetSlice = SliceCat<FinSetCat>;

inline SetSlice slice_of_sets(const FinSet& base) { return SetSlice(FinSetCat{}, base); }

}  // namespace frobundle
