#pragma once

// Principal bundles over a base X, the division map, a brute-force torsor
// enumerator, and gluing of descent data along a surjection.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobundle/algebra.hpp"
#include "frobundle/finset.hpp"

namespace frobundle {

/// An action together with an action-invariant map to a base.
struct Bundle {
  ActionObject action;
  FinSet base;
  FinFn proj;

  static Bundle make(ActionObject action, FinSet base, FinFn proj) {
    if (!(proj.dom() == action.carrier()) || !(proj.cod() == base)) {
      throw Error(ErrorKind::CodMismatch, "projection has the wrong ends");
    }
    const FinGroupoid& g = *action.algebra();
    for (Index a = 0; a < g.arrows(); ++a)
      for (Index p = 0; p < action.size(); ++p) {
        Index q = action.act(a, p);
        if (q != npos && proj(q) != proj(p)) throw Error(ErrorKind::NotInvariant, "projection is not action-invariant", {a, p});
      }
    return Bundle{std::move(action), std::move(base), std::move(proj)};
  }
};

/// Evidence that a bundle is principal: the division map on the kernel pair
/// P x_X P and a chosen point in every fibre.
struct TorsorWitness {
  Bundle bundle;
  Pullback kernel;
  std::vector<Index> division;  // kernel element -> arrow
  std::vector<Index> section;   // base point -> a point of P over it

  /// The unique arrow g with g . q = p; requires proj(p) == proj(q).
  Index psi(Index p, Index q) const {
    Index k = kernel.find(p, q);
    if (k == npos) throw Error(ErrorKind::BaseMismatch, "psi is only defined on pairs in the same fibre", {p, q});
    return division[k];
  }

  const Algebra& algebra() const { return bundle.action.algebra(); }
  const ActionObject& action() const { return bundle.action; }
};

/// Surjective projection and (act, pi2): G1 x_G0 P -> P x_X P bijective.
/// Throws NotSurjective or NotFreeTransitive with a witness.
inline TorsorWitness is_principal_bundle(const Bundle& b) {
  const ActionObject& p = b.action;
  const FinGroupoid& g = *p.algebra();
  std::vector<Index> section(b.base.size(), npos);
  for (Index x = p.size(); x-- > 0;) section[b.proj(x)] = x;
  for (Index x = 0; x < b.base.size(); ++x) {
    if (section[x] == npos) throw Error(ErrorKind::NotSurjective, "no point over base element " + std::to_string(x), {x});
  }
  Pullback kernel = pullback(b.proj, b.proj);
  std::vector<Index> hits(kernel.set.size(), 0);
  std::vector<Index> division(kernel.set.size(), npos);
  for (Index a = 0; a < g.arrows(); ++a)
    for (Index q = 0; q < p.size(); ++q) {
      Index ap = p.act(a, q);
      if (ap == npos) continue;
      Index k = kernel.find(ap, q);
      ++hits[k];
      division[k] = a;
    }
  for (Index k = 0; k < kernel.set.size(); ++k) {
    if (hits[k] != 1) {
      auto [x, y] = kernel.elements[k];
      throw Error(ErrorKind::NotFreeTransitive,
                  "pair (" + std::to_string(x) + ", " + std::to_string(y) + ") has " + std::to_string(hits[k]) +
                      " solutions",
                  {x, y});
    }
  }
  return TorsorWitness{b, std::move(kernel), std::move(division), std::move(section)};
}

inline std::optional<TorsorWitness> try_principal_bundle(const Bundle& b) {
  try {
    return is_principal_bundle(b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct DivisionReport {
  FinFn psi;  // kernel pair -> arrows
  Index pairs_checked = 0;
  Index law_instances = 0;
};

/// psi with its laws checked on every defined instance:
///   psi(g.p, q) = g psi(p, q),  psi(p, g.q) = psi(p, q) g^-1,  psi(p, p) = e.
/// A failure here means the witness is inconsistent, so it throws InternalLaw.
inline DivisionReport division_map(const TorsorWitness& w) {
  const ActionObject& p = w.action();
  const FinGroupoid& g = *w.algebra();
  DivisionReport r{FinFn(w.kernel.set, FinSet(g.arrows()), w.division)};
  for (Index k = 0; k < w.kernel.set.size(); ++k) {
    auto [x, y] = w.kernel.elements[k];
    Index s = w.division[k];
    ++r.pairs_checked;
    if (p.act(s, y) != x) throw Error(ErrorKind::InternalLaw, "psi(p, q) . q != p", {x, y});
    for (Index a = 0; a < g.arrows(); ++a) {
      Index ax = p.act(a, x);
      if (ax != npos) {
        ++r.law_instances;
        if (w.psi(ax, y) != g.comp(a, s)) throw Error(ErrorKind::InternalLaw, "psi(g.p, q) != g psi(p, q)", {a, x, y});
      }
      Index ay = p.act(a, y);
      if (ay != npos) {
        ++r.law_instances;
        if (w.psi(x, ay) != g.comp(s, g.inv(a))) throw Error(ErrorKind::InternalLaw, "psi(p, g.q) != psi(p, q) g^-1", {a, x, y});
      }
    }
  }
  for (Index x = 0; x < p.size(); ++x) {
    ++r.law_instances;
    if (w.psi(x, x) != g.ident(p.anchor()(x))) throw Error(ErrorKind::InternalLaw, "psi(p, p) != e", {x});
  }
  return r;
}

/// X x G with proj pi1 and g . (x, h) = (x, g h). Group case.
inline TorsorWitness trivial_torsor(const Algebra& alg, const FinSet& x) {
  if (!alg->one_object()) throw Error(ErrorKind::AlgebraMismatch, "trivial_torsor is defined for groups");
  const FinGroupoid& g = *alg;
  const Index n = g.arrows();
  Product xg = product(x, FinSet(n));
  std::vector<Index> act(n * xg.set.size());
  for (Index a = 0; a < n; ++a)
    for (Index i = 0; i < x.size(); ++i)
      for (Index h = 0; h < n; ++h) act[a * xg.set.size() + xg.pair(i, h)] = xg.pair(i, g.comp(a, h));
  ActionObject p = ActionObject::unchecked(alg, xg.set, FinFn::constant(xg.set, FinSet(1), 0), std::move(act));
  return is_principal_bundle(Bundle::make(p, x, xg.first));
}

/// Every action of `alg` on a carrier with the given anchor. Arrows are
/// assigned in index order; an arrow whose action is already forced by
/// composites or inverses of assigned arrows is not branched on. Every
/// complete assignment is validated against the action laws.
inline std::vector<ActionObject> enumerate_actions(const Algebra& alg, const FinFn& anchor) {
  const FinGroupoid& g = *alg;
  const Index n = anchor.dom().size();
  auto fib = fibers(anchor);
  using Perm = std::vector<Index>;  // element -> image, npos off the source fibre
  std::vector<std::optional<Perm>> assigned(g.arrows());
  std::vector<ActionObject> out;

  auto compose_perm = [&](Index a2, Index a1) {
    Perm r(n, npos);
    for (Index x : fib[g.src(a1)]) r[x] = (*assigned[a2])[(*assigned[a1])[x]];
    return r;
  };
  auto invert_perm = [&](Index a) {
    Perm r(n, npos);
    for (Index x : fib[g.src(a)]) r[(*assigned[a])[x]] = x;
    return r;
  };
  // Propagates forced values; false on a contradiction.
  auto close = [&](std::vector<Index>& touched) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Index a = 0; a < g.arrows(); ++a) {
        if (!assigned[a]) continue;
        Index ia = g.inv(a);
        Perm inv = invert_perm(a);
        if (!assigned[ia]) {
          assigned[ia] = inv;
          touched.push_back(ia);
          changed = true;
        } else if (*assigned[ia] != inv) {
          return false;
        }
        for (Index b = 0; b < g.arrows(); ++b) {
          if (!assigned[b]) continue;
          Index ab = g.comp(a, b);
          if (ab == npos) continue;
          Perm c = compose_perm(a, b);
          if (!assigned[ab]) {
            assigned[ab] = c;
            touched.push_back(ab);
            changed = true;
          } else if (*assigned[ab] != c) {
            return false;
          }
        }
      }
    }
    return true;
  };

  for (Index o = 0; o < g.objects(); ++o) {
    Perm id(n, npos);
    for (Index x : fib[o]) id[x] = x;
    assigned[g.ident(o)] = id;
  }
  std::vector<Index> seed;
  if (!close(seed)) return out;

  auto emit = [&]() {
    std::vector<Index> act(g.arrows() * n, npos);
    for (Index a = 0; a < g.arrows(); ++a)
      for (Index x = 0; x < n; ++x) act[a * n + x] = (*assigned[a])[x];
    try {
      out.push_back(ActionObject::validate(alg, anchor.dom(), anchor, std::move(act)));
    } catch (const Error&) {
    }
  };

  auto rec = [&](auto& self, Index a) -> void {
    while (a < g.arrows() && assigned[a]) ++a;
    if (a == g.arrows()) {
      emit();
      return;
    }
    const auto& from = fib[g.src(a)];
    std::vector<Index> to = fib[g.tgt(a)];
    if (from.size() != to.size()) return;
    do {
      Perm p(n, npos);
      for (Index i = 0; i < from.size(); ++i) p[from[i]] = to[i];
      assigned[a] = p;
      std::vector<Index> touched{a};
      if (close(touched)) self(self, a + 1);
      for (Index t : touched) assigned[t].reset();
    } while (std::next_permutation(to.begin(), to.end()));
  };
  rec(rec, 0);
  return out;
}

/// An isomorphism of bundles over the same base: equivariant, anchored,
/// and commuting with the projections. Found by backtracking; choosing the
/// image of one point fixes the images of its whole orbit.
inline std::optional<FinFn> find_bundle_iso(const Bundle& a, const Bundle& b) {
  if (a.action.size() != b.action.size() || !(a.base == b.base) ||
      !same_algebra(a.action.algebra(), b.action.algebra())) {
    return std::nullopt;
  }
  const FinGroupoid& g = *a.action.algebra();
  const Index n = a.action.size();
  std::vector<Index> img(n, npos);
  std::vector<bool> used(n, false);
  auto rec = [&](auto& self, Index x) -> bool {
    while (x < n && img[x] != npos) ++x;
    if (x == n) return true;
    for (Index y = 0; y < n; ++y) {
      if (used[y] || b.proj(y) != a.proj(x) || b.action.anchor()(y) != a.action.anchor()(x)) continue;
      std::vector<Index> set;
      bool ok = true;
      for (Index arrow = 0; arrow < g.arrows() && ok; ++arrow) {
        Index ax = a.action.act(arrow, x);
        if (ax == npos) continue;
        Index by = b.action.act(arrow, y);
        if (img[ax] == npos) {
          if (used[by]) {
            ok = false;
            break;
          }
          img[ax] = by;
          used[by] = true;
          set.push_back(ax);
        } else if (img[ax] != by) {
          ok = false;
        }
      }
      if (ok) {
        // The orbit of x is assigned; verify equivariance inside it.
        for (Index s : set)
          for (Index arrow = 0; arrow < g.arrows() && ok; ++arrow) {
            Index as = a.action.act(arrow, s);
            if (as != npos && img[as] != b.action.act(arrow, img[s])) ok = false;
          }
      }
      if (ok && self(self, x + 1)) return true;
      for (Index s : set) {
        used[img[s]] = false;
        img[s] = npos;
      }
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return FinFn(a.action.carrier(), b.action.carrier(), img);
}

struct TorsorEnumeration {
  std::vector<TorsorWitness> structures;
  std::vector<Index> class_of;         // structure -> iso class
  std::vector<Index> representatives;  // iso class -> structure
  Index candidates_tested = 0;

  Index class_count() const { return representatives.size(); }
};

inline constexpr Index kMaxTorsorCarrier = 8;

/// Every (anchor, proj, action) on `carrier` over `x` that passes
/// is_principal_bundle, grouped into isomorphism classes over x.
///
/// Projections whose fibre sizes cannot make (act, pi2) a bijection are
/// skipped by a cardinality count (|G1 x_G0 P| must equal |P x_X P|). An
/// invariant projection splits any action into actions on its fibres, so
/// the remaining actions are enumerated fibrewise.
inline TorsorEnumeration enumerate_torsors(const Algebra& alg, const FinSet& x, const FinSet& carrier) {
  if (carrier.size() > kMaxTorsorCarrier) throw Error(ErrorKind::BoundsExceeded, "torsor enumeration is bounded to |P| <= 8");
  const FinGroupoid& g = *alg;
  const Index n = carrier.size();
  TorsorEnumeration out;
  std::vector<Index> out_degree(g.objects(), 0);
  for (Index a = 0; a < g.arrows(); ++a) ++out_degree[g.src(a)];

  for_each_function(n, g.objects(), [&](const std::vector<Index>& anchor_table) {
    Index acting_pairs = 0;
    for (Index p = 0; p < n; ++p) acting_pairs += out_degree[anchor_table[p]];
    for_each_function(n, x.size(), [&](const std::vector<Index>& proj_table) {
      FinFn proj(carrier, x, proj_table);
      if (!is_surjection(proj)) return;
      auto fib = fibers(proj);
      Index kernel_pairs = 0;
      for (auto& f : fib) kernel_pairs += f.size() * f.size();
      if (kernel_pairs != acting_pairs) return;
      // Actions on each fibre, then every combination.
      std::vector<std::vector<ActionObject>> per_fibre;
      for (auto& f : fib) {
        std::vector<Index> fa;
        for (Index p : f) fa.push_back(anchor_table[p]);
        per_fibre.push_back(enumerate_actions(alg, FinFn(FinSet(f.size()), FinSet(g.objects()), fa)));
        if (per_fibre.back().empty()) return;
      }
      std::vector<Index> choice(fib.size(), 0);
      while (true) {
        std::vector<Index> act(g.arrows() * n, npos);
        for (Index xi = 0; xi < fib.size(); ++xi) {
          const ActionObject& fa = per_fibre[xi][choice[xi]];
          for (Index a = 0; a < g.arrows(); ++a)
            for (Index i = 0; i < fib[xi].size(); ++i) {
              Index v = fa.act(a, i);
              if (v != npos) act[a * n + fib[xi][i]] = fib[xi][v];
            }
        }
        ++out.candidates_tested;
        ActionObject p = ActionObject::unchecked(alg, carrier, FinFn(carrier, FinSet(g.objects()), anchor_table), std::move(act));
        if (auto w = try_principal_bundle(Bundle::make(p, x, proj))) out.structures.push_back(std::move(*w));
        Index i = 0;
        while (i < fib.size() && ++choice[i] == per_fibre[i].size()) choice[i++] = 0;
        if (i == fib.size()) break;
      }
    });
  });

  for (Index s = 0; s < out.structures.size(); ++s) {
    Index cls = npos;
    for (Index c = 0; c < out.representatives.size() && cls == npos; ++c) {
      if (find_bundle_iso(out.structures[out.representatives[c]].bundle, out.structures[s].bundle)) cls = c;
    }
    if (cls == npos) {
      cls = out.representatives.size();
      out.representatives.push_back(s);
    }
    out.class_of.push_back(cls);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descent along a surjection f: P -> X.

/// The two pullbacks of Y -> P to the kernel pair K = P x_X P.
struct DescentPullbacks {
  Pullback kernel;
  Pullback along_first;   // {(k, y) | first(k) = over(y)}
  Pullback along_second;  // {(k, y) | second(k) = over(y)}
};

inline DescentPullbacks descent_pullbacks(const FinFn& f, const FinFn& over) {
  Pullback kernel = pullback(f, f);
  Pullback a = pullback(kernel.first, over);
  Pullback b = pullback(kernel.second, over);
  return DescentPullbacks{std::move(kernel), std::move(a), std::move(b)};
}

/// An object Y -> P with a gluing isomorphism from its first to its second
/// pullback over P x_X P.
struct DescentDatum {
  FinFn over;
  IsoCertificate glue;
};

/// The datum f*(Z) with the canonical gluing ((p, p'), (p, z)) -> ((p, p'), (p', z)).
inline DescentDatum canonical_descent_datum(const FinFn& f, const FinFn& z) {
  Pullback fz = pullback(f, z);
  DescentPullbacks d = descent_pullbacks(f, fz.first);
  std::vector<Index> fwd(d.along_first.set.size());
  for (Index e = 0; e < fwd.size(); ++e) {
    auto [k, y] = d.along_first.elements[e];
    Index q = d.kernel.elements[k].second;
    fwd[e] = d.along_second.find(k, fz.find(q, fz.elements[y].second));
  }
  FinFn forward(d.along_first.set, d.along_second.set, std::move(fwd));
  return DescentDatum{fz.first, IsoCertificate::from_bijection(forward)};
}

struct GluedObject {
  FinFn glued;               // Q -> X
  Quotient classes;          // Y -> Q
  IsoCertificate comparison; // Y -> f*Q = P x_X Q
  Pullback pulled_back;      // f*Q
};

/// Checks that the glue lives over the kernel pair and satisfies the unit
/// and cocycle conditions. Throws BaseMismatch or CocycleFail.
inline void check_descent_datum(const FinFn& f, const DescentDatum& d, const DescentPullbacks& pb) {
  if (!(d.over.cod() == f.dom())) throw Error(ErrorKind::BaseMismatch, "datum is not over the domain of f");
  if (!(d.glue.forward.dom() == pb.along_first.set) || !(d.glue.forward.cod() == pb.along_second.set) || !d.glue.valid()) {
    throw Error(ErrorKind::BaseMismatch, "glue is not an isomorphism between the two pullbacks");
  }
  auto theta = [&](Index k, Index y) {
    Index e = pb.along_first.find(k, y);
    auto [k2, y2] = pb.along_second.elements[d.glue.forward(e)];
    if (k2 != k) throw Error(ErrorKind::BaseMismatch, "glue does not live over the kernel pair", {k, y});
    return y2;
  };
  for (Index e = 0; e < pb.along_first.set.size(); ++e) {
    auto [k, y] = pb.along_first.elements[e];
    auto [p, q] = pb.kernel.elements[k];
    Index moved = theta(k, y);
    if (p == q && moved != y) throw Error(ErrorKind::CocycleFail, "glue is not the identity on the diagonal", {p, y});
  }
  // theta(q, r) after theta(p, q) = theta(p, r) on every triple in one fibre.
  for (Index y = 0; y < d.over.dom().size(); ++y) {
    Index p = d.over(y);
    for (Index q = 0; q < f.dom().size(); ++q) {
      if (f(q) != f(p)) continue;
      Index y1 = theta(pb.kernel.find(p, q), y);
      for (Index r = 0; r < f.dom().size(); ++r) {
        if (f(r) != f(p)) continue;
        if (theta(pb.kernel.find(q, r), y1) != theta(pb.kernel.find(p, r), y)) {
          throw Error(ErrorKind::CocycleFail, "cocycle condition fails", {p, q, r, y});
        }
      }
    }
  }
}

/// Glues Y -> P to Q -> X: Q is Y modulo y ~ theta(p, p')(y). Returns the
/// certificate Y = f*Q, checked to carry the datum's glue to the canonical one.
inline GluedObject glue_descent_data(const FinFn& f, const DescentDatum& d) {
  if (!is_surjection(f)) throw Error(ErrorKind::NotSurjective, "descent needs a surjection");
  DescentPullbacks pb = descent_pullbacks(f, d.over);
  check_descent_datum(f, d, pb);
  std::vector<std::pair<Index, Index>> rel;
  for (Index e = 0; e < pb.along_first.set.size(); ++e) {
    rel.emplace_back(pb.along_first.elements[e].second, pb.along_second.elements[d.glue.forward(e)].second);
  }
  Quotient q = quotient(d.over.dom(), rel);
  std::vector<Index> down(q.set.size());
  for (Index c = 0; c < q.set.size(); ++c) down[c] = f(d.over(q.representative[c]));
  FinFn glued(q.set, f.cod(), std::move(down));
  Pullback fq = pullback(f, glued);
  std::vector<Index> fwd(d.over.dom().size());
  for (Index y = 0; y < fwd.size(); ++y) fwd[y] = fq.find(d.over(y), q.map(y));
  FinFn forward(d.over.dom(), fq.set, std::move(fwd));
  if (!is_bijection(forward)) throw Error(ErrorKind::CocycleFail, "glued object does not pull back to the datum");
  GluedObject out{glued, q, IsoCertificate::from_bijection(forward), fq};
  // The certificate must be over P and intertwine the glue with the
  // canonical glue of f*Q: theta(p, p')(y) corresponds to (p', [y]).
  for (Index e = 0; e < pb.along_first.set.size(); ++e) {
    auto [k, y] = pb.along_first.elements[e];
    Index y2 = pb.along_second.elements[d.glue.forward(e)].second;
    auto [p, p2] = pb.kernel.elements[k];
    if (fq.elements[out.comparison.forward(y2)] != std::make_pair(p2, q.map(y))) {
      throw Error(ErrorKind::CocycleFail, "comparison does not respect the glue", {p, p2, y});
    }
  }
  return out;
}

/// Every descent datum along f whose object Y has the given size: every
/// Y -> P, and every choice of fibre bijections Y_p -> Y_q over the kernel
/// pair that passes check_descent_datum.
template <class Visit>
void for_each_descent_datum(const FinFn& f, Index y_size, Visit&& visit) {
  for_each_function(y_size, f.dom().size(), [&](const std::vector<Index>& over_table) {
    FinFn over(FinSet(y_size), f.dom(), over_table);
    DescentPullbacks pb = descent_pullbacks(f, over);
    auto fib = fibers(over);
    // Per kernel pair, the candidate bijections Y_p -> Y_q.
    std::vector<std::vector<std::vector<Index>>> options(pb.kernel.set.size());
    for (Index k = 0; k < options.size(); ++k) {
      auto [p, q] = pb.kernel.elements[k];
      if (fib[p].size() != fib[q].size()) return;
      std::vector<Index> to = fib[q];
      if (p == q) {
        options[k].push_back(to);
        continue;
      }
      do options[k].push_back(to);
      while (std::next_permutation(to.begin(), to.end()));
    }
    std::vector<Index> choice(options.size(), 0);
    while (true) {
      std::vector<Index> fwd(pb.along_first.set.size());
      for (Index e = 0; e < fwd.size(); ++e) {
        auto [k, y] = pb.along_first.elements[e];
        const auto& from = fib[pb.kernel.elements[k].first];
        Index pos = Index(std::find(from.begin(), from.end(), y) - from.begin());
        fwd[e] = pb.along_second.find(k, options[k][choice[k]][pos]);
      }
      FinFn forward(pb.along_first.set, pb.along_second.set, std::move(fwd));
      if (is_bijection(forward)) {
        DescentDatum d{over, IsoCertificate::from_bijection(forward)};
        bool ok = true;
        try {
          check_descent_datum(f, d, pb);
        } catch (const Error&) {
          ok = false;
        }
        if (ok) visit(d);
      }
      Index i = 0;
      while (i < options.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
      if (i == options.size()) break;
    }
  });
}

/// Maps of descent data: slice maps Y1 -> Y2 over P commuting with the glue.
inline Index count_descent_morphisms(const FinFn& f, const DescentDatum& a, const DescentDatum& b) {
  DescentPullbacks pa = descent_pullbacks(f, a.over);
  DescentPullbacks pbb = descent_pullbacks(f, b.over);
  Index count = 0;
  for_each_function(a.over.dom().size(), b.over.dom().size(), [&](const std::vector<Index>& t) {
    for (Index y = 0; y < t.size(); ++y)
      if (b.over(t[y]) != a.over(y)) return;
    for (Index e = 0; e < pa.along_first.set.size(); ++e) {
      auto [k, y] = pa.along_first.elements[e];
      Index ya = pa.along_second.elements[a.glue.forward(e)].second;
      Index eb = pbb.along_first.find(k, t[y]);
      Index yb = pbb.along_second.elements[b.glue.forward(eb)].second;
      if (t[ya] != yb) return;
    }
    ++count;
  });
  return count;
}

}  // namespace frobundle
