#include <gtest/gtest.h>

#include "frobundle/torsor.hpp"
#include "oracle.hpp"

using namespace frobundle;

namespace {

Algebra z(Index n) { return make_algebra(cyclic_group(n)); }

Algebra v4() {
  return make_algebra(FinGroup::validate(4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 0, {0, 1, 2, 3}));
}

}  // namespace

TEST(Principal, RegularActionIsATorsorOverAPoint) {
  TorsorWitness w = is_principal_bundle(Bundle::make(self_action(z(3)), FinSet(1), FinFn::constant(FinSet(3), FinSet(1), 0)));
  for (Index p = 0; p < 3; ++p)
    for (Index q = 0; q < 3; ++q) EXPECT_EQ(w.action().act(w.psi(p, q), q), p);
}

TEST(Principal, RejectsNonSurjectiveAndNonFree) {
  Algebra z2 = z(2);
  try {
    is_principal_bundle(Bundle::make(self_action(z2), FinSet(2), FinFn(FinSet(2), FinSet(2), {0, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSurjective);
    EXPECT_EQ(e.witness(), std::vector<Index>{1});
  }
  try {
    is_principal_bundle(Bundle::make(trivial_action(z2, FinSet(2)), FinSet(1), FinFn::constant(FinSet(2), FinSet(1), 0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFreeTransitive);
  }
  // Not invariant: the action swaps points in different fibers.
  EXPECT_THROW(Bundle::make(self_action(z2), FinSet(2), FinFn::identity(FinSet(2))), Error);
}

TEST(Psi, LawsHoldForEveryEnumeratedTorsor) {
  for (Algebra alg : {z(1), z(2), z(3), z(4), v4()})
    for (Index x = 0; x <= 2; ++x) {
      auto e = enumerate_torsors(alg, FinSet(x), FinSet(alg->arrows() * x));
      for (const auto& w : e.structures) {
        DivisionReport d = division_map(w);
        EXPECT_EQ(d.pairs_checked, w.kernel.set.size());
        // Independent restatement of the laws on the raw action table.
        const auto& p = w.action();
        const FinGroupoid& g = *alg;
        for (auto [a, b] : w.kernel.elements) {
          for (Index h = 0; h < g.arrows(); ++h) {
            EXPECT_EQ(w.psi(p.act(h, a), b), g.comp(h, w.psi(a, b)));
            EXPECT_EQ(w.psi(a, p.act(h, b)), g.comp(w.psi(a, b), g.inv(h)));
          }
          if (a == b) {
            EXPECT_EQ(w.psi(a, b), g.ident(0));
          }
        }
      }
    }
}

TEST(Enumerate, CountsMatchBruteForceOracle) {
  struct Case {
    Algebra alg;
    Index x, p;
  };
  std::vector<Case> cases{{z(1), 1, 1}, {z(1), 2, 2}, {z(2), 1, 2}, {z(3), 1, 3}, {z(2), 2, 4},
                          {z(4), 1, 4}, {v4(), 1, 4}, {z(2), 1, 3}, {z(3), 1, 4}};
  for (const auto& c : cases) {
    auto e = enumerate_torsors(c.alg, FinSet(c.x), FinSet(c.p));
    auto mul = FinGroup::validate(c.alg->arrows(), c.alg->comp_rows(), c.alg->ident(0), c.alg->inv_table()).mul_rows();
    EXPECT_EQ(e.structures.size(), oracle::count_torsors(mul, 0, c.x, c.p)) << c.alg->arrows() << " " << c.x << " " << c.p;
  }
}

TEST(Enumerate, FrozenCounts) {
  // Computed by the brute-force oracle above and by the fiberwise formula
  // C(|P|; |G|, ..., |G|) * (|G|! / |G|)^|X|.
  EXPECT_EQ(enumerate_torsors(z(2), FinSet(1), FinSet(2)).structures.size(), 1u);
  EXPECT_EQ(enumerate_torsors(z(3), FinSet(1), FinSet(3)).structures.size(), 2u);
  EXPECT_EQ(enumerate_torsors(z(4), FinSet(1), FinSet(4)).structures.size(), 6u);
  EXPECT_EQ(enumerate_torsors(v4(), FinSet(1), FinSet(4)).structures.size(), 6u);
  EXPECT_EQ(enumerate_torsors(z(3), FinSet(2), FinSet(6)).structures.size(), 80u);
  for (Algebra alg : {z(2), z(3), z(4), v4()})
    for (Index x = 0; x <= 2; ++x) EXPECT_EQ(enumerate_torsors(alg, FinSet(x), FinSet(alg->arrows() * x)).class_count(), 1u);
}

TEST(Enumerate, TrivialGroupGivesTheIdentityBundle) {
  for (Index x = 0; x <= 3; ++x) {
    auto e = enumerate_torsors(z(1), FinSet(x), FinSet(x));
    EXPECT_EQ(e.class_count(), 1u);
    EXPECT_EQ(e.structures.size(), oracle::factorial(x));
    for (Index p = 0; p <= 4; ++p)
      if (p != x) {
        EXPECT_TRUE(enumerate_torsors(z(1), FinSet(x), FinSet(p)).structures.empty());
      }
  }
}

TEST(Enumerate, DiscreteGroupoidCountsMatchOracle) {
  for (Index s = 1; s <= 3; ++s)
    for (Index x = 0; x <= 3; ++x) {
      auto e = enumerate_torsors(make_algebra(discrete_groupoid(s)), FinSet(x), FinSet(x));
      EXPECT_EQ(e.structures.size(), oracle::count_discrete_torsors(s, x, x));
      EXPECT_EQ(e.class_count(), oracle::power(s, x));
    }
}

TEST(Enumerate, GuardsCarrierSize) {
  EXPECT_THROW(enumerate_torsors(z(3), FinSet(3), FinSet(9)), Error);
}

TEST(Iso, FindsEquivariantIsoOverTheBase) {
  auto e = enumerate_torsors(z(3), FinSet(2), FinSet(6));
  const auto& a = e.structures.front().bundle;
  for (const auto& w : e.structures) {
    auto phi = find_bundle_iso(a, w.bundle);
    ASSERT_TRUE(phi.has_value());
    EXPECT_TRUE(is_bijection(*phi));
    EXPECT_EQ(compose(w.bundle.proj, *phi), a.proj);
    EXPECT_FALSE(equivariance_violation(a.action, w.bundle.action, *phi));
  }
}

TEST(Descent, CanonicalDatumGluesBack) {
  FinFn f(FinSet(4), FinSet(2), {0, 1, 1, 0});
  for_each_function(3, 2, [&](const std::vector<Index>& zt) {
    FinFn zf(FinSet(3), FinSet(2), zt);
    GluedObject g = glue_descent_data(f, canonical_descent_datum(f, zf));
    EXPECT_EQ(g.glued.dom().size(), 3u);
    EXPECT_TRUE(g.comparison.valid());
    auto fz = fibers(zf), fg = fibers(g.glued);
    for (Index x = 0; x < 2; ++x) EXPECT_EQ(fz[x].size(), fg[x].size());
  });
}

TEST(Descent, DataAlongIdentityAreFunctions) {
  // Along id_X every Y -> X carries exactly one datum: |X|^|Y| in total.
  FinFn id = FinFn::identity(FinSet(2));
  for (Index y = 0; y <= 3; ++y) {
    Index n = 0;
    for_each_descent_datum(id, y, [&](const DescentDatum&) { ++n; });
    EXPECT_EQ(n, oracle::power(2, y));
  }
}

TEST(Descent, DataAlongPointCountLabelledSplittings) {
  // Along P -> 1 with |P| = 2, data on Y are splittings Y = P x Z with Z
  // unlabelled: |Y|! / |Z|! when |Y| = 2|Z|, none otherwise.
  FinFn f = to_terminal(FinSet(2));
  const Index expect[] = {1, 0, 2, 0, 12};
  for (Index y = 0; y <= 4; ++y) {
    Index n = 0;
    for_each_descent_datum(f, y, [&](const DescentDatum& d) {
      ++n;
      EXPECT_NO_THROW(glue_descent_data(f, d));
    });
    EXPECT_EQ(n, expect[y]) << y;
  }
}

TEST(Descent, RejectsCocycleFailure) {
  FinFn f = to_terminal(FinSet(2));
  FinFn over(FinSet(2), FinSet(2), {0, 1});
  DescentPullbacks pb = descent_pullbacks(f, over);
  // Swapping the entries over (0, 1) and (1, 0) moves them off their kernel pair.
  FinFn swap(pb.along_first.set, pb.along_second.set, {0, 2, 1, 3});
  DescentDatum bad{over, IsoCertificate{swap, swap}};
  EXPECT_THROW(glue_descent_data(f, bad), Error);
  EXPECT_THROW(glue_descent_data(FinFn(FinSet(1), FinSet(2), {0}), DescentDatum{}), Error);
}

TEST(Descent, MorphismsOfCanonicalDataAreMapsOverTheBase) {
  FinFn f(FinSet(3), FinSet(2), {0, 0, 1});
  FinFn a(FinSet(2), FinSet(2), {0, 1}), b(FinSet(3), FinSet(2), {1, 0, 0});
  // Maps a -> b over X: 2 * 1.
  EXPECT_EQ(count_descent_morphisms(f, canonical_descent_datum(f, a), canonical_descent_datum(f, b)), 2u);
  EXPECT_EQ(count_descent_morphisms(f, canonical_descent_datum(f, b), canonical_descent_datum(f, a)), 1u);
}
