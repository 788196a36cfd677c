#include <gtest/gtest.h>

#include "frobundle/adjunction.hpp"

using namespace frobundle;

namespace {

std::vector<FinFn> all_maps(Index t, Index u) {
  std::vector<FinFn> out;
  for_each_function(t, u, [&](const std::vector<Index>& tab) { out.emplace_back(FinSet(t), FinSet(u), tab); });
  return out;
}

}  // namespace

TEST(PullbackAdjunction, TrianglesAndStableFrobeniusForEveryMap) {
  FinSetCat k;
  FrobeniusBounds b{3, 3, 2};
  for (Index t = 0; t <= 3; ++t)
    for (Index u = 0; u <= 2; ++u)
      for (const auto& f : all_maps(t, u)) {
        auto adj = pullback_adjunction(k, f);
        auto as = family(adj.target, b.c_carrier);
        auto ws = family(adj.source, b.d_carrier);
        EXPECT_TRUE(check_triangles(adj, as, ws).pass);
        EXPECT_TRUE(check_naturality(adj, morphisms_among(adj.target, as), morphisms_among(adj.source, ws)).pass);
        auto r = check_stably_frobenius(adj, b);
        EXPECT_TRUE(r.pass) << (r.witnesses.empty() ? "" : r.witnesses.front());
        EXPECT_GT(r.cases, 0u);
      }
}

TEST(PullbackAdjunction, FrobeniusMapOfIdentityIsIdentity) {
  FinSetCat k;
  FinFn id = FinFn::identity(FinSet(2));
  auto adj = pullback_adjunction(k, id);
  for (const auto& a : family(adj.target, 3))
    for (const auto& w : family(adj.source, 3)) {
      auto m = frobenius_map(adj, a, w);
      EXPECT_TRUE(is_bijection(m.map));
      EXPECT_EQ(m.dom, m.cod);
      EXPECT_EQ(m.map, FinFn::identity(m.dom.dom()));
    }
}

TEST(PullbackAdjunction, CorruptedCounitIsDetected) {
  FinSetCat k;
  auto adj = pullback_adjunction(k, FinFn(FinSet(2), FinSet(1), {0, 0}));
  using S = SliceCat<FinSetCat>;
  auto counit = adj.counit;
  adj.counit = [counit](const FinFn& h) {
    auto e = counit(h);
    std::vector<Index> t(e.map.dom().size(), 0);
    return S::Morphism{e.dom, e.cod, FinFn(e.map.dom(), e.map.cod(), t)};
  };
  auto as = family(adj.target, 3);
  auto ws = family(adj.source, 2);
  EXPECT_FALSE(check_frobenius(adj, as, ws).pass);
  EXPECT_FALSE(check_triangles(adj, as, ws).pass);
}

TEST(Composition, TerminalEquivalenceThenPullbackAlongIdentity) {
  FinSetCat k;
  auto eq = terminal_slice_equivalence(k);
  auto pb = pullback_adjunction(k, FinFn::identity(FinSet(1)));
  auto both = compose(pb, eq);
  auto as = family(both.target, 3);
  auto ws = family(both.source, 3);
  EXPECT_TRUE(check_triangles(both, as, ws).pass);
  EXPECT_TRUE(check_frobenius(both, as, ws).pass);
}

TEST(SliceAdjunction, SlicingPullbackAdjunctionKeepsFrobenius) {
  FinSetCat k;
  FinFn f(FinSet(3), FinSet(2), {0, 1, 1});
  auto adj = pullback_adjunction(k, f);
  auto bases = family(adj.target, 2);
  for (const auto& b : bases) {
    auto s = slice_adjunction(adj, b);
    auto as = sliced_family(s.target, 2);
    auto ws = sliced_family(s.source, 2);
    EXPECT_TRUE(check_triangles(s, as, ws).pass);
    EXPECT_TRUE(check_frobenius(s, as, ws).pass);
  }
}

TEST(CheckReport, KeepsAtMostFiveWitnesses) {
  CheckReport r{"x"};
  for (int i = 0; i < 9; ++i) r.fail(std::to_string(i));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.witnesses.size(), CheckReport::kMaxWitnesses);
}
