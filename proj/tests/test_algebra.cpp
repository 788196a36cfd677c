#include <gtest/gtest.h>

#include "frobundle/algebra.hpp"
#include "frobundle/torsor.hpp"
#include "mutations.hpp"
#include "oracle.hpp"

using namespace frobundle;

namespace {

const std::filesystem::path kFixtures = FROBUNDLE_FIXTURES_DIR;

std::vector<mutation::GroupTables> fixture_groups() {
  std::vector<mutation::GroupTables> out;
  for (const auto& p : mutation::sorted_json(kFixtures / "groups")) out.push_back(mutation::group_tables(mutation::read_json(p)));
  return out;
}

std::vector<mutation::GroupoidTables> fixture_groupoids() {
  std::vector<mutation::GroupoidTables> out;
  for (const auto& p : mutation::sorted_json(kFixtures / "groupoids"))
    out.push_back(mutation::groupoid_tables(mutation::read_json(p)));
  return out;
}

Algebra group_of(const mutation::GroupTables& g) {
  return make_algebra(FinGroup::validate(g.mul.size(), g.mul, g.unit, g.inv));
}

std::vector<std::vector<Index>> rows_of(const ActionObject& a) {
  std::vector<std::vector<Index>> rows(a.algebra()->arrows(), std::vector<Index>(a.size()));
  for (Index g = 0; g < rows.size(); ++g)
    for (Index x = 0; x < a.size(); ++x) rows[g][x] = a.act(g, x);
  return rows;
}

}  // namespace

TEST(Fixtures, EveryGroupOfOrderAtMostEightValidates) {
  auto groups = fixture_groups();
  ASSERT_EQ(groups.size(), 14u);
  std::map<Index, Index> by_order;
  for (const auto& g : groups) {
    EXPECT_TRUE(oracle::is_group(g.mul, g.unit, g.inv)) << g.name;
    EXPECT_NO_THROW(group_of(g)) << g.name;
    ++by_order[g.mul.size()];
  }
  // Groups of order 1..8 up to isomorphism: 1, 1, 1, 2, 1, 2, 1, 5.
  std::map<Index, Index> expect{{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 1}, {6, 2}, {7, 1}, {8, 5}};
  EXPECT_EQ(by_order, expect);
}

TEST(Fixtures, GroupoidsValidate) {
  for (const auto& g : fixture_groupoids()) {
    EXPECT_TRUE(oracle::is_groupoid(g.objects, g.src, g.tgt, g.ident, g.comp, g.inv)) << g.name;
    EXPECT_NO_THROW(FinGroupoid::validate(g.objects, g.src.size(), g.src, g.tgt, g.ident, g.comp, g.inv)) << g.name;
  }
}

TEST(Validation, MutantsFailWithCorrectWitness) {
  auto mutants = mutation::make_mutants(fixture_groups(), fixture_groupoids(), 14, 6);
  ASSERT_EQ(mutants.size(), 20u);
  for (const auto& m : mutants) {
    std::string why;
    EXPECT_TRUE(mutation::rejected_with_witness(m, &why)) << m.label << ": " << why;
  }
}

TEST(Validation, NonAssociativeTableReportsTriple) {
  // A Latin square with identity 0 and self-inverse elements that is not a group.
  std::vector<std::vector<Index>> mul{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FinGroup::validate(5, mul, 0, {0, 1, 2, 3, 4});
    FAIL();
  } catch (const Error& e) {
    ASSERT_EQ(e.kind(), ErrorKind::NotAssociative);
    ASSERT_EQ(e.witness().size(), 3u);
    EXPECT_FALSE(oracle::associative_at(mul, e.witness()[0], e.witness()[1], e.witness()[2]));
  }
}

TEST(Validation, ShapeErrors) {
  EXPECT_THROW(FinGroup::validate(0, {}, 0, {}), Error);
  EXPECT_THROW(FinGroup::validate(2, {{0, 1}}, 0, {0, 1}), Error);
  EXPECT_THROW(FinGroup::validate(2, {{0, 1}, {1, 2}}, 0, {0, 1}), Error);
}

TEST(Actions, Z2ActionCountsAreInvolutionCounts) {
  // Oracle: Z/2 actions on n points are involutions, 1, 1, 2, 4, 10.
  Algebra z2 = make_algebra(cyclic_group(2));
  const Index expect[] = {1, 1, 2, 4, 10};
  for (Index n = 0; n <= 4; ++n) {
    auto acts = enumerate_actions(z2, FinFn::constant(FinSet(n), FinSet(1), 0));
    EXPECT_EQ(acts.size(), expect[n]);
    EXPECT_EQ(acts.size(), oracle::group_actions(cyclic_group(2).mul_rows(), 0, n).size());
  }
}

TEST(Actions, EnumerationMatchesBruteForceForSmallGroups) {
  for (const auto& g : fixture_groups()) {
    if (g.mul.size() > 4) continue;
    Algebra alg = group_of(g);
    for (Index n = 0; n <= 3; ++n) {
      auto acts = enumerate_actions(alg, FinFn::constant(FinSet(n), FinSet(1), 0));
      EXPECT_EQ(acts.size(), oracle::group_actions(g.mul, g.unit, n).size()) << g.name << " on " << n;
    }
  }
}

TEST(Actions, RejectsBrokenLaws) {
  Algebra z2 = make_algebra(cyclic_group(2));
  EXPECT_THROW(validate_action(z2, FinSet(2), {{1, 0}, {1, 0}}), Error);  // unit moves points
  EXPECT_THROW(validate_action(z2, FinSet(2), {{0, 1}, {0, 0}}), Error);  // g.g.x != x
  EXPECT_NO_THROW(validate_action(z2, FinSet(2), {{0, 1}, {1, 0}}));
}

TEST(Sigma, RegularActionHasOneOrbit) {
  for (const auto& g : fixture_groups()) {
    Algebra alg = group_of(g);
    EXPECT_EQ(sigma(self_action(alg)).set.size(), 1u) << g.name;
  }
}

TEST(Sigma, OrbitCountsMatchFloodFill) {
  auto groups = fixture_groups();
  auto it = std::find_if(groups.begin(), groups.end(), [](const auto& g) { return g.name == "s3"; });
  ASSERT_NE(it, groups.end());
  Algebra s3 = group_of(*it);
  for (Index n = 0; n <= 4; ++n)
    for (const auto& a : enumerate_actions(s3, FinFn::constant(FinSet(n), FinSet(1), 0)))
      EXPECT_EQ(sigma(a).set.size(), oracle::orbit_count(rows_of(a), n));
}

TEST(Sigma, TrivialActionIsIdentity) {
  for (const auto& g : fixture_groups()) {
    Algebra alg = group_of(g);
    for (Index x = 0; x <= 3; ++x) {
      Quotient q = sigma(trivial_action(alg, FinSet(x)));
      EXPECT_EQ(q.set.size(), x);
      EXPECT_TRUE(is_bijection(q.map));
    }
  }
}

TEST(Sigma, GroupoidSelfActionHasOneOrbitPerObject) {
  for (Index n = 1; n <= 3; ++n) {
    EXPECT_EQ(sigma(self_action(make_algebra(discrete_groupoid(n)))).set.size(), n);
    EXPECT_EQ(sigma(self_action(make_algebra(codiscrete_groupoid(n)))).set.size(), n);
  }
}

TEST(Untwist, CertificatesForAllSmallActions) {
  for (const auto& g : fixture_groups()) {
    if (g.mul.size() > 4) continue;
    Algebra alg = group_of(g);
    for (Index n = 0; n <= 3; ++n)
      for (const auto& a : enumerate_actions(alg, FinFn::constant(FinSet(n), FinSet(1), 0))) {
        UntwistIso u = untwist_iso(a);
        EXPECT_TRUE(u.certificate.valid());
        EXPECT_FALSE(equivariance_violation(u.untwisted, u.twisted, u.forward.map));
        EXPECT_FALSE(equivariance_violation(u.twisted, u.untwisted, u.backward.map));
      }
  }
}

TEST(Untwist, RejectsGroupoids) {
  Algebra d2 = make_algebra(discrete_groupoid(2));
  EXPECT_THROW(untwist_iso(self_action(d2)), Error);
}

TEST(Equivariance, MapCountsMatchBruteForce) {
  Algebra z2 = make_algebra(cyclic_group(2));
  auto acts = enumerate_actions(z2, FinFn::constant(FinSet(2), FinSet(1), 0));
  for (const auto& a : acts)
    for (const auto& b : acts) {
      Index brute = 0;
      for_each_function(2, 2, [&](const std::vector<Index>& t) {
        bool ok = true;
        for (Index g = 0; g < 2; ++g)
          for (Index x = 0; x < 2; ++x) ok = ok && t[a.act(g, x)] == b.act(g, t[x]);
        brute += ok;
      });
      EXPECT_EQ(equivariant_maps(a, b).size(), brute);
    }
}

TEST(ActionCat, StandardFamilyIsClosedUnderIsoClassesForZ2) {
  // Z/2-sets of size k up to iso: pairs (fixed points, free orbits), so
  // 1 + 1 + 2 + 2 + 3 objects of size 0..4.
  ActionCat cat(make_algebra(cyclic_group(2)));
  EXPECT_EQ(cat.objects(4).size(), 9u);
}
