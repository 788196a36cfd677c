#include <gtest/gtest.h>

#include <map>
#include <set>

#include "frobundle/category.hpp"
#include "frobundle/finset.hpp"

using namespace frobundle;

TEST(FinFn, RejectsOutOfRangeEntryWithIndex) {
  try {
    FinFn(FinSet(3), FinSet(2), {0, 2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTable);
    EXPECT_EQ(e.witness(), std::vector<Index>{1});
  }
  EXPECT_THROW(FinFn(FinSet(2), FinSet(2), {0}), Error);
}

TEST(FinFn, ComposeIsAssociativeAndUnital) {
  FinFn f(FinSet(3), FinSet(2), {1, 0, 1});
  FinFn g(FinSet(2), FinSet(4), {3, 2});
  FinFn h(FinSet(4), FinSet(1), {0, 0, 0, 0});
  EXPECT_EQ(compose(h, compose(g, f)), compose(compose(h, g), f));
  EXPECT_EQ(compose(g, FinFn::identity(FinSet(2))), g);
  EXPECT_EQ(compose(g, f).table(), (std::vector<Index>{2, 3, 2}));
  EXPECT_THROW(compose(f, f), Error);
}

TEST(FinFn, BijectionPredicatesAgreeWithCounting) {
  // Over all maps 3 -> 3: 6 bijections, and injective == surjective == bijective.
  Index bij = 0;
  for_each_function(3, 3, [&](const std::vector<Index>& t) {
    FinFn f(FinSet(3), FinSet(3), t);
    EXPECT_EQ(is_injection(f), is_surjection(f));
    EXPECT_EQ(is_bijection(f), std::set<Index>(t.begin(), t.end()).size() == 3);
    if (is_bijection(f)) {
      ++bij;
      EXPECT_TRUE(IsoCertificate::from_bijection(f).valid());
    }
  });
  EXPECT_EQ(bij, 6u);
  Index surj = 0;
  for_each_function(4, 2, [&](const std::vector<Index>& t) { surj += is_surjection(FinFn(FinSet(4), FinSet(2), t)); });
  EXPECT_EQ(surj, 14u);  // 2^4 - 2
}

TEST(FinSet, LabelsMustBeDistinct) {
  EXPECT_EQ(FinSet(std::vector<std::string>{"a", "b"}).size(), 2u);
  EXPECT_THROW(FinSet(std::vector<std::string>{"a", "a"}), Error);
}

TEST(Product, RowMajorOrder) {
  Product p = product(FinSet(2), FinSet(3));
  ASSERT_EQ(p.set.size(), 6u);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j) {
      Index k = p.pair(i, j);
      EXPECT_EQ(k, i * 3 + j);
      EXPECT_EQ(p.first(k), i);
      EXPECT_EQ(p.second(k), j);
    }
}

TEST(Pullback, LexicographicAndUniversal) {
  FinFn f(FinSet(3), FinSet(2), {0, 1, 0});
  FinFn g(FinSet(2), FinSet(2), {0, 0});
  Pullback pb = pullback(f, g);
  std::vector<std::pair<Index, Index>> expect{{0, 0}, {0, 1}, {2, 0}, {2, 1}};
  EXPECT_EQ(pb.elements, expect);
  EXPECT_EQ(pb.find(1, 0), npos);
  EXPECT_EQ(compose(f, pb.first), compose(g, pb.second));
}

TEST(Quotient, ClassesNumberedByLeastMember) {
  Quotient q = quotient(FinSet(5), {{4, 1}, {3, 2}});
  EXPECT_EQ(q.set.size(), 3u);
  EXPECT_EQ(q.map.table(), (std::vector<Index>{0, 1, 2, 2, 1}));
  EXPECT_EQ(q.representative, (std::vector<Index>{0, 1, 2}));
}

TEST(Quotient, CoequalizerMatchesBruteForce) {
  // Oracle: size of the coequalizer equals the number of connected
  // components of the graph with an edge f(x) - g(x); recomputed by
  // repeated relabelling to a fixed point.
  for_each_function(2, 4, [&](const std::vector<Index>& ft) {
    for_each_function(2, 4, [&](const std::vector<Index>& gt) {
      FinFn f(FinSet(2), FinSet(4), ft), g(FinSet(2), FinSet(4), gt);
      std::vector<Index> label{0, 1, 2, 3};
      for (bool changed = true; changed;) {
        changed = false;
        for (Index x = 0; x < 2; ++x) {
          Index lo = std::min(label[ft[x]], label[gt[x]]);
          for (Index& l : label)
            if ((l == label[ft[x]] || l == label[gt[x]]) && l != lo) {
              l = lo;
              changed = true;
            }
        }
      }
      Quotient q = coequalizer(f, g);
      EXPECT_EQ(q.set.size(), std::set<Index>(label.begin(), label.end()).size());
      EXPECT_EQ(compose(q.map, f), compose(q.map, g));
    });
  });
}

TEST(Quotient, FactorThrough) {
  Quotient q = quotient(FinSet(3), {{0, 2}});
  auto ok = factor_through(q, FinFn(FinSet(3), FinSet(2), {1, 0, 1}));
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->table(), (std::vector<Index>{1, 0}));
  EXPECT_FALSE(factor_through(q, FinFn(FinSet(3), FinSet(2), {1, 0, 0})).has_value());
}

TEST(Slices, CountUpToIsoMatchesFiberVectors) {
  // Iso classes of slices over X with total at most k are vectors of fiber
  // sizes summing to at most k: C(k + |X|, |X|).
  auto binom = [](Index n, Index r) {
    Index v = 1;
    for (Index i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
  };
  for (Index x = 0; x <= 3; ++x)
    for (Index k = 0; k <= 4; ++k) EXPECT_EQ(slices_up_to_iso(FinSet(x), k).size(), binom(k + x, x)) << x << " " << k;
}

TEST(SliceCat, TrianglesCommuteAndIsosExist) {
  SetSlice s = slice_of_sets(FinSet(2));
  auto objs = family(s, 3);
  EXPECT_EQ(objs.size(), 10u);  // C(5, 2)
  auto ms = morphisms_among(s, objs);
  EXPECT_FALSE(ms.empty());
  for (const auto& m : ms) EXPECT_EQ(compose(m.cod, m.map), m.dom);
  for (const auto& a : objs) {
    auto iso = find_iso(s, a, a);
    ASSERT_TRUE(iso.has_value());
    EXPECT_TRUE(is_iso(s, *iso));
  }
  FinFn both(FinSet(2), FinSet(2), {0, 1});
  EXPECT_THROW(s.make(both, both, FinFn(FinSet(2), FinSet(2), {1, 0})), Error);
}

TEST(SliceCat, HomCountsMatchFiberwiseProduct) {
  // Maps over X from A to B: product over x of |B_x|^|A_x|.
  SetSlice s = slice_of_sets(FinSet(2));
  FinFn a(FinSet(3), FinSet(2), {0, 0, 1}), b(FinSet(3), FinSet(2), {1, 0, 1});
  EXPECT_EQ(s.homs(a, b).size(), 1u * 2u);  // 1^2 * 2^1
  EXPECT_EQ(s.homs(b, a).size(), 2u * 1u);  // 2^1 * 1^2
}
