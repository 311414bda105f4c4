#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cslab/abelian.hpp"
#include "cslab/oracle.hpp"

using namespace cslab;

namespace {

std::vector<std::vector<Int>> as_rows(const IntMatrix& m) {
  std::vector<std::vector<Int>> r;
  for (std::size_t i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
  return r;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, Int lo, Int hi) {
  std::uniform_int_distribution<Int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Smith, TwoByTwo) {
  const auto s = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(s.diagonal_entries(), (std::vector<Int>{2, 4}));
  const IntMatrix m{{2, 4}, {6, 8}};
  EXPECT_EQ(s.left * m * s.right, s.diagonal);
}

TEST(Smith, ExactAgainstDeterminantalDivisors) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix m = random_matrix(rng, r, c, -9, 9);
    const auto s = smith_normal_form(m);
    ASSERT_EQ(s.left * m * s.right, s.diagonal);
    ASSERT_EQ(s.left * s.left_inverse, IntMatrix::identity(r));
    ASSERT_EQ(s.right * s.right_inverse, IntMatrix::identity(c));
    std::vector<Int> nonzero;
    for (Int d : s.diagonal_entries())
      if (d != 0) nonzero.push_back(d);
    for (std::size_t i = 0; i + 1 < nonzero.size(); ++i) ASSERT_EQ(nonzero[i + 1] % nonzero[i], 0);
    ASSERT_EQ(nonzero, oracle::smith_diagonal(as_rows(m))) << trial;
  }
}

TEST(Smith, ModularMatchesExactGcd) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 3) % 4;
    const Int n = std::vector<Int>{4, 6, 8, 12, 30, 36}[trial % 6];
    const IntMatrix m = random_matrix(rng, r, c, -20, 20);
    const auto exact = smith_normal_form(m);
    const auto mod = smith_normal_form(m, n);
    ASSERT_EQ((mod.left * m * mod.right).reduced(n), mod.diagonal.reduced(n));
    ASSERT_EQ((mod.left * mod.left_inverse).reduced(n), IntMatrix::identity(r).reduced(n));
    for (std::size_t i = 0; i < std::min(r, c); ++i) ASSERT_EQ(mod.factor_order(i), std::gcd(exact.diagonal(i, i), n)) << trial;
  }
}

TEST(Smith, OverflowIsReported) {
  const Int big = Int{1} << 62;
  EXPECT_THROW(smith_normal_form(IntMatrix{{big, big - 1}, {big - 3, big}}), std::overflow_error);
}

TEST(Group, MakeNormalises) {
  EXPECT_EQ(make_group({2, 3}).invariant_factors(), (std::vector<Int>{6}));
  EXPECT_EQ(make_group({4, 2}).invariant_factors(), (std::vector<Int>{2, 4}));
  EXPECT_EQ(make_group({1, 1}).invariant_factors(), (std::vector<Int>{}));
  EXPECT_EQ(make_group({6, 10, 1}).invariant_factors(), (std::vector<Int>{2, 30}));
  EXPECT_THROW(make_group({0}), std::invalid_argument);
}

TEST(Group, IndexingRoundTrip) {
  const auto g = make_group({2, 4});
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.index_of(g.zero()), 0u);
  for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element(i)), i);
  EXPECT_EQ(g.element(5), (Element{1, 1}));
}

TEST(Solve, Examples) {
  auto x = solve_mod(IntMatrix{{2}}, {1}, {4});
  EXPECT_FALSE(x.has_value());
  x = solve_mod(IntMatrix{{2}}, {2}, {4});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(floor_mod(2 * (*x)[0], 4), 2);
  // parities of x + y disagree
  EXPECT_FALSE(solve_mod(IntMatrix{{3, 5}, {1, 1}}, {1, 2}, {6, 4}).has_value());
  x = solve_mod(IntMatrix{{3, 5}, {1, 1}}, {1, 3}, {6, 4});
  ASSERT_TRUE(x.has_value());
}

TEST(Solve, AgainstExhaustiveSearch) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
    const IntMatrix m = random_matrix(rng, r, c, 0, 11);
    std::vector<Int> moduli, b;
    for (std::size_t i = 0; i < r; ++i) {
      moduli.push_back(std::vector<Int>{2, 3, 4, 6, 12}[(trial + i) % 5]);
      b.push_back(rng() % 12);
    }
    bool exists = false;
    std::vector<Int> v(c, 0);
    for (;;) {
      const auto y = m.apply(v);
      bool ok = true;
      for (std::size_t i = 0; i < r; ++i) ok = ok && floor_mod(y[i] - b[i], moduli[i]) == 0;
      exists = exists || ok;
      std::size_t k = 0;
      while (k < c && ++v[k] == 12) v[k++] = 0;
      if (k == c) break;
    }
    EXPECT_EQ(solve_mod(m, b, moduli).has_value(), exists) << trial;
  }
}

TEST(Hom, KernelOfDoubling) {
  const auto z4 = make_group({4});
  const auto dbl = GroupHom::from_images(z4, z4, {{2}});
  const auto ker = kernel(dbl);
  EXPECT_EQ(ker.structure().invariant_factors(), (std::vector<Int>{2}));
  EXPECT_TRUE(ker.contains({2}));
  EXPECT_FALSE(ker.contains({1}));
  EXPECT_EQ(image(dbl).structure().invariant_factors(), (std::vector<Int>{2}));
  EXPECT_THROW(GroupHom::from_images(z4, make_group({2}), {}), std::invalid_argument);
  EXPECT_THROW(GroupHom::from_images(make_group({2}), z4, {{1}}), std::invalid_argument);
}

TEST(Hom, KernelAndImageAgainstCounting) {
  std::mt19937 rng(5);
  const std::vector<std::vector<Int>> shapes{{2, 4}, {6}, {2, 2, 2}, {3, 9}, {4, 4}, {2, 6}};
  for (int trial = 0; trial < 120; ++trial) {
    const auto d = make_group(shapes[trial % shapes.size()]);
    const auto c = make_group(shapes[(trial / 6) % shapes.size()]);
    // random well-defined hom: image of generator j killed by d_j
    std::vector<Element> imgs;
    for (std::size_t j = 0; j < d.rank(); ++j) {
      std::vector<Element> ok;
      for (std::size_t i = 0; i < c.order(); ++i)
        if (c.scale(d.invariant_factors()[j], c.element(i)) == c.zero()) ok.push_back(c.element(i));
      imgs.push_back(ok[rng() % ok.size()]);
    }
    const auto h = GroupHom::from_images(d, c, imgs);
    std::size_t ker_count = 0;
    std::set<Index> img;
    for (std::size_t i = 0; i < d.order(); ++i) {
      const auto y = h(d.element(i));
      ker_count += y == c.zero();
      img.insert(c.index_of(y));
    }
    const auto ker = kernel(h);
    ASSERT_EQ(ker.order(), ker_count) << trial;
    for (const auto& e : ker.elements()) ASSERT_EQ(h(e), c.zero());
    ASSERT_EQ(image(h).order(), img.size());
    ASSERT_EQ(ker.structure().invariant_factors(), oracle::quotient_invariants(d, ker.generators(), {}));
  }
}

TEST(Subgroups, QuotientAgainstCounting) {
  std::mt19937 rng(9);
  const std::vector<std::vector<Int>> shapes{{2, 4}, {12}, {2, 2, 4}, {3, 9}, {4, 8}, {2, 2, 2}};
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = make_group(shapes[trial % shapes.size()]);
    std::vector<Element> num, den;
    for (int k = 0; k < 3; ++k) num.push_back(g.element(rng() % g.order()));
    // denominator built from combinations of numerator generators
    for (int k = 0; k < 2; ++k) {
      Element e = g.zero();
      for (const auto& x : num) e = g.add(e, g.scale(static_cast<Int>(rng() % 5), x));
      den.push_back(e);
    }
    const SubgroupPresentation h(g, num), k(g, den);
    const auto q = quotient(h, k);
    ASSERT_EQ(q.group().invariant_factors(), oracle::quotient_invariants(g, num, den)) << trial;
    ASSERT_EQ(h.order(), oracle::span(g, num).size());
    // reduce is constant exactly on cosets
    const auto kspan = oracle::span(g, den);
    for (int s = 0; s < 20; ++s) {
      const Element x = h.elements()[rng() % h.order()];
      const Element y = g.add(x, g.element(kspan[rng() % kspan.size()]));
      ASSERT_EQ(q.reduce(x), q.reduce(y));
      ASSERT_EQ(q.reduce(q.lift(q.reduce(x))), q.reduce(x));
    }
  }
}

TEST(Subgroups, QuotientRejectsOutside) {
  const auto g = make_group({2, 2});
  const SubgroupPresentation h(g, {{1, 0}}), k(g, {{0, 1}});
  EXPECT_THROW(quotient(h, k), std::domain_error);
}

TEST(Automorphisms, KleinFour) {
  const auto v4 = make_group({2, 2});
  EXPECT_EQ(enumerate_automorphisms(v4).size(), 6u);
  EXPECT_EQ(enumerate_automorphisms(v4, {.brute_force = true}).size(), 6u);
}

TEST(Automorphisms, CountsAgainstBijections) {
  for (const auto& f : std::vector<std::vector<Int>>{{}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2}, {2, 2}}) {
    const auto a = make_group(f);
    const auto fast = enumerate_automorphisms(a);
    const auto slow = oracle::automorphisms(a);
    ASSERT_EQ(fast.size(), slow.size());
    std::set<Permutation> fs, ss(slow.begin(), slow.end());
    for (const auto& h : fast) fs.insert(h.as_map());
    ASSERT_EQ(fs, ss);
  }
  EXPECT_EQ(enumerate_automorphisms(make_group({3, 3})).size(), 48u);
  EXPECT_EQ(enumerate_automorphisms(make_group({2, 2, 2, 2})).size(), 20160u);
  EXPECT_THROW(enumerate_automorphisms(make_group({2, 2, 2, 2}), {.max_count = 100}), SizeBoundError);
  EXPECT_THROW(enumerate_automorphisms(make_group({128})), SizeBoundError);
}

TEST(Bilinear, SmallCases) {
  const auto b = bilinear_group(make_group({3}), make_group({3}));
  EXPECT_EQ(b.structure().invariant_factors(), (std::vector<Int>{3}));
  for (const auto& [g, a] : std::vector<std::pair<std::vector<Int>, std::vector<Int>>>{
           {{2}, {2}}, {{2, 2}, {2}}, {{4}, {2}}, {{2}, {4}}, {{4}, {4}}, {{2, 2}, {4}}, {{3}, {9}}, {{6}, {4}}}) {
    const auto gg = make_group(g), aa = make_group(a);
    EXPECT_EQ(bilinear_group(gg, aa).order(), oracle::bilinear_count(gg, aa));
  }
}
