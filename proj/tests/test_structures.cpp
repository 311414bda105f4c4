#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cslab/oracle.hpp"
#include "cslab/structures.hpp"

using namespace cslab;

namespace {

OpTable z4_dot() {
  // x.y = 3^x y mod 4
  return OpTable::generate(4, [](Index x, Index y) { return (x % 2 ? 3 * y : y) % 4; });
}

OpTable z4_circ() {
  return OpTable::generate(4, [](Index x, Index y) { return (x + (x % 2 ? 3 * y : y)) % 4; });
}

}  // namespace

TEST(CycleSet, Examples) {
  EXPECT_TRUE(verify_cycle_set(OpTable::generate(3, [](Index, Index y) { return y; })));
  const auto shift = OpTable::generate(2, [](Index, Index y) { return (y + 1) % 2; });
  EXPECT_TRUE(verify_cycle_set(shift));
  EXPECT_TRUE(verify_nondegenerate(shift));
  const auto bad = verify_cycle_set(OpTable::generate(2, [](Index x, Index) { return x; }));
  EXPECT_FALSE(bad);
  EXPECT_EQ(bad.condition, "bijectivity");
  EXPECT_EQ(bad.witness, (std::vector<Int>{0}));
  EXPECT_THROW(OpTable::from_rows({{0, 1}, {0}}), std::invalid_argument);
  EXPECT_THROW(OpTable::from_rows({{0, 2}, {0, 1}}), std::invalid_argument);
}

TEST(CycleSet, FiniteCycleSetsAreNondegenerate) {
  // isomorphism classes of involutive solutions on 1..4 points: 1, 2, 5, 23
  const std::vector<std::size_t> classes{1, 2, 5, 23};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = enumerate_cycle_sets(n);
    std::set<OpTable> canon;
    for (const auto& t : all) {
      ASSERT_TRUE(verify_nondegenerate(t));
      Permutation p = identity_permutation(n);
      OpTable best = t;
      do {
        // relabel by p: (p x).(p y) = p(x.y)
        OpTable r(n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) r.set(p[x], p[y], p[t(x, y)]);
        best = std::min(best, r);
      } while (std::next_permutation(p.begin(), p.end()));
      canon.insert(best);
    }
    EXPECT_EQ(canon.size(), classes[n - 1]) << n;
  }
}

TEST(Lcs, Examples) {
  const auto z4 = make_group({4});
  EXPECT_TRUE(verify_linear_cycle_set(trivial_lcs(z4)));
  EXPECT_TRUE(verify_linear_cycle_set(LinearCycleSet::on_group(z4, z4_dot())));
}

TEST(Lcs, DistributivityWitness) {
  // rows of x.y = x + y are bijective but not additive
  const auto z2 = make_group({2});
  const auto v = verify_linear_cycle_set(LinearCycleSet::on_group(z2, OpTable::generate(2, [](Index x, Index y) { return (x + y) % 2; })));
  EXPECT_FALSE(v);
  EXPECT_EQ(v.condition, "distributivity");
  EXPECT_EQ(v.witness[0], 1);
}

TEST(Lcs, TrivialShapes) {
  EXPECT_EQ(trivial_lcs(make_group({2})).dot.rows(), (std::vector<std::vector<Int>>{{0, 1}, {0, 1}}));
  EXPECT_EQ(trivial_lcs(make_group({})).size(), 1u);
  EXPECT_TRUE(verify_linear_cycle_set(trivial_lcs(make_group({2, 2}))));
}

TEST(Brace, Examples) {
  const auto z4 = make_group({4});
  EXPECT_TRUE(verify_brace(trivial_brace(z4)));
  const auto b = Brace::on_group(z4, z4_circ());
  EXPECT_TRUE(verify_brace(b));
  EXPECT_EQ(brace_to_lcs(b).dot, z4_dot());
  EXPECT_EQ(brace_to_lcs(trivial_brace(z4)).dot, trivial_lcs(z4).dot);
  EXPECT_EQ(lcs_to_brace(LinearCycleSet::on_group(z4, z4_dot())).circ, z4_circ());
  EXPECT_EQ(lcs_to_brace(trivial_lcs(z4)).circ, z4.addition_table());

  // non-associative circle table with zero as identity
  auto t = z4.addition_table();
  t.set(1, 1, 3);
  t.set(1, 3, 1);
  t.set(3, 1, 1);
  t.set(3, 3, 3);
  EXPECT_FALSE(verify_brace(Brace::on_group(z4, t)));
}

TEST(Enumerate, AgainstAssignmentSearch) {
  for (const auto& f : std::vector<std::vector<Int>>{{}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}}) {
    const auto g = make_group(f);
    const auto fast = enumerate_lcs(g);
    std::vector<OpTable> tables;
    for (const auto& l : fast) tables.push_back(l.dot);
    EXPECT_EQ(tables, oracle::lcs_tables(g)) << g.order();
  }
  EXPECT_EQ(enumerate_lcs(make_group({2})).size(), 1u);
  EXPECT_EQ(enumerate_lcs(make_group({})).size(), 1u);
  const auto z4 = enumerate_lcs(make_group({4}));
  std::set<OpTable> s;
  for (const auto& l : z4) s.insert(l.dot);
  EXPECT_TRUE(s.count(trivial_lcs(make_group({4})).dot));
  EXPECT_TRUE(s.count(z4_dot()));
  EXPECT_THROW(enumerate_lcs(make_group({9})), SizeBoundError);
}

TEST(Enumerate, RoundTripUpToOrderEight) {
  for (const auto& f : std::vector<std::vector<Int>>{{}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2}}) {
    const auto g = make_group(f);
    for (const auto& l : enumerate_lcs(g)) {
      ASSERT_TRUE(verify_cycle_set(l.dot));
      for (std::size_t x = 0; x < l.size(); ++x)
        for (std::size_t y = 0; y < l.size(); ++y)
          for (std::size_t z = 0; z < l.size(); ++z) ASSERT_EQ(l.dot(x, l.plus(y, z)), l.plus(l.dot(x, y), l.dot(x, z)));
      const auto b = lcs_to_brace(l);
      ASSERT_TRUE(brace_to_lcs(b) == l);
      ASSERT_EQ(lcs_to_brace(brace_to_lcs(b)).circ, b.circ);
    }
  }
}

TEST(Braid, Examples) {
  PairMap flip{3, {}}, id{3, {}};
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) {
      flip.r.push_back({y, x});
      id.r.push_back({x, y});
    }
  EXPECT_TRUE(verify_braid(flip).braid);
  EXPECT_TRUE(verify_braid(flip).left_nondegenerate);
  EXPECT_TRUE(verify_braid(id).braid);
  // S(x,y) = (y, y*x) with * not left distributive on two points
  const OpTable star = OpTable::from_rows({{1, 0}, {0, 0}});
  ASSERT_FALSE(verify_rack(star));
  const BiGroupoid bg{OpTable::generate(2, [](Index, Index y) { return y; }), star};
  const auto rep = verify_braid(bigroupoid_map(bg));
  EXPECT_FALSE(rep.braid);
  EXPECT_EQ(rep.braid.witness.size(), 3u);
}

TEST(Braid, AllTwoElementBiGroupoids) {
  int both_pass = 0;
  for (int code = 0; code < 256; ++code) {
    OpTable a(2), b(2);
    for (int k = 0; k < 4; ++k) {
      a.set(k / 2, k % 2, (code >> k) & 1);
      b.set(k / 2, k % 2, (code >> (4 + k)) & 1);
    }
    const auto e = bigroupoid_ybe_equivalence({a, b});
    ASSERT_TRUE(e.agree());
    both_pass += e.braid.ok;
  }
  EXPECT_GT(both_pass, 0);
}

TEST(Braid, TrivialDotMeansRack) {
  const auto triv = OpTable::generate(3, [](Index, Index y) { return y; });
  const auto dihedral = OpTable::generate(3, [](Index x, Index y) { return (2 * x + 2 * y) % 3; });  // 2x - y
  ASSERT_TRUE(verify_rack(dihedral));
  EXPECT_TRUE(bigroupoid_ybe_equivalence({triv, dihedral}).braid);
  // constant tables are left distributive, so they pass
  const auto two = OpTable::generate(2, [](Index, Index y) { return y; });
  EXPECT_TRUE(bigroupoid_ybe_equivalence({two, OpTable::from_rows({{1, 1}, {1, 1}})}).braid);
  const OpTable skewed = OpTable::from_rows({{1, 0}, {0, 0}});
  ASSERT_FALSE(verify_rack(skewed));
  const auto e = bigroupoid_ybe_equivalence({two, skewed});
  EXPECT_FALSE(e.braid);
  EXPECT_FALSE(e.conditions);
}

TEST(Rack, AbelianRacks) {
  const auto triv = abelian_rack_to_cycle_set({OpTable::generate(3, [](Index, Index y) { return y; })});
  ASSERT_TRUE(triv.cycle_set.has_value());
  // dihedral: x*(y*z) = 2x - 2y + z, y*(x*z) = 2y - 2x + z; equal only when x == y
  const auto dih = abelian_rack_to_cycle_set({OpTable::generate(3, [](Index x, Index y) { return (2 * x + 2 * y) % 3; })});
  EXPECT_FALSE(dih.verdict);
  EXPECT_EQ(dih.verdict.condition, "not-abelian");
  EXPECT_FALSE(dih.cycle_set.has_value());

  // all racks on 3 points passing the condition are cycle sets
  int abelian = 0;
  std::vector<Permutation> perms;
  Permutation p = identity_permutation(3);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (const auto& a : perms)
    for (const auto& b : perms)
      for (const auto& c : perms) {
        OpTable s(3);
        for (Index y = 0; y < 3; ++y) {
          s.set(0, y, a[y]);
          s.set(1, y, b[y]);
          s.set(2, y, c[y]);
        }
        if (!verify_rack(s)) continue;
        const auto r = abelian_rack_to_cycle_set({s});
        if (r.cycle_set) {
          ++abelian;
          ASSERT_TRUE(verify_cycle_set(r.cycle_set->dot));
        }
      }
  EXPECT_GT(abelian, 1);
}
