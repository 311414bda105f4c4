#include <gtest/gtest.h>

#include <memory>
#include <set>

#include "cslab/oracle.hpp"
#include "cslab/wells.hpp"

using namespace cslab;

namespace {

LinearCycleSet z4_twisted() {
  return LinearCycleSet::on_group(make_group({4}), OpTable::generate(4, [](Index x, Index y) { return (x % 2 ? 3 * y : y) % 4; }));
}

// f(x,y) = xy on Z3
Cochain2 xy3() {
  auto c = Cochain2::zero(3);
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) c.f[x * 3 + y] = (x * y) % 3;
  return c;
}

Cochain2 scaled(const FinAbGroup& a, const Cochain2& c, Int k) {
  Cochain2 r = c;
  for (auto& v : r.f) v = a.index_of(a.scale(k, a.element(v)));
  for (auto& v : r.g) v = a.index_of(a.scale(k, a.element(v)));
  return r;
}

std::size_t pair_with(const WellsContext& ctx, const Permutation& phi, std::vector<Index> theta) { return *ctx.pairs().find(phi, theta); }

std::vector<Index> block(const CentralExtensionLCS& e) {
  std::vector<Index> b;
  for (std::size_t a = 0; a < e.m(); ++a) b.push_back(e.i(a));
  return b;
}

struct Instance {
  LinearCycleSet x;
  FinAbGroup a;
  std::unique_ptr<WellsContext> ctx;
  std::shared_ptr<WellsContext> gctx;  // shared by every X on the same (X,+)
  bool first_on_group = false;
  std::size_t order() const { return x.size() * a.order(); }
};

// every (X, A) with |X||A| <= 16 from enumerated structures, X nontrivial;
// contexts are built once per binary
const std::vector<Instance>& small_instances() {
  static const std::vector<Instance> out = [] {
    std::vector<Instance> v;
    const std::vector<std::vector<Int>> groups{{2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2}};
    for (const auto& gx : groups)
      for (const auto& ga : groups) {
        const auto gxg = make_group(gx), gag = make_group(ga);
        if (gxg.order() * gag.order() > 16) continue;
        std::shared_ptr<WellsContext> g;
        for (const auto& l : enumerate_lcs(gxg)) {
          const bool first = !g;
          if (first) g = std::make_shared<WellsContext>(l, gag, true);
          v.push_back({l, gag, std::make_unique<WellsContext>(l, gag), g, first});
        }
      }
    return v;
  }();
  return out;
}

// all classes for |E| <= 8 or small H^2, else zero, the generators and their sum
std::vector<Element> some_classes(const SecondCohomology& h, std::size_t e_order = 0) {
  if (h.order() <= 4 || (e_order <= 8 && h.order() <= 16)) return h.classes();
  std::vector<Element> out{h.group().zero()};
  Element sum = h.group().zero();
  for (std::size_t i = 0; i < h.group().rank(); ++i) {
    Element e = h.group().zero();
    e[i] = 1;
    out.push_back(e);
    sum = h.group().add(sum, e);
  }
  out.push_back(sum);
  return out;
}

}  // namespace

TEST(AutLcs, Examples) {
  EXPECT_EQ(enumerate_aut_lcs(trivial_lcs(make_group({2, 2}))).size(), 6u);
  const auto z4 = enumerate_aut_lcs(z4_twisted());
  EXPECT_EQ(z4, (std::vector<Permutation>{{0, 1, 2, 3}, {0, 3, 2, 1}}));
  EXPECT_EQ(enumerate_aut_lcs(trivial_lcs(make_group({}))).size(), 1u);
}

TEST(AutLcs, AgainstPermutationSearch) {
  for (const auto& f : std::vector<std::vector<Int>>{{2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2}})
    for (const auto& l : enumerate_lcs(make_group(f))) {
      auto brute = oracle::table_automorphisms({&l.add.plus, &l.dot});
      std::sort(brute.begin(), brute.end());
      ASSERT_EQ(enumerate_aut_lcs(l), brute);
      LinearCycleSet bare = l;
      bare.carrier.reset();
      ASSERT_EQ(enumerate_aut_lcs(bare), brute);
    }
}

TEST(Action, Examples) {
  const auto g = make_group({3});
  const WellsContext ctx(trivial_lcs(g), g);
  const auto& h = ctx.h2();
  const auto base = h.reduce(xy3());
  EXPECT_EQ(ctx.act(ctx.pairs().identity(), base), base);
  const auto id = identity_permutation(3);
  const auto p2 = pair_with(ctx, id, {0, 2, 1});
  EXPECT_EQ(ctx.act(p2, base), h.reduce(scaled(g, xy3(), 2)));
  // Theta(id, 2) = [xy] - [2xy] = [-xy], not a coboundary
  const auto t = ctx.theta(base, p2);
  EXPECT_EQ(t, h.reduce(scaled(g, xy3(), 2)));
  EXPECT_NE(t, h.group().zero());
  EXPECT_FALSE(oracle::is_coboundary(trivial_lcs(g), g, h.representative(t).f, h.representative(t).g));
  EXPECT_EQ(ctx.theta(base, ctx.pairs().identity()), h.group().zero());
  EXPECT_EQ(ctx.pairs().size(), 4u);
  EXPECT_TRUE(verify_action(ctx).ok());
}

TEST(Action, LawsOnSmallInstances) {
  for (const auto& in : small_instances()) {
    ASSERT_TRUE(verify_action(*in.ctx).ok()) << in.x.size() << " " << in.a.order();
    if (in.first_on_group) ASSERT_TRUE(verify_action(*in.gctx).ok()) << in.x.size() << " " << in.a.order();
  }
}

TEST(Lifts, DirectProductZ2) {
  const auto g = make_group({2});
  const auto e = build_extension(trivial_lcs(g), g, Cochain2::zero(2));
  const auto lifts = enumerate_aut_A_E(e);
  EXPECT_EQ(lifts.size(), compute_z1(trivial_lcs(g), g).order() * 1u);
  EXPECT_EQ(lifts.size(), 2u);
  const WellsContext ctx(trivial_lcs(g), g);
  const auto id = iota(ctx, {0, 0});
  EXPECT_EQ(lift_table(e, id), identity_permutation(4));
  EXPECT_THROW(iota(ctx, {1, 0}), VerificationError);
  for (const auto& lam : ctx.z1_members()) EXPECT_EQ(psi(iota(ctx, lam)), ctx.pairs().identity());
}

TEST(Lifts, AgainstBijectionFilter) {
  // every extension with |E| <= 8 from every class representative
  for (const auto& in : small_instances()) {
    if (in.order() > 8) continue;
    const auto& x = in.x;
    const auto& a = in.a;
    const auto& ctx = *in.ctx;
    const auto& gctx = *in.gctx;
    for (const auto& cls : ctx.h2().classes()) {
      const auto e = build_extension(x, a, ctx.h2().representative(cls));
      std::set<Permutation> fast;
      std::set<std::size_t> im;
      for (const auto& l : enumerate_aut_A_E(ctx, e)) {
        fast.insert(lift_table(e, l));
        im.insert(psi(l));
      }
      const auto b = block(e);
      const auto brute = oracle::table_automorphisms({&e.e.add.plus, &e.e.dot}, b);
      ASSERT_EQ(fast, std::set<Permutation>(brute.begin(), brute.end()));
      // image of Psi read off the brute-force list
      std::set<std::size_t> brute_im;
      for (const auto& t : brute) {
        Permutation phi(x.size());
        std::vector<Index> th(a.order());
        for (std::size_t u = 0; u < x.size(); ++u) phi[u] = e.pi(t[e.pair(u, 0)]);
        for (std::size_t v = 0; v < a.order(); ++v) th[v] = e.fiber(t[e.i(v)]);
        brute_im.insert(pair_with(ctx, phi, th));
      }
      ASSERT_EQ(im, brute_im);
      // the group side against additive automorphisms keeping i(A)
      std::set<Permutation> gfast;
      for (const auto& l : enumerate_aut_A_E(gctx, e)) gfast.insert(lift_table(e, l));
      const auto gbrute = oracle::table_automorphisms({&e.e.add.plus}, b);
      ASSERT_EQ(gfast, std::set<Permutation>(gbrute.begin(), gbrute.end()));
    }
  }
}

TEST(Wells, Z2Z2AllClasses) {
  const auto g = make_group({2});
  const WellsContext ctx(trivial_lcs(g), g);
  ASSERT_EQ(ctx.h2().order(), 4u);
  for (const auto& cls : ctx.h2().classes()) {
    const auto cert = verify_wells(ctx, build_extension(trivial_lcs(g), g, ctx.h2().representative(cls)));
    EXPECT_TRUE(cert.valid());
    EXPECT_EQ(cert.iota_image.size(), 2u);
  }
}

TEST(Wells, Z3Z3NotLiftable) {
  const auto g = make_group({3});
  const auto x = trivial_lcs(g);
  const WellsContext ctx(x, g);
  const auto cert = verify_wells(ctx, build_extension(x, g, xy3()));
  EXPECT_TRUE(cert.valid());
  const auto p2 = pair_with(ctx, identity_permutation(3), {0, 2, 1});
  EXPECT_EQ(std::count(cert.psi_image.begin(), cert.psi_image.end(), p2), 0);
  EXPECT_EQ(std::count(cert.theta_zero.begin(), cert.theta_zero.end(), p2), 0);
}

TEST(Wells, TrivialCoefficients) {
  const auto x = z4_twisted();
  const auto cert = verify_wells(build_extension(x, make_group({}), Cochain2::zero(4)));
  EXPECT_TRUE(cert.valid());
  EXPECT_EQ(cert.z1_order, 1u);
  EXPECT_EQ(cert.h2_order, 1u);
  EXPECT_EQ(cert.psi_image.size(), cert.pairs_order);
}

TEST(Wells, ThetaZeroMatchesBruteCoboundaryTest) {
  for (const auto& in : small_instances()) {
    const auto& x = in.x;
    const auto& a = in.a;
    const auto& ctx = *in.ctx;
    for (const auto& cls : some_classes(ctx.h2(), in.order())) {
      const auto c = ctx.h2().representative(cls);
      for (std::size_t p = 0; p < ctx.pairs().size(); ++p) {
        const auto d = subtract(a, ctx.transport(p, c), c);
        if (a.order() <= 4 && x.size() <= 4) ASSERT_EQ(ctx.theta(cls, p) == ctx.h2().group().zero(), oracle::is_coboundary(x, a, d.f, d.g));
        else ASSERT_EQ(ctx.theta(cls, p) == ctx.h2().group().zero(), coboundary_witness(x, a, d).has_value());
      }
    }
  }
}

TEST(Wells, EveryInstanceUpTo16) {
  int checked = 0;
  for (const auto& in : small_instances()) {
    const auto& ctx = *in.ctx;
    for (const auto& cls : some_classes(ctx.h2(), in.order())) {
      const auto e = build_extension(in.x, in.a, ctx.h2().representative(cls));
      const auto cert = verify_wells(ctx, e);
      ASSERT_TRUE(cert.valid()) << in.x.size() << " " << in.a.order();
      if (in.first_on_group) ASSERT_TRUE(verify_wells(*in.gctx, e).valid()) << in.x.size() << " " << in.a.order();
      ASSERT_EQ(cert.aut_ae_order, cert.z1_order * cert.theta_zero.size());
      ASSERT_TRUE(verify_theta_cocycle(ctx, cls));
      ASSERT_TRUE(orbit_bound_report(ctx, cls).ok());
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Theta, CocycleExamples) {
  for (const auto& f : std::vector<std::vector<Int>>{{2}, {3}}) {
    const auto g = make_group(f);
    const WellsContext ctx(trivial_lcs(g), g);
    for (const auto& cls : ctx.h2().classes()) EXPECT_TRUE(verify_theta_cocycle(ctx, cls));
  }
}

TEST(Theta, Differences) {
  for (const auto& f : std::vector<std::vector<Int>>{{2}, {3}}) {
    const auto g = make_group(f);
    const WellsContext ctx(trivial_lcs(g), g);
    for (const auto& b1 : ctx.h2().classes())
      for (const auto& b2 : ctx.h2().classes()) {
        const auto d = theta_difference_coboundary(ctx, b1, b2);
        EXPECT_TRUE(d.verdict);
        EXPECT_EQ(ctx.h2().group().add(d.beta, b2), b1);
        if (b1 == b2) EXPECT_EQ(d.beta, ctx.h2().group().zero());
      }
  }
  const auto x = z4_twisted();
  const WellsContext ctx(x, make_group({2}));
  for (const auto& b1 : ctx.h2().classes())
    for (const auto& b2 : ctx.h2().classes()) EXPECT_TRUE(theta_difference_coboundary(ctx, b1, b2).verdict);
}

TEST(Orbit, Examples) {
  const auto g = make_group({3});
  const WellsContext ctx(trivial_lcs(g), g);
  const auto zero = orbit_bound_report(ctx, ctx.h2().group().zero());
  EXPECT_EQ(zero.orbit.size(), 1u);
  EXPECT_EQ(zero.stabiliser.size(), 4u);
  const auto r = orbit_bound_report(ctx, ctx.h2().reduce(xy3()));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(4 % r.orbit.size(), 0u);
  EXPECT_LE(r.orbit.size(), 9u);
  // (id, a -> 2a) moves [xy], (x -> 2x, a -> 2a) scales xy by 2*4 = 8 = 2 as well
  EXPECT_EQ(r.orbit.size(), 2u);
}

TEST(GroupWells, Examples) {
  const auto g = make_group({2});
  const auto x = trivial_lcs(g);
  const auto direct = group_wells(build_extension(x, g, Cochain2::zero(2)));
  EXPECT_TRUE(direct.valid());
  for (const auto& t : direct.theta_table) EXPECT_EQ(t, Element(t.size(), 0));  // base 0 is fixed by every pair

  auto c = Cochain2::zero(2);
  c.g[3] = 1;  // Z4
  const auto e = build_extension(x, g, c);
  const auto cert = group_wells(e);
  EXPECT_TRUE(cert.valid());
  const auto brute = oracle::table_automorphisms({&e.e.add.plus}, block(e));
  EXPECT_EQ(cert.aut_ae_order, brute.size());
  EXPECT_EQ(cert.aut_ae_order, 2u);  // Aut(Z4) keeps {0, 2}

  const auto z3 = make_group({3});
  const WellsContext gctx(trivial_lcs(z3), z3, true);
  EXPECT_EQ(gctx.h2().order(), 3u);  // Ext(Z3, Z3)
}

TEST(GroupWells, SymmetricCohomologyAgainstOracle) {
  for (const auto& [f, b] : std::vector<std::pair<std::vector<Int>, std::vector<Int>>>{
           {{2}, {2}}, {{3}, {3}}, {{2}, {4}}, {{4}, {2}}, {{2, 2}, {2}}}) {
    const auto g = make_group(f), a = make_group(b);
    const WellsContext gctx(trivial_lcs(g), a, true);
    const auto o = oracle::cohomology(trivial_lcs(g), a, true);
    EXPECT_EQ(gctx.h2().order(), o.z2 / o.b2);
  }
}

TEST(GroupWells, Z3NonzeroSymmetric) {
  const auto z3 = make_group({3});
  const auto x = trivial_lcs(z3);
  const SecondCohomology sym(x, z3, true);
  for (const auto& cls : sym.classes()) {
    const auto c = sym.representative(cls);
    const auto cert = group_wells(build_extension(x, z3, c));
    EXPECT_TRUE(cert.valid());
  }
}

TEST(Comparison, Examples) {
  const auto g = make_group({2});
  const auto x = trivial_lcs(g);
  EXPECT_TRUE(comparison_diagram(build_extension(x, g, Cochain2::zero(2))).ok());
  auto c = Cochain2::zero(2);
  c.g[3] = 1;
  EXPECT_TRUE(comparison_diagram(build_extension(x, g, c)).ok());
  const auto z3 = make_group({3});
  EXPECT_TRUE(comparison_diagram(build_extension(trivial_lcs(z3), z3, xy3())).ok());
}

TEST(Comparison, EveryInstanceUpTo16) {
  for (const auto& in : small_instances())
    for (const auto& cls : some_classes(in.ctx->h2(), in.order()))
      ASSERT_TRUE(comparison_diagram(*in.ctx, *in.gctx, build_extension(in.x, in.a, in.ctx->h2().representative(cls))).ok());
}

TEST(Wells, SizeBound) {
  const auto g = make_group({8});
  EXPECT_THROW(WellsContext(trivial_lcs(g), make_group({4})), SizeBoundError);
}
