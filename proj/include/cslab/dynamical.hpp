// Bi-groupoid products on X x S, dynamical cocycles of cycle sets and linear
// cycle sets, and the dynamical extensions they build.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cslab/abelian.hpp"
#include "cslab/cohomology.hpp"
#include "cslab/structures.hpp"

namespace cslab {

/// For each (x, y) with x, y < outer, a table inner x inner -> inner.
/// alpha has outer = |X|, inner = |S|; a beta has the roles swapped.
struct DynamicalMap {
  std::size_t outer = 0, inner = 0;
  std::vector<Index> data;  // [((x * outer + y) * inner + s) * inner + t]

  DynamicalMap() = default;
  DynamicalMap(std::size_t n, std::size_t m) : outer(n), inner(m), data(n * n * m * m, 0) {}

  template <class F>
  static DynamicalMap generate(std::size_t n, std::size_t m, F&& f) {
    DynamicalMap d(n, m);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t s = 0; s < m; ++s)
          for (std::size_t t = 0; t < m; ++t) d.set(x, y, s, t, static_cast<Index>(f(static_cast<Index>(x), static_cast<Index>(y), static_cast<Index>(s), static_cast<Index>(t))));
    return d;
  }

  Index operator()(std::size_t x, std::size_t y, std::size_t s, std::size_t t) const { return data[at(x, y, s, t)]; }
  void set(std::size_t x, std::size_t y, std::size_t s, std::size_t t, Index v) { data[at(x, y, s, t)] = v; }

  /// Throws std::invalid_argument on wrong sizes or entries out of range.
  void check(std::size_t n, std::size_t m, const char* what) const {
    if (outer != n || inner != m || data.size() != n * n * m * m) throw std::invalid_argument(std::string(what) + ": wrong shape");
    for (const auto v : data)
      if (v >= m) throw std::invalid_argument(std::string(what) + ": entry out of range");
  }

  friend bool operator==(const DynamicalMap&, const DynamicalMap&) = default;

 private:
  std::size_t at(std::size_t x, std::size_t y, std::size_t s, std::size_t t) const { return ((x * outer + y) * inner + s) * inner + t; }
};

struct DynamicalPair {
  DynamicalMap alpha;        // dot part
  DynamicalMap alpha_prime;  // plus part
};

/// Verdict from the listed conditions next to the verdict on the product table.
/// The two should agree; `gap()` names the disagreement when they do not.
struct DynamicalVerdict {
  Verdict conditions;
  Verdict product;
  bool agree() const { return conditions.ok == product.ok; }
  std::string gap() const {
    if (conditions.ok && !product.ok) return "conditions hold but the product is not a " + what;
    if (!conditions.ok && product.ok) return "product is a " + what + " but conditions fail";
    return {};
  }
  explicit operator bool() const { return conditions.ok && product.ok; }
  std::string what = "cycle set";
};

struct DynamicalOptions {
  std::size_t max_order = 64;  // bound on |X||S|
};

namespace detail {

inline void dyn_size(std::size_t n, std::size_t m, const DynamicalOptions& opt) {
  if (n == 0 || m == 0) throw std::invalid_argument("empty factor");
  if (n * m > opt.max_order)
    throw SizeBoundError("dynamical: |X||S| = " + std::to_string(n * m) + " exceeds bound " + std::to_string(opt.max_order));
}

inline Verdict product_bijective(std::size_t n, std::size_t m, const OpTable& dot) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t s = 0; s < m; ++s)
      if (!row_is_bijection(dot, x * m + s)) return Verdict::fail("bijectivity", {I(x), I(s)}, "(y,t) -> (x,s).(y,t) is not a bijection");
  return Verdict::pass();
}

}  // namespace detail

// ------------------------------------------------------------- bi-groupoids

/// (x,s).(y,t) = (beta_{s,t}(x,y), alpha_{x,y}(s,t)) at index x * |S| + s.
inline OpTable bigroupoid_product_table(const DynamicalMap& alpha, const DynamicalMap& beta) {
  const std::size_t n = alpha.outer, m = alpha.inner;
  alpha.check(n, m, "alpha");
  beta.check(m, n, "beta");
  OpTable t(n * m);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t u = 0; u < m; ++u) t.set(x * m + s, y * m + u, static_cast<Index>(beta(s, u, x, y) * m + alpha(x, y, s, u)));
  return t;
}

/// Bijectivity and the two compound identities, then verify_cycle_set on the table.
inline DynamicalVerdict verify_bigroupoid_product(const DynamicalMap& alpha, const DynamicalMap& beta, const DynamicalOptions& opt = {}) {
  using detail::I;
  const std::size_t n = alpha.outer, m = alpha.inner;
  detail::dyn_size(n, m, opt);
  const OpTable dot = bigroupoid_product_table(alpha, beta);
  DynamicalVerdict r;
  r.conditions = detail::product_bijective(n, m, dot);
  for (std::size_t x = 0; x < n && r.conditions.ok; ++x)
    for (std::size_t y = 0; y < n && r.conditions.ok; ++y)
      for (std::size_t z = 0; z < n && r.conditions.ok; ++z)
        for (std::size_t s = 0; s < m && r.conditions.ok; ++s)
          for (std::size_t t = 0; t < m && r.conditions.ok; ++t)
            for (std::size_t q = 0; q < m && r.conditions.ok; ++q) {
              const Index a1 = alpha(x, y, s, t), a2 = alpha(x, z, s, q), a3 = alpha(y, x, t, s), a4 = alpha(y, z, t, q);
              const Index b1 = beta(s, t, x, y), b2 = beta(s, q, x, z), b3 = beta(t, s, y, x), b4 = beta(t, q, y, z);
              if (beta(a1, a2, b1, b2) != beta(a3, a4, b3, b4))
                r.conditions = Verdict::fail("beta-identity", {I(x), I(y), I(z), I(s), I(t), I(q)});
              else if (alpha(b1, b2, a1, a2) != alpha(b3, b4, a3, a4))
                r.conditions = Verdict::fail("alpha-identity", {I(x), I(y), I(z), I(s), I(t), I(q)});
            }
  r.product = verify_cycle_set(dot);
  return r;
}

/// (x,s).(y,t) = (beta..., alpha...), (x,s)+(y,t) = (beta'..., alpha'...).
struct BiGroupoidLCSData {
  DynamicalMap alpha, alpha_prime, beta, beta_prime;
};

/// The linear version: bijectivity, the distributive and compatibility pairs,
/// then the product checked as an LCS, abelian group axioms included.
inline DynamicalVerdict verify_bigroupoid_lcs(const BiGroupoidLCSData& d, const DynamicalOptions& opt = {}) {
  using detail::I;
  const std::size_t n = d.alpha.outer, m = d.alpha.inner;
  detail::dyn_size(n, m, opt);
  d.alpha_prime.check(n, m, "alpha'");
  d.beta_prime.check(m, n, "beta'");
  const OpTable dot = bigroupoid_product_table(d.alpha, d.beta);
  const OpTable plus = bigroupoid_product_table(d.alpha_prime, d.beta_prime);
  const auto& al = d.alpha;
  const auto& ap = d.alpha_prime;
  const auto& be = d.beta;
  const auto& bp = d.beta_prime;
  DynamicalVerdict r;
  r.what = "linear cycle set";
  r.conditions = detail::product_bijective(n, m, dot);
  for (std::size_t x = 0; x < n && r.conditions.ok; ++x)
    for (std::size_t y = 0; y < n && r.conditions.ok; ++y)
      for (std::size_t z = 0; z < n && r.conditions.ok; ++z)
        for (std::size_t s = 0; s < m && r.conditions.ok; ++s)
          for (std::size_t t = 0; t < m && r.conditions.ok; ++t)
            for (std::size_t q = 0; q < m && r.conditions.ok; ++q) {
              const std::vector<Int> w{I(x), I(y), I(z), I(s), I(t), I(q)};
              const Index a1 = al(x, y, s, t), a2 = al(x, z, s, q), b1 = be(s, t, x, y), b2 = be(s, q, x, z);
              const Index yz = bp(t, q, y, z), tq = ap(y, z, t, q);
              if (be(s, tq, x, yz) != bp(a1, a2, b1, b2)) r.conditions = Verdict::fail("distributive-beta", w);
              else if (al(x, yz, s, tq) != ap(b1, b2, a1, a2)) r.conditions = Verdict::fail("distributive-alpha", w);
              else if (be(ap(x, y, s, t), q, bp(s, t, x, y), z) != be(a1, a2, b1, b2)) r.conditions = Verdict::fail("compatibility-beta", w);
              else if (al(bp(s, t, x, y), z, ap(x, y, s, t), q) != al(b1, b2, a1, a2)) r.conditions = Verdict::fail("compatibility-alpha", w);
            }
  AdditiveTable add;
  r.product = verify_abelian_group(plus, &add);
  if (r.product) r.product = verify_linear_cycle_set(add, dot);
  return r;
}

// --------------------------------------------------------- dynamical cocycles

/// beta_{s,t}(x,y) = x.y, the X-part when X is already a cycle set.
inline DynamicalMap constant_beta(const OpTable& x_op, std::size_t m) {
  return DynamicalMap::generate(m, x_op.size(), [&](Index, Index, Index x, Index y) { return x_op(x, y); });
}

/// (x,s).(y,t) = (x.y, alpha_{x,y}(s,t)).
inline OpTable dynamical_dot_table(const OpTable& x_dot, const DynamicalMap& alpha) {
  alpha.check(x_dot.size(), alpha.inner, "alpha");
  return bigroupoid_product_table(alpha, constant_beta(x_dot, alpha.inner));
}

/// Bijectivity of (y,t) -> (x.y, alpha_{x,y}(s,t)) and
/// alpha_{x.y,x.z}(alpha_{x,y}(s,t), alpha_{x,z}(s,q)) = alpha_{y.x,y.z}(alpha_{y,x}(t,s), alpha_{y,z}(t,q)),
/// with verify_cycle_set run on the product alongside.
inline DynamicalVerdict verify_dynamical_cs(const OpTable& x_dot, const DynamicalMap& alpha, const DynamicalOptions& opt = {}) {
  using detail::I;
  if (auto v = verify_cycle_set(x_dot); !v) throw std::invalid_argument("X is not a cycle set: " + v.condition);
  const std::size_t n = x_dot.size(), m = alpha.inner;
  detail::dyn_size(n, m, opt);
  alpha.check(n, m, "alpha");
  const OpTable dot = dynamical_dot_table(x_dot, alpha);
  DynamicalVerdict r;
  r.conditions = detail::product_bijective(n, m, dot);
  for (std::size_t x = 0; x < n && r.conditions.ok; ++x)
    for (std::size_t y = 0; y < n && r.conditions.ok; ++y)
      for (std::size_t z = 0; z < n && r.conditions.ok; ++z)
        for (std::size_t s = 0; s < m && r.conditions.ok; ++s)
          for (std::size_t t = 0; t < m && r.conditions.ok; ++t)
            for (std::size_t q = 0; q < m && r.conditions.ok; ++q)
              if (alpha(x_dot(x, y), x_dot(x, z), alpha(x, y, s, t), alpha(x, z, s, q)) !=
                  alpha(x_dot(y, x), x_dot(y, z), alpha(y, x, t, s), alpha(y, z, t, q)))
                r.conditions = Verdict::fail("dynamical-cocycle", {I(x), I(y), I(z), I(s), I(t), I(q)});
  r.product = verify_cycle_set(dot);
  return r;
}

/// Tables of the dynamical extension of an LCS, unverified.
inline std::pair<OpTable, OpTable> dynamical_lcs_tables(const LinearCycleSet& x, const DynamicalPair& p) {
  const std::size_t m = p.alpha.inner;
  p.alpha.check(x.size(), m, "alpha");
  p.alpha_prime.check(x.size(), m, "alpha'");
  return {bigroupoid_product_table(p.alpha_prime, constant_beta(x.add.plus, m)), dynamical_dot_table(x.dot, p.alpha)};
}

/// Bijectivity,
///   alpha_{x,y+z}(s, alpha'_{y,z}(t,q)) = alpha'_{x.y,x.z}(alpha_{x,y}(s,t), alpha_{x,z}(s,q)),
///   alpha_{x+y,z}(alpha'_{x,y}(s,t), q) = alpha_{x.y,x.z}(alpha_{x,y}(s,t), alpha_{x,z}(s,q)),
/// and, separately, the product tables checked as an LCS from scratch. The
/// listed conditions say nothing about + on X x S being an abelian group, so
/// a disagreement there shows up in gap().
inline DynamicalVerdict verify_dynamical_lcs(const LinearCycleSet& x, const DynamicalPair& p, const DynamicalOptions& opt = {}) {
  using detail::I;
  if (auto v = verify_linear_cycle_set(x); !v) throw std::invalid_argument("X is not a linear cycle set: " + v.condition);
  const std::size_t n = x.size(), m = p.alpha.inner;
  detail::dyn_size(n, m, opt);
  const auto [plus, dot] = dynamical_lcs_tables(x, p);
  const auto& al = p.alpha;
  const auto& ap = p.alpha_prime;
  DynamicalVerdict r;
  r.what = "linear cycle set";
  r.conditions = detail::product_bijective(n, m, dot);
  for (std::size_t a = 0; a < n && r.conditions.ok; ++a)
    for (std::size_t b = 0; b < n && r.conditions.ok; ++b)
      for (std::size_t c = 0; c < n && r.conditions.ok; ++c)
        for (std::size_t s = 0; s < m && r.conditions.ok; ++s)
          for (std::size_t t = 0; t < m && r.conditions.ok; ++t)
            for (std::size_t q = 0; q < m && r.conditions.ok; ++q) {
              const std::vector<Int> w{I(a), I(b), I(c), I(s), I(t), I(q)};
              const Index ab = x.dot(a, b), ac = x.dot(a, c);
              const Index st = al(a, b, s, t), sq = al(a, c, s, q);
              if (al(a, x.plus(b, c), s, ap(b, c, t, q)) != ap(ab, ac, st, sq)) r.conditions = Verdict::fail("dynamical-distributive", w);
              else if (al(x.plus(a, b), c, ap(a, b, s, t), q) != al(ab, ac, st, sq)) r.conditions = Verdict::fail("dynamical-compatibility", w);
            }
  AdditiveTable add;
  r.product = verify_abelian_group(plus, &add);
  if (r.product) r.product = verify_linear_cycle_set(add, dot);
  return r;
}

/// The cycle set X x S. Throws VerificationError unless both verdicts pass.
inline CycleSet build_dynamical_extension(const OpTable& x_dot, const DynamicalMap& alpha, const DynamicalOptions& opt = {}) {
  const auto v = verify_dynamical_cs(x_dot, alpha, opt);
  if (!v.conditions) throw VerificationError(v.conditions);
  if (!v.product) throw VerificationError(Verdict::fail(v.product.condition, v.product.witness, v.gap()));
  return {dynamical_dot_table(x_dot, alpha)};
}

/// The linear cycle set X x S. Throws VerificationError unless both verdicts pass.
inline LinearCycleSet build_dynamical_extension(const LinearCycleSet& x, const DynamicalPair& p, const DynamicalOptions& opt = {}) {
  const auto v = verify_dynamical_lcs(x, p, opt);
  if (!v.conditions) throw VerificationError(v.conditions);
  if (!v.product) throw VerificationError(Verdict::fail(v.product.condition, v.product.witness, v.gap()));
  auto [plus, dot] = dynamical_lcs_tables(x, p);
  AdditiveTable add;
  if (auto g = verify_abelian_group(plus, &add); !g) throw InternalError("dynamical extension: + stopped being a group");
  return {std::move(add), std::move(dot), std::nullopt};
}

/// alpha_{x,y}(s,t) = t + f(x,y), alpha'_{x,y}(s,t) = s + t + g(x,y) with S = A.
inline DynamicalPair cocycle_to_dynamical(const FinAbGroup& a, const Cochain2& c) {
  const std::size_t n = c.n, m = a.order();
  if (c.f.size() != n * n || c.g.size() != n * n) throw std::invalid_argument("cochain has wrong shape");
  const OpTable amul = a.addition_table();
  for (const auto v : c.f)
    if (v >= m) throw std::invalid_argument("cochain entry out of range");
  for (const auto v : c.g)
    if (v >= m) throw std::invalid_argument("cochain entry out of range");
  return {DynamicalMap::generate(n, m, [&](Index x, Index y, Index, Index t) { return amul(t, c.F(x, y)); }),
          DynamicalMap::generate(n, m, [&](Index x, Index y, Index s, Index t) { return amul(amul(s, t), c.G(x, y)); })};
}

}  // namespace cslab
