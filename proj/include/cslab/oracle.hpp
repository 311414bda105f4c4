// Brute-force reference computations. Nothing here touches the Smith form
// engine; tests and the `oracle` CLI verb compare the fast paths against these.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslab/abelian.hpp"
#include "cslab/structures.hpp"

namespace cslab::oracle {

inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> ps;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

/// Invariant factors of a finite abelian group of the given order from the
/// torsion counts m -> |{x : m x = 0}|.
template <class Count>
std::vector<Int> invariant_factors_from_torsion(Int order, Count&& torsion) {
  std::vector<std::vector<Int>> per_prime;  // descending prime-power parts
  for (Int p : prime_factors(order)) {
    Int pk = 1, prev = 1, full = 1;
    for (Int m = order; m % p == 0; m /= p) full *= p;
    std::vector<Int> at_least;  // number of factors with exponent >= k
    while (prev < full) {
      pk *= p;
      const Int c = static_cast<Int>(torsion(pk));
      Int ratio = c / prev, r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      at_least.push_back(r);
      prev = c;
    }
    std::vector<Int> parts;  // exponents, descending
    for (std::size_t k = at_least.size(); k-- > 0;) {
      const Int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (Int i = 0; i < at_least[k] - next; ++i) {
        Int q = 1;
        for (std::size_t e = 0; e <= k; ++e) q *= p;
        parts.push_back(q);
      }
    }
    per_prime.push_back(parts);
  }
  std::size_t r = 0;
  for (auto& v : per_prime) r = std::max(r, v.size());
  std::vector<Int> out(r, 1);
  for (auto& v : per_prime)
    for (std::size_t i = 0; i < v.size(); ++i) out[r - 1 - i] *= v[i];
  return out;
}

/// Element indices of the span of `gens` inside the group, by closure.
inline std::vector<Index> span(const FinAbGroup& g, const std::vector<Element>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Index> members{0}, stack{0};
  in[0] = 1;
  while (!stack.empty()) {
    const Element x = g.element(stack.back());
    stack.pop_back();
    for (const auto& s : gens) {
      Element y(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) y[j] = (x[j] + s[j]) % g.invariant_factors()[j];
      const Index i = g.index_of(y);
      if (!in[i]) {
        in[i] = 1;
        members.push_back(i);
        stack.push_back(i);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// Invariant factors of span(num) / span(den), both inside g, by counting.
inline std::vector<Int> quotient_invariants(const FinAbGroup& g, const std::vector<Element>& num, const std::vector<Element>& den) {
  const auto h = span(g, num);
  auto all = num;
  all.insert(all.end(), den.begin(), den.end());
  const auto hk = span(g, all);
  if (hk.size() != h.size()) throw std::invalid_argument("oracle: denominator not inside numerator");
  const auto k = span(g, den);
  std::vector<char> in_k(g.order(), 0);
  for (Index i : k) in_k[i] = 1;
  const Int order = static_cast<Int>(h.size() / k.size());
  return invariant_factors_from_torsion(order, [&](Int m) {
    std::size_t c = 0;
    for (Index i : h)
      if (in_k[g.index_of(g.scale(m, g.element(i)))]) ++c;
    return c / k.size();
  });
}

inline Int det(std::vector<std::vector<Int>> a) {
  // Bareiss fraction-free elimination.
  const std::size_t n = a.size();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Nonzero Smith diagonal from determinantal divisors (gcds of k-minors).
inline std::vector<Int> smith_diagonal(const std::vector<std::vector<Int>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<Int> d;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
      do {
        std::vector<std::vector<Int>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          sub.emplace_back();
          for (std::size_t j = 0; j < cols; ++j)
            if (csel[j]) sub.back().push_back(m[i][j]);
        }
        g = std::gcd(g, det(sub));
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    d.push_back(g / prev);
    prev = g;
  }
  return d;
}

/// Automorphisms of A as index permutations, by testing every bijection fixing 0.
inline std::vector<Permutation> automorphisms(const FinAbGroup& a) {
  if (a.order() > 8) throw std::length_error("oracle: automorphism search limited to order 8");
  const OpTable plus = a.addition_table();
  std::vector<Permutation> out;
  Permutation p = identity_permutation(a.order());
  do {
    bool ok = true;
    for (std::size_t x = 0; x < a.order() && ok; ++x)
      for (std::size_t y = 0; y < a.order() && ok; ++y) ok = p[plus(x, y)] == plus(p[x], p[y]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return out;
}

/// Number of bilinear maps G x G -> A: maps are fixed by generator pairs.
inline std::size_t bilinear_count(const FinAbGroup& g, const FinAbGroup& a) {
  std::size_t count = 0;
  const std::size_t k = g.rank();
  const std::size_t slots = k * k;
  std::vector<Index> choice(slots, 0);
  const OpTable plus = a.addition_table();
  for (;;) {
    // Extend the choice to all of G x G and test bilinearity directly.
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = 0; j < k && ok; ++j) {
        const Int order = std::gcd(g.invariant_factors()[i], g.invariant_factors()[j]);
        ok = a.scale(order, a.element(choice[i * k + j])) == a.zero();
      }
    if (ok) {
      std::vector<Index> b(g.order() * g.order());
      for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y) {
          const Element ex = g.element(x), ey = g.element(y);
          Element v = a.zero();
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) v = a.add(v, a.scale(ex[i] * ey[j], a.element(choice[i * k + j])));
          b[x * g.order() + y] = a.index_of(v);
        }
      const OpTable gp = g.addition_table();
      for (std::size_t x = 0; x < g.order() && ok; ++x)
        for (std::size_t y = 0; y < g.order() && ok; ++y)
          for (std::size_t z = 0; z < g.order() && ok; ++z)
            ok = b[gp(x, y) * g.order() + z] == plus(b[x * g.order() + z], b[y * g.order() + z]) &&
                 b[x * g.order() + gp(y, z)] == plus(b[x * g.order() + y], b[x * g.order() + z]);
      if (ok) ++count;
    }
    std::size_t s = 0;
    while (s < slots && ++choice[s] == a.order()) choice[s++] = 0;
    if (s == slots) break;
  }
  return count;
}

/// Dot tables of all linear cycle sets on g: every assignment x -> L_x of
/// automorphisms with L_0 = id, filtered by (x+y).z = (x.y).(x.z).
inline std::vector<OpTable> lcs_tables(const FinAbGroup& g) {
  const auto auts = automorphisms(g);
  const std::size_t n = g.order();
  std::size_t total = 1;
  for (std::size_t i = 1; i < n; ++i) {
    total *= auts.size();
    if (total > (std::size_t{1} << 22)) throw std::length_error("oracle: too many assignments");
  }
  const OpTable plus = g.addition_table();
  std::vector<std::size_t> choice(n, 0);
  std::vector<OpTable> out;
  const auto id = identity_permutation(n);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t r = c;
    OpTable t(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Permutation& l = x == 0 ? id : auts[r % auts.size()];
      if (x > 0) r /= auts.size();
      for (std::size_t y = 0; y < n; ++y) t.set(x, y, l[y]);
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        for (std::size_t z = 0; z < n && ok; ++z) ok = t(plus(x, y), z) == t(t(x, y), t(x, z));
    if (ok) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Bijections of {0..n-1} preserving every table and mapping `block` onto itself
/// (empty block: no constraint). Plain permutation search, n <= cap.
inline std::vector<Permutation> table_automorphisms(const std::vector<const OpTable*>& tables, const std::vector<Index>& block = {},
                                                    std::size_t cap = 8) {
  if (tables.empty()) throw std::invalid_argument("oracle: no tables");
  const std::size_t n = tables.front()->size();
  if (n > cap) throw std::length_error("oracle: permutation search limited to " + std::to_string(cap) + " points");
  std::vector<bool> in_block(n, block.empty());
  for (Index b : block) in_block[b] = true;
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = in_block[x] == in_block[p[x]];
    for (const OpTable* t : tables)
      for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t y = 0; y < n && ok; ++y) ok = p[(*t)(x, y)] == (*t)(p[x], p[y]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Bijections E1 -> E2 carrying plus1/dot1 to plus2/dot2 with phi(i1(a)) = i2(a)
/// and pi2(phi(e)) = pi1(e).
inline std::vector<Permutation> extension_equivalences(const OpTable& plus1, const OpTable& dot1, const OpTable& plus2, const OpTable& dot2,
                                                       const std::vector<Index>& i1, const std::vector<Index>& i2,
                                                       const std::vector<Index>& pi1, const std::vector<Index>& pi2, std::size_t cap = 8) {
  const std::size_t n = plus1.size();
  if (n > cap) throw std::length_error("oracle: permutation search limited to " + std::to_string(cap) + " points");
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    bool ok = true;
    for (std::size_t a = 0; a < i1.size() && ok; ++a) ok = p[i1[a]] == i2[a];
    for (std::size_t x = 0; x < n && ok; ++x) ok = pi2[p[x]] == pi1[x];
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) ok = p[plus1(x, y)] == plus2(p[x], p[y]) && p[dot1(x, y)] == dot2(p[x], p[y]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct CohomologyCounts {
  std::size_t z2 = 0, b2 = 0;
  std::vector<Int> h2;  // invariant factors
};

namespace detail {

/// Integer-valued tables over A, addressed by A-index, plus A's tables.
struct Arith {
  OpTable plus;
  std::vector<Index> neg;
  explicit Arith(const FinAbGroup& a) : plus(a.addition_table()), neg(a.negation_map()) {}
  Index add(Index u, Index v) const { return plus(u, v); }
  Index sub(Index u, Index v) const { return plus(u, neg[v]); }
};

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) throw std::length_error("oracle: instance too large for exhaustive search");
  }
  return r;
}

inline std::vector<Index> digits(std::size_t code, std::size_t base, std::size_t len) {
  std::vector<Index> d(len);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<Index>(code % base);
    code /= base;
  }
  return d;
}

inline std::vector<Int> invariants_of_quotient(const Arith& ar, const std::vector<std::vector<Index>>& z,
                                               const std::set<std::vector<Index>>& b) {
  auto times = [&](Int m, const std::vector<Index>& v) {
    std::vector<Index> r(v.size(), 0);
    for (Int i = 0; i < m; ++i)
      for (std::size_t s = 0; s < v.size(); ++s) r[s] = ar.add(r[s], v[s]);
    return r;
  };
  return invariant_factors_from_torsion(static_cast<Int>(z.size() / b.size()), [&](Int m) {
    std::size_t c = 0;
    for (const auto& v : z) c += b.count(times(m, v));
    return c / b.size();
  });
}

}  // namespace detail

/// Z^2, B^2, H^2 of (X, A) by listing every cochain pair; |A|^(2 n^2) <= cap.
inline CohomologyCounts cohomology(const LinearCycleSet& x, const FinAbGroup& a, bool g_only = false, std::size_t cap = std::size_t{1} << 20) {
  const std::size_t n = x.size(), na = a.order();
  const std::size_t slots = (g_only ? 1 : 2) * n * n;
  const std::size_t total = detail::checked_power(na, slots, cap);
  const detail::Arith ar(a);
  const Index zero_x = x.zero();
  std::vector<std::vector<Index>> z;
  for (std::size_t code = 0; code < total; ++code) {
    const auto v = detail::digits(code, na, slots);
    auto G = [&](std::size_t p, std::size_t q) { return v[(g_only ? 0 : n * n) + p * n + q]; };
    auto F = [&](std::size_t p, std::size_t q) { return v[p * n + q]; };
    bool ok = G(zero_x, zero_x) == 0;
    for (std::size_t p = 0; p < n && ok; ++p)
      for (std::size_t q = 0; q < n && ok; ++q) {
        ok = G(p, q) == G(q, p);
        for (std::size_t r = 0; r < n && ok; ++r) {
          ok = ar.add(G(p, q), G(x.plus(p, q), r)) == ar.add(G(q, r), G(p, x.plus(q, r)));
          if (ok && !g_only)
            ok = F(x.plus(p, q), r) == ar.add(F(x.dot(p, q), x.dot(p, r)), F(p, r)) &&
                 ar.sub(ar.sub(F(p, x.plus(q, r)), F(p, q)), F(p, r)) == ar.sub(G(x.dot(p, q), x.dot(p, r)), G(q, r));
        }
      }
    if (ok) z.push_back(v);
  }
  std::set<std::vector<Index>> b;
  const std::size_t lambdas = detail::checked_power(na, n, cap);
  for (std::size_t code = 0; code < lambdas; ++code) {
    const auto l = detail::digits(code, na, n);
    if (l[zero_x] != 0) continue;
    std::vector<Index> v(slots);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (!g_only) v[p * n + q] = ar.sub(l[x.dot(p, q)], l[q]);
        v[(g_only ? 0 : n * n) + p * n + q] = ar.sub(ar.sub(l[x.plus(p, q)], l[p]), l[q]);
      }
    b.insert(v);
  }
  CohomologyCounts out{z.size(), b.size(), {}};
  out.h2 = detail::invariants_of_quotient(ar, z, b);
  return out;
}

/// Whether some normalised lambda has the given coboundary, by trying all of them.
inline bool is_coboundary(const LinearCycleSet& x, const FinAbGroup& a, const std::vector<Index>& f, const std::vector<Index>& g,
                          bool g_only = false, std::size_t cap = std::size_t{1} << 20) {
  const std::size_t n = x.size(), na = a.order();
  const detail::Arith ar(a);
  const std::size_t lambdas = detail::checked_power(na, n, cap);
  for (std::size_t code = 0; code < lambdas; ++code) {
    const auto l = detail::digits(code, na, n);
    if (l[x.zero()] != 0) continue;
    bool ok = true;
    for (std::size_t p = 0; p < n && ok; ++p)
      for (std::size_t q = 0; q < n && ok; ++q)
        ok = (g_only || f[p * n + q] == ar.sub(l[x.dot(p, q)], l[q])) && g[p * n + q] == ar.sub(ar.sub(l[x.plus(p, q)], l[p]), l[q]);
    if (ok) return true;
  }
  return false;
}

/// |Z^1_N(X; A)| (or |Hom((X,+), A)| when additive_only) by listing all maps.
inline std::size_t z1_order(const LinearCycleSet& x, const FinAbGroup& a, bool additive_only = false, std::size_t cap = std::size_t{1} << 20) {
  const std::size_t n = x.size(), na = a.order();
  const detail::Arith ar(a);
  const std::size_t total = detail::checked_power(na, n, cap);
  std::size_t count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    const auto l = detail::digits(code, na, n);
    bool ok = true;
    for (std::size_t p = 0; p < n && ok; ++p)
      for (std::size_t q = 0; q < n && ok; ++q)
        ok = l[x.plus(p, q)] == ar.add(l[p], l[q]) && (additive_only || l[x.dot(p, q)] == l[q]);
    count += ok;
  }
  return count;
}

}  // namespace cslab::oracle
