// Central extensions X (+)_{f,g} A on the carrier X x A, brace extensions,
// cocycles from sections, and equivalence of extensions through H^2.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cslab/abelian.hpp"
#include "cslab/cohomology.hpp"
#include "cslab/structures.hpp"

namespace cslab {

/// E on pairs (x, a) stored at x * |A| + a, with i(a) = (0, a), pi(x, a) = x
/// and the default section s(x) = (x, 0).
struct CentralExtensionLCS {
  LinearCycleSet base;
  FinAbGroup kernel;
  LinearCycleSet e;
  std::optional<Cochain2> cocycle;  // the (f,g) it was built from

  std::size_t m() const { return kernel.order(); }
  Index pair(std::size_t x, std::size_t a) const { return static_cast<Index>(x * m() + a); }
  Index pi(std::size_t p) const { return static_cast<Index>(p / m()); }
  Index fiber(std::size_t p) const { return static_cast<Index>(p % m()); }
  Index i(std::size_t a) const { return pair(base.zero(), a); }
  std::vector<Index> default_section() const {
    std::vector<Index> s(base.size());
    for (std::size_t x = 0; x < base.size(); ++x) s[x] = pair(x, 0);
    return s;
  }
};

namespace detail {

/// Tables of X x A with (x,a)+(y,b) = (x+y, a+b+g(x,y)), (x,a).(y,b) = (x.y, b+f(x,y)).
inline std::pair<OpTable, OpTable> extension_tables(const LinearCycleSet& x, const FinAbGroup& a, const Cochain2& c) {
  const std::size_t n = x.size(), m = a.order();
  const OpTable amul = a.addition_table();
  OpTable plus(n * m), dot(n * m);
  for (std::size_t p = 0; p < n * m; ++p)
    for (std::size_t q = 0; q < n * m; ++q) {
      const std::size_t u = p / m, s = p % m, v = q / m, t = q % m;
      plus.set(p, q, static_cast<Index>(x.plus(u, v) * m + amul(amul(s, t), c.G(u, v))));
      dot.set(p, q, static_cast<Index>(x.dot(u, v) * m + amul(t, c.F(u, v))));
    }
  return {plus, dot};
}

inline Verdict check_central(const CentralExtensionLCS& ext) {
  const auto& E = ext.e;
  for (std::size_t a = 0; a < ext.m(); ++a) {
    const Index c = ext.i(a);
    for (std::size_t p = 0; p < E.size(); ++p) {
      if (E.dot(p, c) != c) return Verdict::fail("centrality", {I(p), I(c)}, "x.i(a) != i(a)");
      if (E.dot(c, p) != p) return Verdict::fail("centrality", {I(c), I(p)}, "i(a).x != x");
    }
  }
  return Verdict::pass();
}

/// pi is an LCS morphism, i is an injective morphism into the kernel of pi.
inline Verdict check_exact(const CentralExtensionLCS& ext) {
  const auto& E = ext.e;
  const auto& X = ext.base;
  for (std::size_t p = 0; p < E.size(); ++p)
    for (std::size_t q = 0; q < E.size(); ++q) {
      if (ext.pi(E.plus(p, q)) != X.plus(ext.pi(p), ext.pi(q))) return Verdict::fail("pi-additive", {I(p), I(q)});
      if (ext.pi(E.dot(p, q)) != X.dot(ext.pi(p), ext.pi(q))) return Verdict::fail("pi-dot", {I(p), I(q)});
    }
  const OpTable amul = ext.kernel.addition_table();
  for (std::size_t a = 0; a < ext.m(); ++a) {
    if (ext.pi(ext.i(a)) != X.zero()) return Verdict::fail("pi-i", {I(a)});
    for (std::size_t b = 0; b < ext.m(); ++b) {
      if (E.plus(ext.i(a), ext.i(b)) != ext.i(amul(a, b))) return Verdict::fail("i-additive", {I(a), I(b)});
      if (a != b && ext.i(a) == ext.i(b)) return Verdict::fail("i-injective", {I(a), I(b)});
    }
  }
  if (E.zero() != ext.i(0)) return Verdict::fail("i-zero", {}, "E has a different zero than i(0)");
  return Verdict::pass();
}

}  // namespace detail

/// Builds X (+)_{f,g} A. Throws VerificationError carrying the LCS axiom the
/// tables break when (f,g) is not a cocycle, or "normalisation" when g(0,0) != 0.
inline CentralExtensionLCS build_extension(const LinearCycleSet& x, const FinAbGroup& a, const Cochain2& c) {
  check_shape(x, a, c);
  auto [plus, dot] = detail::extension_tables(x, a, c);
  AdditiveTable add;
  if (auto v = verify_abelian_group(plus, &add); !v) throw VerificationError(v);
  if (auto v = verify_linear_cycle_set(add, dot); !v) throw VerificationError(v);
  if (c.G(x.zero(), x.zero()) != 0)
    throw VerificationError(Verdict::fail("normalisation", {detail::I(x.zero()), detail::I(x.zero())}, "g(0,0) != 0"));
  CentralExtensionLCS ext{x, a, LinearCycleSet{std::move(add), std::move(dot), std::nullopt}, c};
  if (auto v = detail::check_central(ext); !v) throw InternalError("built extension is not central: " + v.condition);
  if (auto v = detail::check_exact(ext); !v) throw InternalError("built extension is not exact: " + v.condition);
  return ext;
}

/// fbar(x,y) = -f(x, x.y) + g(x,y) on the LCS of B.
inline Cochain2 brace_transform(const Brace& b, const FinAbGroup& a, const Cochain2& c) {
  const LinearCycleSet l = brace_to_lcs(b);
  check_shape(l, a, c);
  Cochain2 r = c;
  for (std::size_t x = 0; x < l.size(); ++x)
    for (std::size_t y = 0; y < l.size(); ++y)
      r.f[x * l.size() + y] = a.index_of(a.add(a.neg(a.element(c.F(x, l.dot(x, y)))), a.element(c.G(x, y))));
  return r;
}

/// (x,a)+(y,b) = (x+y, a+b+g(x,y)), (x,a)o(y,b) = (x o y, a+b+f(x,y)).
/// c holds (f, g); throws VerificationError with the cocycle condition (fbar, g) breaks.
inline Brace build_brace_extension(const Brace& b, const FinAbGroup& a, const Cochain2& c) {
  const LinearCycleSet l = brace_to_lcs(b);
  if (auto v = verify_cocycle(l, a, brace_transform(b, a, c), false); !v) throw VerificationError(v);
  const std::size_t n = b.size(), m = a.order();
  const OpTable amul = a.addition_table();
  OpTable plus(n * m), circ(n * m);
  for (std::size_t p = 0; p < n * m; ++p)
    for (std::size_t q = 0; q < n * m; ++q) {
      const std::size_t u = p / m, s = p % m, v = q / m, t = q % m;
      plus.set(p, q, static_cast<Index>(b.add.plus(u, v) * m + amul(amul(s, t), c.G(u, v))));
      circ.set(p, q, static_cast<Index>(b.circ(u, v) * m + amul(amul(s, t), c.F(u, v))));
    }
  AdditiveTable add;
  if (auto v = verify_abelian_group(plus, &add); !v) throw InternalError("brace extension: + is not a group: " + v.condition);
  Brace out{std::move(add), std::move(circ), std::nullopt};
  if (auto v = verify_brace(out); !v) throw InternalError("brace extension fails the brace axioms: " + v.condition);
  return out;
}

struct ExtractedCocycle {
  Cochain2 cocycle;
  bool normalised = false;
};

/// f(x,y) = s(x).s(y) - s(x.y), g(x,y) = s(x) + s(y) - s(x+y), read back through i.
inline ExtractedCocycle extract_cocycle(const CentralExtensionLCS& ext, const std::vector<Index>& s) {
  const auto& X = ext.base;
  const auto& E = ext.e;
  const std::size_t n = X.size();
  if (s.size() != n) throw std::invalid_argument("section has wrong length");
  for (std::size_t x = 0; x < n; ++x)
    if (s[x] >= E.size() || ext.pi(s[x]) != x) throw std::invalid_argument("not a section of pi");
  auto minus = [&](Index p, Index q) { return E.plus(p, E.neg(q)); };
  auto back = [&](Index p) {
    if (ext.pi(p) != X.zero()) throw InternalError("section difference is not in i(A)");
    // i is additive and E has zero i(0), so i^{-1} is the fiber coordinate
    return ext.fiber(p);
  };
  Cochain2 c = Cochain2::zero(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      c.f[x * n + y] = back(minus(E.dot(s[x], s[y]), s[X.dot(x, y)]));
      c.g[x * n + y] = back(minus(E.plus(s[x], s[y]), s[X.plus(x, y)]));
    }
  const bool norm = c.G(X.zero(), X.zero()) == 0;
  if (norm != (s[X.zero()] == E.zero())) throw InternalError("normalisation does not match s(0) = 0");
  if (auto v = verify_cocycle(X, ext.kernel, c, norm); !v) throw InternalError("extracted pair is not a cocycle: " + v.condition);
  return {c, norm};
}

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<Index> lambda;   // phi(x,a) = (x, a + lambda(x)) when equivalent
  Permutation phi;
};

/// Compares the classes of the cocycles read off the default sections.
inline EquivalenceResult classify_equivalence(const CentralExtensionLCS& e1, const CentralExtensionLCS& e2) {
  if (!(e1.base == e2.base) || !(e1.kernel == e2.kernel)) throw std::invalid_argument("extensions of different X or A");
  const auto& X = e1.base;
  const auto& A = e1.kernel;
  const Cochain2 c1 = extract_cocycle(e1, e1.default_section()).cocycle;
  const Cochain2 c2 = extract_cocycle(e2, e2.default_section()).cocycle;
  const auto lam = coboundary_witness(X, A, subtract(A, c2, c1));
  if (!lam) return {};
  EquivalenceResult r{true, *lam, Permutation(e1.e.size())};
  const OpTable amul = A.addition_table();
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t a = 0; a < A.order(); ++a) r.phi[e1.pair(x, a)] = e2.pair(x, amul(a, (*lam)[x]));
  const auto& E1 = e1.e;
  const auto& E2 = e2.e;
  for (std::size_t p = 0; p < E1.size(); ++p)
    for (std::size_t q = 0; q < E1.size(); ++q)
      if (r.phi[E1.plus(p, q)] != E2.plus(r.phi[p], r.phi[q]) || r.phi[E1.dot(p, q)] != E2.dot(r.phi[p], r.phi[q]))
        throw InternalError("equivalence map is not a morphism");
  if (!is_permutation_of_range(r.phi)) throw InternalError("equivalence map is not bijective");
  for (std::size_t a = 0; a < A.order(); ++a)
    if (r.phi[e1.i(a)] != e2.i(a)) throw InternalError("phi o i != i'");
  for (std::size_t p = 0; p < E1.size(); ++p)
    if (e2.pi(r.phi[p]) != e1.pi(p)) throw InternalError("pi' o phi != pi");
  return r;
}

/// Centrality and exactness of an extension, for externally supplied tables.
inline Verdict verify_extension(const CentralExtensionLCS& ext) {
  if (ext.e.size() != ext.base.size() * ext.m()) return Verdict::fail("shape", {}, "|E| != |X||A|");
  if (auto v = verify_linear_cycle_set(ext.e); !v) return v;
  if (auto v = detail::check_exact(ext); !v) return v;
  return detail::check_central(ext);
}

struct CanonicalExtension {
  CentralExtensionLCS ext;
  std::vector<Index> section;  // s carried over to X x A
};

/// An extension on an arbitrary carrier, given by its tables, i, pi and a
/// section s, moved onto X x A by p -> (pi(p), i^{-1}(p - s(pi p) + s(0))),
/// which keeps i(a) at (0, a). Throws VerificationError naming the first
/// broken requirement.
inline CanonicalExtension canonicalise_extension(const LinearCycleSet& x, const FinAbGroup& a, const LinearCycleSet& e, const std::vector<Index>& i,
                                                  const std::vector<Index>& pi, const std::vector<Index>& s) {
  using detail::I;
  const std::size_t n = x.size(), m = a.order(), N = e.size();
  if (N != n * m || i.size() != m || pi.size() != N || s.size() != n) throw std::invalid_argument("extension data has the wrong sizes");
  for (const auto v : i)
    if (v >= N) throw std::invalid_argument("i: entry out of range");
  for (const auto v : pi)
    if (v >= n) throw std::invalid_argument("pi: entry out of range");
  for (const auto v : s)
    if (v >= N) throw std::invalid_argument("section: entry out of range");
  if (auto v = verify_linear_cycle_set(e); !v) throw VerificationError(v);
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      if (pi[e.plus(p, q)] != x.plus(pi[p], pi[q])) throw VerificationError(Verdict::fail("pi-additive", {I(p), I(q)}));
      if (pi[e.dot(p, q)] != x.dot(pi[p], pi[q])) throw VerificationError(Verdict::fail("pi-dot", {I(p), I(q)}));
    }
  const OpTable amul = a.addition_table();
  std::vector<std::optional<Index>> i_inv(N);
  for (std::size_t u = 0; u < m; ++u) {
    if (pi[i[u]] != x.zero()) throw VerificationError(Verdict::fail("exactness", {I(u)}, "pi(i(a)) != 0"));
    if (i_inv[i[u]]) throw VerificationError(Verdict::fail("i-injective", {I(*i_inv[i[u]]), I(u)}));
    i_inv[i[u]] = static_cast<Index>(u);
    for (std::size_t w = 0; w < m; ++w)
      if (e.plus(i[u], i[w]) != i[amul(u, w)]) throw VerificationError(Verdict::fail("i-additive", {I(u), I(w)}));
  }
  for (std::size_t u = 0; u < n; ++u)
    if (pi[s[u]] != u) throw VerificationError(Verdict::fail("section", {I(u)}, "pi(s(x)) != x"));
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t p = 0; p < N; ++p)
      if (e.dot(p, i[u]) != i[u] || e.dot(i[u], p) != p) throw VerificationError(Verdict::fail("centrality", {I(p), I(u)}));
  // |i(A)| = m = |ker pi| since s makes pi onto, so every p - s(pi p) has a preimage
  Permutation label(N);
  for (std::size_t p = 0; p < N; ++p) {
    const Index d = e.plus(e.plus(static_cast<Index>(p), e.neg(s[pi[p]])), s[x.zero()]);
    if (!i_inv[d]) throw VerificationError(Verdict::fail("exactness", {I(p)}, "ker pi is not i(A)"));
    label[p] = static_cast<Index>(pi[p] * m + *i_inv[d]);
  }
  if (!is_permutation_of_range(label)) throw InternalError("relabelling onto X x A is not a bijection");
  OpTable plus(N), dot(N);
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q) {
      plus.set(label[p], label[q], label[e.plus(p, q)]);
      dot.set(label[p], label[q], label[e.dot(p, q)]);
    }
  AdditiveTable add;
  if (auto v = verify_abelian_group(plus, &add); !v) throw InternalError("relabelled + is not a group");
  CentralExtensionLCS out{x, a, LinearCycleSet{std::move(add), std::move(dot), std::nullopt}, std::nullopt};
  if (auto v = verify_extension(out); !v) throw InternalError("relabelled extension fails: " + v.condition);
  std::vector<Index> sec(n);
  for (std::size_t u = 0; u < n; ++u) sec[u] = label[s[u]];
  return {std::move(out), std::move(sec)};
}

}  // namespace cslab
