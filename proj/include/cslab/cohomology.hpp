// Normalised 2-cocycles of a linear cycle set with coefficients in a finite
// abelian group, 1-cocycles, symmetric group cohomology and the map to it.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cslab/abelian.hpp"
#include "cslab/structures.hpp"

namespace cslab {

/// Pair of maps X x X -> A, stored as A-indices at x * n + y.
struct Cochain2 {
  std::size_t n = 0;
  std::vector<Index> f, g;

  static Cochain2 zero(std::size_t n) { return {n, std::vector<Index>(n * n, 0), std::vector<Index>(n * n, 0)}; }
  Index F(std::size_t x, std::size_t y) const { return f[x * n + y]; }
  Index G(std::size_t x, std::size_t y) const { return g[x * n + y]; }
  friend bool operator==(const Cochain2&, const Cochain2&) = default;
  friend auto operator<=>(const Cochain2& a, const Cochain2& b) {
    if (auto c = a.f <=> b.f; c != 0) return c;
    return a.g <=> b.g;
  }
};

inline Cochain2 add(const FinAbGroup& a, const Cochain2& c, const Cochain2& d) {
  Cochain2 r = c;
  for (std::size_t i = 0; i < c.f.size(); ++i) {
    r.f[i] = a.index_of(a.add(a.element(c.f[i]), a.element(d.f[i])));
    r.g[i] = a.index_of(a.add(a.element(c.g[i]), a.element(d.g[i])));
  }
  return r;
}

inline Cochain2 negate(const FinAbGroup& a, const Cochain2& c) {
  Cochain2 r = c;
  for (std::size_t i = 0; i < c.f.size(); ++i) {
    r.f[i] = a.index_of(a.neg(a.element(c.f[i])));
    r.g[i] = a.index_of(a.neg(a.element(c.g[i])));
  }
  return r;
}

inline Cochain2 subtract(const FinAbGroup& a, const Cochain2& c, const Cochain2& d) { return add(a, c, negate(a, d)); }

/// Coboundary of lambda: f(x,y) = l(x.y) - l(y), g(x,y) = l(x+y) - l(x) - l(y).
inline Cochain2 coboundary(const LinearCycleSet& x, const FinAbGroup& a, const std::vector<Index>& lambda) {
  const std::size_t n = x.size();
  if (lambda.size() != n) throw std::invalid_argument("lambda has wrong length");
  Cochain2 c = Cochain2::zero(n);
  auto L = [&](std::size_t u) { return a.element(lambda[u]); };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      c.f[u * n + v] = a.index_of(a.sub(L(x.dot(u, v)), L(v)));
      c.g[u * n + v] = a.index_of(a.sub(a.sub(L(x.plus(u, v)), L(u)), L(v)));
    }
  return c;
}

inline void check_shape(const LinearCycleSet& x, const FinAbGroup& a, const Cochain2& c) {
  const std::size_t n = x.size();
  if (c.n != n || c.f.size() != n * n || c.g.size() != n * n) throw std::invalid_argument("cochain shape does not match the cycle set");
  for (std::size_t i = 0; i < n * n; ++i)
    if (c.f[i] >= a.order() || c.g[i] >= a.order()) throw std::invalid_argument("cochain value outside the coefficient group");
}

/// The four cocycle conditions over all triples, then g(0,0) = 0 when asked.
inline Verdict verify_cocycle(const LinearCycleSet& x, const FinAbGroup& a, const Cochain2& c, bool normalised = true) {
  using detail::I;
  check_shape(x, a, c);
  const std::size_t n = x.size();
  auto F = [&](std::size_t u, std::size_t v) { return a.element(c.F(u, v)); };
  auto G = [&](std::size_t u, std::size_t v) { return a.element(c.G(u, v)); };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (G(p, q) != G(q, p)) return Verdict::fail("g-symmetry", {I(p), I(q)}, "g(x,y) != g(y,x)");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        if (a.add(G(p, q), G(x.plus(p, q), r)) != a.add(G(q, r), G(p, x.plus(q, r))))
          return Verdict::fail("g-cocycle", {I(p), I(q), I(r)}, "g(x,y) + g(x+y,z) != g(y,z) + g(x,y+z)");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        if (F(x.plus(p, q), r) != a.add(F(x.dot(p, q), x.dot(p, r)), F(p, r)))
          return Verdict::fail("f-dot", {I(p), I(q), I(r)}, "f(x+y,z) != f(x.y,x.z) + f(x,z)");
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        if (a.sub(a.sub(F(p, x.plus(q, r)), F(p, q)), F(p, r)) != a.sub(G(x.dot(p, q), x.dot(p, r)), G(q, r)))
          return Verdict::fail("f-g-mixed", {I(p), I(q), I(r)}, "f(x,y+z) - f(x,y) - f(x,z) != g(x.y,x.z) - g(y,z)");
  if (normalised && c.G(x.zero(), x.zero()) != 0) return Verdict::fail("normalisation", {I(x.zero()), I(x.zero())}, "g(0,0) != 0");
  return Verdict::pass();
}

/// Coordinates of cochains: slot u (f at x*n+y, then g at n*n + x*n+y, or
/// only g when `g_only`) times A-coordinate j, at position u * rank(A) + j.
class CochainSpace {
 public:
  CochainSpace(LinearCycleSet x, FinAbGroup a, bool g_only = false)
      : x_(std::move(x)), a_(std::move(a)), g_only_(g_only) {
    const std::size_t n = x_.size();
    slots_ = (g_only_ ? 1 : 2) * n * n;
    ambient_ = a_.power(slots_);
  }

  const LinearCycleSet& cycle_set() const { return x_; }
  const FinAbGroup& coefficients() const { return a_; }
  const FinAbGroup& ambient() const { return ambient_; }
  bool g_only() const { return g_only_; }
  std::size_t n() const { return x_.size(); }
  std::size_t k() const { return a_.rank(); }
  std::size_t dim() const { return slots_ * k(); }

  std::size_t f_slot(std::size_t p, std::size_t q) const {
    if (g_only_) throw std::logic_error("no f slots in a g-only cochain space");
    return p * n() + q;
  }
  std::size_t g_slot(std::size_t p, std::size_t q) const { return (g_only_ ? 0 : n() * n()) + p * n() + q; }

  Element to_vector(const Cochain2& c) const {
    check_shape(x_, a_, c);
    Element v(dim(), 0);
    for (std::size_t p = 0; p < n(); ++p)
      for (std::size_t q = 0; q < n(); ++q) {
        if (!g_only_) put(v, f_slot(p, q), a_.element(c.F(p, q)));
        put(v, g_slot(p, q), a_.element(c.G(p, q)));
      }
    return v;
  }

  Cochain2 from_vector(const Element& v) const {
    if (v.size() != dim()) throw std::invalid_argument("cochain vector has wrong length");
    Cochain2 c = Cochain2::zero(n());
    for (std::size_t p = 0; p < n(); ++p)
      for (std::size_t q = 0; q < n(); ++q) {
        if (!g_only_) c.f[p * n() + q] = a_.index_of(a_.reduce(get(v, f_slot(p, q))));
        c.g[p * n() + q] = a_.index_of(a_.reduce(get(v, g_slot(p, q))));
      }
    return c;
  }

  /// Only the parts this space records.
  Cochain2 restrict(const Cochain2& c) const {
    if (!g_only_) return c;
    Cochain2 r = c;
    std::fill(r.f.begin(), r.f.end(), 0);
    return r;
  }

 private:
  void put(Element& v, std::size_t slot, const Element& e) const {
    for (std::size_t j = 0; j < k(); ++j) v[slot * k() + j] = e[j];
  }
  Element get(const Element& v, std::size_t slot) const {
    return Element(v.begin() + static_cast<long>(slot * k()), v.begin() + static_cast<long>((slot + 1) * k()));
  }

  LinearCycleSet x_;
  FinAbGroup a_;
  bool g_only_;
  std::size_t slots_ = 0;
  FinAbGroup ambient_;
};

namespace detail {

using Term = std::pair<std::size_t, Int>;  // (slot, coefficient)

/// Collects slot-level linear conditions, one row per A-coordinate, skipping duplicates.
class ConditionCollector {
 public:
  ConditionCollector(std::size_t slots, const FinAbGroup& a)
      : slots_(slots), a_(a), sys_(slots * a.rank(), a.exponent()) {}

  void add(std::vector<Term> terms) {
    std::map<std::size_t, Int> merged;
    for (auto [s, c] : terms) merged[s] += c;
    std::vector<Term> key;
    for (auto [s, c] : merged)
      if (c != 0) key.emplace_back(s, c);
    if (key.empty() || !seen_.insert(key).second) return;
    const std::size_t k = a_.rank();
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Int> row(slots_ * k, 0);
      for (auto [s, c] : key) row[s * k + j] = c;
      sys_.add_equation(row, 0, a_.invariant_factors()[j]);
    }
  }

  std::vector<std::vector<Int>> solutions() const { return sys_.homogeneous_solutions(); }

 private:
  std::size_t slots_;
  const FinAbGroup& a_;
  ModularSystem sys_;
  std::set<std::vector<Term>> seen_;
};

}  // namespace detail

/// Z^2, B^2 and H^2 of one cochain space.
class SecondCohomology {
 public:
  /// `g_only` computes symmetric group cohomology of (X,+) instead.
  SecondCohomology(const LinearCycleSet& x, const FinAbGroup& a, bool g_only = false) : space_(x, a, g_only) {
    const std::size_t n = x.size();
    std::vector<Element> z_gens;
    if (a.rank() > 0) {
      detail::ConditionCollector eq(g_only ? n * n : 2 * n * n, a);
      auto G = [&](std::size_t p, std::size_t q) { return space_.g_slot(p, q); };
      auto F = [&](std::size_t p, std::size_t q) { return space_.f_slot(p, q); };
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) eq.add({{G(p, q), 1}, {G(q, p), -1}});
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t r = 0; r < n; ++r) {
            eq.add({{G(p, q), 1}, {G(x.plus(p, q), r), 1}, {G(q, r), -1}, {G(p, x.plus(q, r)), -1}});
            if (g_only) continue;
            eq.add({{F(x.plus(p, q), r), 1}, {F(x.dot(p, q), x.dot(p, r)), -1}, {F(p, r), -1}});
            eq.add({{F(p, x.plus(q, r)), 1}, {F(p, q), -1}, {F(p, r), -1}, {G(x.dot(p, q), x.dot(p, r)), -1}, {G(q, r), 1}});
          }
      eq.add({{G(x.zero(), x.zero()), 1}});
      z_gens = eq.solutions();
    }
    z2_ = SubgroupPresentation(space_.ambient(), z_gens);

    std::vector<Element> b_gens;
    for (std::size_t p = 0; p < n; ++p) {
      if (p == x.zero()) continue;
      for (std::size_t j = 0; j < a.rank(); ++j) {
        Element e = a.zero();
        e[j] = 1;
        std::vector<Index> lambda(n, 0);
        lambda[p] = a.index_of(e);
        b_gens.push_back(space_.to_vector(space_.restrict(coboundary(x, a, lambda))));
      }
    }
    b2_ = SubgroupPresentation(space_.ambient(), b_gens);
    for (const auto& b : b_gens)
      if (!z2_.contains(b)) throw InternalError("a coboundary is not a cocycle");
    h2_ = quotient(z2_, b2_);
  }

  const CochainSpace& space() const { return space_; }
  const LinearCycleSet& cycle_set() const { return space_.cycle_set(); }
  const FinAbGroup& coefficients() const { return space_.coefficients(); }
  const SubgroupPresentation& z2() const { return z2_; }
  const SubgroupPresentation& b2() const { return b2_; }
  const FinAbGroup& group() const { return h2_.group(); }
  std::size_t order() const { return h2_.order(); }
  std::string kind() const { return space_.g_only() ? "group-H2sym" : "lcs-H2"; }

  bool is_cocycle(const Cochain2& c) const { return z2_.contains(space_.to_vector(c)); }

  /// Canonical coordinates of the class of a normalised cocycle.
  Element reduce(const Cochain2& c) const {
    const Element v = space_.to_vector(c);
    if (!z2_.contains(v)) throw std::domain_error("cochain is not a normalised cocycle");
    return h2_.reduce(v);
  }

  Cochain2 representative(const Element& coords) const { return space_.from_vector(h2_.lift(group().reduce(coords))); }
  Cochain2 canonical(const Cochain2& c) const { return representative(reduce(c)); }
  bool cohomologous(const Cochain2& c, const Cochain2& d) const { return reduce(c) == reduce(d); }

  /// Representatives of the cyclic generators of H^2.
  std::vector<Cochain2> generators() const {
    std::vector<Cochain2> out;
    for (std::size_t i = 0; i < group().rank(); ++i) {
      Element e = group().zero();
      e[i] = 1;
      out.push_back(representative(e));
    }
    return out;
  }

  /// Every class, in index order of `group()`.
  std::vector<Element> classes() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < group().order(); ++i) out.push_back(group().element(i));
    return out;
  }

  /// Every normalised cocycle (desk scale only).
  std::vector<Cochain2> cocycles() const {
    std::vector<Cochain2> out;
    for (const auto& v : z2_.elements()) out.push_back(space_.from_vector(v));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  CochainSpace space_;
  SubgroupPresentation z2_, b2_;
  Quotient h2_;
};

inline SecondCohomology compute_cohomology(const LinearCycleSet& x, const FinAbGroup& a) { return {x, a}; }

/// H^2_sym((G,+); A): symmetric normalised group 2-cocycles modulo coboundaries.
inline SecondCohomology compute_h2sym(const FinAbGroup& g, const FinAbGroup& a) { return {trivial_lcs(g), a, true}; }

/// Normalised lambda with f = l(x.y) - l(y), g = l(x+y) - l(x) - l(y), if one exists.
inline std::optional<std::vector<Index>> coboundary_witness(const LinearCycleSet& x, const FinAbGroup& a, const Cochain2& c, bool g_only = false) {
  check_shape(x, a, c);
  const std::size_t n = x.size(), k = a.rank();
  if (k == 0) return std::vector<Index>(n, 0);
  ModularSystem sys(n * k, a.exponent());
  auto emit = [&](const std::vector<detail::Term>& terms, Index rhs) {
    const Element b = a.element(rhs);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Int> row(n * k, 0);
      for (auto [s, coef] : terms) row[s * k + j] += coef;
      sys.add_equation(row, b[j], a.invariant_factors()[j]);
    }
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (!g_only) emit({{x.dot(p, q), 1}, {q, -1}}, c.F(p, q));
      emit({{x.plus(p, q), 1}, {p, -1}, {q, -1}}, c.G(p, q));
    }
  emit({{x.zero(), 1}}, 0);
  const auto sol = sys.solve();
  if (!sol) return std::nullopt;
  std::vector<Index> lambda(n);
  for (std::size_t p = 0; p < n; ++p) {
    Element e(k);
    for (std::size_t j = 0; j < k; ++j) e[j] = (*sol)[p * k + j];
    lambda[p] = a.index_of(a.reduce(e));
  }
  Cochain2 d = coboundary(x, a, lambda);
  if (g_only) d.f = c.f;
  if (!(d == c)) throw InternalError("coboundary witness does not reproduce the cochain");
  return lambda;
}

// ------------------------------------------------------------ 1-cocycles

inline Verdict verify_one_cocycle(const LinearCycleSet& x, const FinAbGroup& a, const std::vector<Index>& lambda, bool additive_only = false) {
  using detail::I;
  const std::size_t n = x.size();
  if (lambda.size() != n) throw std::invalid_argument("lambda has wrong length");
  auto L = [&](std::size_t u) { return a.element(lambda[u]); };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (L(x.plus(p, q)) != a.add(L(p), L(q))) return Verdict::fail("additive", {I(p), I(q)}, "l(x+y) != l(x) + l(y)");
  if (!additive_only)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (L(x.dot(p, q)) != L(q)) return Verdict::fail("dot-invariant", {I(p), I(q)}, "l(x.y) != l(y)");
  return Verdict::pass();
}

/// Z^1_N(X; A), or Hom((X,+), A) when `additive_only`.
class FirstCocycles {
 public:
  FirstCocycles(const LinearCycleSet& x, const FinAbGroup& a, bool additive_only = false) : x_(x), a_(a) {
    const std::size_t n = x.size(), k = a.rank();
    ambient_ = a.power(n);
    std::vector<Element> gens;
    if (k > 0) {
      detail::ConditionCollector eq(n, a);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          eq.add({{x.plus(p, q), 1}, {p, -1}, {q, -1}});
          if (!additive_only) eq.add({{x.dot(p, q), 1}, {q, -1}});
        }
      gens = eq.solutions();
    }
    group_ = SubgroupPresentation(ambient_, gens);
  }

  const SubgroupPresentation& group() const { return group_; }
  std::size_t order() const { return group_.order(); }

  std::vector<Index> to_map(const Element& v) const {
    std::vector<Index> lambda(x_.size());
    for (std::size_t p = 0; p < x_.size(); ++p) {
      Element e(a_.rank());
      for (std::size_t j = 0; j < a_.rank(); ++j) e[j] = v[p * a_.rank() + j];
      lambda[p] = a_.index_of(e);
    }
    return lambda;
  }

  Element to_vector(const std::vector<Index>& lambda) const {
    Element v;
    for (Index i : lambda) {
      const Element e = a_.element(i);
      v.insert(v.end(), e.begin(), e.end());
    }
    return v;
  }

  /// Members as maps X -> A, sorted.
  std::vector<std::vector<Index>> members() const {
    std::vector<std::vector<Index>> out;
    for (const auto& v : group_.elements()) out.push_back(to_map(v));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const std::vector<Index>& lambda) const { return group_.contains(to_vector(lambda)); }

 private:
  LinearCycleSet x_;
  FinAbGroup a_;
  FinAbGroup ambient_;
  SubgroupPresentation group_;
};

inline FirstCocycles compute_z1(const LinearCycleSet& x, const FinAbGroup& a) { return {x, a}; }

// ------------------------------------------------------- the map to H^2_sym

/// Lambda[(f,g)] = [g] as a homomorphism H^2_N(X;A) -> H^2_sym((X,+);A).
class LambdaMap {
 public:
  LambdaMap(const SecondCohomology& h2, const SecondCohomology& h2sym) : h2_(&h2), sym_(&h2sym) {
    if (h2.space().g_only() || !h2sym.space().g_only()) throw std::invalid_argument("LambdaMap needs an LCS H^2 and a symmetric H^2");
    if (!(h2.cycle_set().add.plus == h2sym.cycle_set().add.plus) || !(h2.coefficients() == h2sym.coefficients()))
      throw std::invalid_argument("LambdaMap: instances do not match");
    // well defined: coboundary generators go to zero
    for (const auto& b : h2.b2().generators())
      if (sym_->reduce(h2.space().from_vector(b)) != sym_->group().zero()) throw InternalError("Lambda is not well defined");
    std::vector<Element> images;
    for (const auto& g : h2.generators()) images.push_back(apply_cocycle(g));
    hom_ = GroupHom::from_images(h2.group(), h2sym.group(), images);
  }

  Element apply_cocycle(const Cochain2& c) const {
    Cochain2 gpart = c;
    std::fill(gpart.f.begin(), gpart.f.end(), 0);
    return sym_->reduce(gpart);
  }

  Element operator()(const Element& cls) const { return hom_(cls); }
  const GroupHom& hom() const { return hom_; }

 private:
  const SecondCohomology* h2_;
  const SecondCohomology* sym_;
  GroupHom hom_;
};

struct LambdaReport {
  std::vector<Int> h2_factors, h2sym_factors, kernel_factors, image_factors;
  std::size_t kernel_order = 0, image_order = 0;
};

inline LambdaReport lambda_report(const LambdaMap& m) {
  const auto ker = kernel(m.hom());
  const auto im = image(m.hom());
  return {m.hom().domain.invariant_factors(), m.hom().codomain.invariant_factors(),
          ker.structure().invariant_factors(), im.structure().invariant_factors(), ker.order(), im.order()};
}

struct DecompositionReport {
  std::size_t h2_order = 0, bilin_order = 0, h2sym_order = 0;
  bool homomorphism = false, injective = false, surjective = false, lambda_is_projection = false;
  bool certified() const { return homomorphism && injective && surjective && lambda_is_projection; }
};

/// For a trivial X: class -> (f as a bilinear map, Lambda(class)), checked on every class.
inline DecompositionReport trivial_decomposition(const LinearCycleSet& x, const FinAbGroup& a) {
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x.dot(p, q) != q) throw std::invalid_argument("trivial_decomposition needs a trivial linear cycle set");
  if (!x.carrier) throw std::invalid_argument("trivial_decomposition needs a group carrier");
  const SecondCohomology h2(x, a);
  const SecondCohomology sym = compute_h2sym(*x.carrier, a);
  const LambdaMap lam(h2, sym);
  const SubgroupPresentation bil = bilinear_group(*x.carrier, a);
  DecompositionReport rep{h2.order(), bil.order(), sym.order()};

  const std::size_t n = x.size(), k = a.rank();
  auto f_part = [&](const Cochain2& c) {
    Element v(n * n * k);
    for (std::size_t s = 0; s < n * n; ++s) {
      const Element e = a.element(c.f[s]);
      for (std::size_t j = 0; j < k; ++j) v[s * k + j] = e[j];
    }
    return v;
  };
  auto phi = [&](const Element& cls) {
    const Cochain2 rep_c = h2.representative(cls);
    const Element fv = f_part(rep_c);
    if (!bil.contains(fv)) throw InternalError("f-part of a trivial-X cocycle is not bilinear");
    return std::pair{bil.coordinates(fv), lam.apply_cocycle(rep_c)};
  };

  std::set<std::pair<Element, Element>> images;
  std::map<Element, std::pair<Element, Element>> table;
  bool hom = true, proj = true;
  const auto classes = h2.classes();
  for (const auto& c : classes) {
    const auto img = phi(c);
    table[c] = img;
    images.insert(img);
    proj = proj && img.second == lam(c);
  }
  auto add_pair = [&](const std::pair<Element, Element>& u, const std::pair<Element, Element>& v) {
    Element s1(u.first.size());
    for (std::size_t i = 0; i < s1.size(); ++i) s1[i] = floor_mod(u.first[i] + v.first[i], bil.cyclic_orders()[i]);
    return std::pair{s1, sym.group().add(u.second, v.second)};
  };
  for (const auto& c1 : classes)
    for (const auto& c2 : classes)
      if (table.at(h2.group().add(c1, c2)) != add_pair(table.at(c1), table.at(c2))) hom = false;
  rep.homomorphism = hom;
  rep.injective = images.size() == classes.size();
  rep.surjective = images.size() == bil.order() * sym.order();
  rep.lambda_is_projection = proj;
  return rep;
}

}  // namespace cslab
