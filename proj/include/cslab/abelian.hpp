// Finite abelian groups in invariant-factor form, homomorphisms between them,
// and subgroup / quotient machinery built on the Smith normal form engine.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cslab/int_matrix.hpp"

namespace cslab {

using Index = std::uint32_t;
using Element = std::vector<Int>;
using Permutation = std::vector<Index>;

class SizeBoundError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Row-major n x n table of element indices.
class OpTable {
 public:
  OpTable() = default;
  explicit OpTable(std::size_t n, Index fill = 0) : n_(n), data_(n * n, fill) {}

  template <class F>
  static OpTable generate(std::size_t n, F&& f) {
    OpTable t(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) t.data_[x * n + y] = static_cast<Index>(f(static_cast<Index>(x), static_cast<Index>(y)));
    return t;
  }

  /// Throws std::invalid_argument unless the rows form a square table with entries in range.
  static OpTable from_rows(const std::vector<std::vector<Int>>& rows) {
    const std::size_t n = rows.size();
    OpTable t(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (rows[x].size() != n) throw std::invalid_argument("malformed table: not square");
      for (std::size_t y = 0; y < n; ++y) {
        const Int v = rows[x][y];
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("malformed table: entry out of range");
        t.data_[x * n + y] = static_cast<Index>(v);
      }
    }
    return t;
  }

  std::size_t size() const { return n_; }
  Index operator()(std::size_t x, std::size_t y) const { return data_[x * n_ + y]; }
  void set(std::size_t x, std::size_t y, Index v) { data_[x * n_ + y] = v; }

  std::vector<std::vector<Int>> rows() const {
    std::vector<std::vector<Int>> out(n_, std::vector<Int>(n_));
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) out[x][y] = (*this)(x, y);
    return out;
  }

  friend bool operator==(const OpTable&, const OpTable&) = default;
  friend auto operator<=>(const OpTable& a, const OpTable& b) { return a.data_ <=> b.data_; }

 private:
  std::size_t n_ = 0;
  std::vector<Index> data_;
};

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), Index{0});
  return p;
}

inline Permutation inverse_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<Index>(i);
  return inv;
}

/// (a * b)(x) = a(b(x)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline bool is_permutation_of_range(const std::vector<Index>& p) {
  std::vector<bool> seen(p.size(), false);
  for (Index v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

class FinAbGroup {
 public:
  FinAbGroup() = default;  // trivial group

  /// Builds a group from arbitrary positive cyclic orders, normalised into an
  /// invariant-factor chain. Throws std::invalid_argument on factors < 1.
  static FinAbGroup make(const std::vector<Int>& factors) {
    std::vector<Int> kept;
    for (Int f : factors) {
      if (f < 1) throw std::invalid_argument("group factors must be positive, got " + std::to_string(f));
      if (f > 1) kept.push_back(f);
    }
    IntMatrix diag(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) diag(i, i) = kept[i];
    const auto snf = smith_normal_form(diag);
    FinAbGroup g;
    for (Int d : snf.diagonal_entries())
      if (d > 1) g.factors_.push_back(d);
    g.exponent_ = g.factors_.empty() ? 1 : g.factors_.back();
    return g;
  }

  const std::vector<Int>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  /// Throws std::overflow_error when the order does not fit in 63 bits.
  std::size_t order() const {
    Int o = 1;
    for (Int d : factors_) o = checked::mul(o, d);
    return static_cast<std::size_t>(o);
  }
  Int exponent() const { return exponent_; }
  bool is_trivial() const { return factors_.empty(); }

  Element zero() const { return Element(rank(), 0); }

  Element reduce(Element x) const {
    if (x.size() != rank()) throw std::invalid_argument("element has wrong number of coordinates");
    for (std::size_t j = 0; j < rank(); ++j) x[j] = floor_mod(x[j], factors_[j]);
    return x;
  }

  bool is_reduced(const Element& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t j = 0; j < rank(); ++j)
      if (x[j] < 0 || x[j] >= factors_[j]) return false;
    return true;
  }

  Element add(const Element& a, const Element& b) const {
    Element c(rank());
    for (std::size_t j = 0; j < rank(); ++j) c[j] = floor_mod(a[j] + b[j], factors_[j]);
    return c;
  }

  Element neg(const Element& a) const {
    Element c(rank());
    for (std::size_t j = 0; j < rank(); ++j) c[j] = floor_mod(-a[j], factors_[j]);
    return c;
  }

  Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

  Element scale(Int k, const Element& a) const {
    Element c(rank());
    for (std::size_t j = 0; j < rank(); ++j) c[j] = floor_mod(floor_mod(k, factors_[j]) * a[j], factors_[j]);
    return c;
  }

  /// Mixed-radix index, first coordinate most significant; index 0 is the identity.
  Index index_of(const Element& x) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < rank(); ++j) idx = idx * static_cast<std::size_t>(factors_[j]) + static_cast<std::size_t>(floor_mod(x[j], factors_[j]));
    return static_cast<Index>(idx);
  }

  Element element(std::size_t idx) const {
    Element x(rank());
    for (std::size_t j = rank(); j-- > 0;) {
      x[j] = static_cast<Int>(idx % static_cast<std::size_t>(factors_[j]));
      idx /= static_cast<std::size_t>(factors_[j]);
    }
    return x;
  }

  Int element_order(const Element& x) const {
    Int o = 1;
    for (std::size_t j = 0; j < rank(); ++j) o = std::lcm(o, factors_[j] / std::gcd(x[j], factors_[j]));
    return o;
  }

  OpTable addition_table() const {
    return OpTable::generate(order(), [&](Index a, Index b) { return index_of(add(element(a), element(b))); });
  }

  std::vector<Index> negation_map() const {
    std::vector<Index> out(order());
    for (std::size_t i = 0; i < order(); ++i) out[i] = index_of(neg(element(i)));
    return out;
  }

  /// Direct power G^k. The coordinates repeat the factor list slot by slot,
  /// so `invariant_factors()` of a power is a cyclic decomposition, not a chain.
  FinAbGroup power(std::size_t k) const {
    FinAbGroup p;
    for (std::size_t i = 0; i < k; ++i) p.factors_.insert(p.factors_.end(), factors_.begin(), factors_.end());
    p.exponent_ = k == 0 ? 1 : exponent_;
    return p;
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Int> factors_;
  Int exponent_ = 1;
};

inline FinAbGroup make_group(const std::vector<Int>& factors) { return FinAbGroup::make(factors); }

/// Homomorphism between finite abelian groups given by the images of the
/// domain's canonical generators (columns of `matrix`).
struct GroupHom {
  FinAbGroup domain;
  FinAbGroup codomain;
  IntMatrix matrix;  // codomain.rank() x domain.rank()

  static GroupHom from_images(const FinAbGroup& domain, const FinAbGroup& codomain, const std::vector<Element>& images) {
    if (images.size() != domain.rank()) throw std::invalid_argument("need one image per domain generator");
    GroupHom h{domain, codomain, IntMatrix(codomain.rank(), domain.rank())};
    for (std::size_t j = 0; j < images.size(); ++j) {
      const Element y = codomain.reduce(images[j]);
      for (std::size_t i = 0; i < codomain.rank(); ++i) h.matrix(i, j) = y[i];
    }
    if (!h.well_defined()) throw std::invalid_argument("generator images do not respect the domain relations");
    return h;
  }

  static GroupHom identity(const FinAbGroup& g) {
    return GroupHom{g, g, IntMatrix::identity(g.rank())};
  }

  /// d_j * column_j == 0 in the codomain for every domain generator j.
  bool well_defined() const {
    if (matrix.rows() != codomain.rank() || matrix.cols() != domain.rank()) return false;
    for (std::size_t j = 0; j < domain.rank(); ++j)
      if (codomain.scale(domain.invariant_factors()[j], matrix.column(j)) != codomain.zero()) return false;
    return true;
  }

  Element operator()(const Element& x) const { return codomain.reduce(matrix.apply(x)); }

  /// Index-level action on the whole domain.
  std::vector<Index> as_map() const {
    std::vector<Index> out(domain.order());
    for (std::size_t i = 0; i < domain.order(); ++i) out[i] = codomain.index_of((*this)(domain.element(i)));
    return out;
  }
};

inline GroupHom compose(const GroupHom& a, const GroupHom& b) {
  if (!(a.domain == b.codomain)) throw std::invalid_argument("composition of incompatible homomorphisms");
  return GroupHom{b.domain, a.codomain, (a.matrix * b.matrix).reduced(std::max<Int>(1, a.codomain.exponent()))};
}

namespace detail {

/// Subquotient N / D of Z^dim with modulus * Z^dim contained in D.
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(std::size_t dim, Int modulus, const std::vector<std::vector<Int>>& numerator,
              const std::vector<std::vector<Int>>& denominator)
      : dim_(dim), n_(modulus) {
    // Coordinates on the numerator lattice L = {x : (U x)_i == 0 mod delta_i}.
    IntMatrix gens(dim, numerator.size());
    for (std::size_t k = 0; k < numerator.size(); ++k)
      for (std::size_t i = 0; i < dim; ++i) gens(i, k) = floor_mod(numerator[k][i], n_);
    const SmithForm s = smith_normal_form(gens, n_);
    u_ = s.left;
    u_inv_ = s.left_inverse;
    delta_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) delta_[i] = s.factor_order(i) == 0 ? n_ : s.factor_order(i);
    for (std::size_t i = 0; i < dim; ++i) {
      if (i >= s.rank_bound()) delta_[i] = n_;
      if (n_ / delta_[i] > 1) live_.push_back(i);
    }

    // Relations among numerator coordinates: the cyclic orders plus the denominator.
    const std::size_t s_dim = live_.size();
    IntMatrix rel(s_dim, s_dim + denominator.size());
    for (std::size_t r = 0; r < s_dim; ++r) rel(r, r) = n_ / delta_[live_[r]];
    for (std::size_t k = 0; k < denominator.size(); ++k) {
      if (!lattice_contains(denominator[k])) throw std::domain_error("subgroup generator lies outside the ambient span");
      const auto c = lattice_coordinates(denominator[k]);
      for (std::size_t r = 0; r < s_dim; ++r) rel(r, s_dim + k) = c[r];
    }
    const SmithForm q = smith_normal_form(rel, n_);
    q_left_ = q.left;
    q_left_inv_ = q.left_inverse;
    for (std::size_t r = 0; r < s_dim; ++r) {
      const Int e = q.factor_order(r);
      if (e > 1) {
        kept_.push_back(r);
        orders_.push_back(e);
      }
    }
  }

  const std::vector<Int>& orders() const { return orders_; }

  std::size_t order() const {
    std::size_t o = 1;
    for (Int e : orders_) o *= static_cast<std::size_t>(e);
    return o;
  }

  bool lattice_contains(const std::vector<Int>& x) const {
    const auto y = u_.apply(reduce_vec(x));
    for (std::size_t i = 0; i < dim_; ++i)
      if (floor_mod(y[i], n_) % delta_[i] != 0) return false;
    return true;
  }

  /// Canonical quotient coordinates of a numerator element.
  std::vector<Int> reduce(const std::vector<Int>& x) const {
    if (!lattice_contains(x)) throw std::domain_error("element lies outside the ambient span");
    const auto c = lattice_coordinates(x);
    std::vector<Int> q(kept_.size());
    for (std::size_t k = 0; k < kept_.size(); ++k) {
      Int acc = 0;
      for (std::size_t r = 0; r < c.size(); ++r) acc = floor_mod(acc + q_left_(kept_[k], r) * c[r], n_);
      q[k] = floor_mod(acc, orders_[k]);
    }
    return q;
  }

  /// A numerator element with the given quotient coordinates.
  std::vector<Int> lift(const std::vector<Int>& q) const {
    if (q.size() != kept_.size()) throw std::invalid_argument("wrong number of quotient coordinates");
    const std::size_t s_dim = live_.size();
    std::vector<Int> full_q(s_dim, 0);
    for (std::size_t k = 0; k < kept_.size(); ++k) full_q[kept_[k]] = floor_mod(q[k], orders_[k]);
    std::vector<Int> y(dim_, 0);
    for (std::size_t r = 0; r < s_dim; ++r) {
      Int c = 0;
      for (std::size_t k = 0; k < s_dim; ++k) c = floor_mod(c + q_left_inv_(r, k) * full_q[k], n_);
      y[live_[r]] = floor_mod(c * delta_[live_[r]], n_);
    }
    std::vector<Int> x(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      Int acc = 0;
      for (std::size_t k = 0; k < dim_; ++k) acc = floor_mod(acc + u_inv_(i, k) * y[k], n_);
      x[i] = acc;
    }
    return x;
  }

 private:
  std::vector<Int> reduce_vec(const std::vector<Int>& x) const {
    if (x.size() != dim_) throw std::invalid_argument("vector has wrong dimension");
    std::vector<Int> r(x);
    for (auto& v : r) v = floor_mod(v, n_);
    return r;
  }

  std::vector<Int> lattice_coordinates(const std::vector<Int>& x) const {
    const auto y = u_.apply(reduce_vec(x));
    std::vector<Int> c(live_.size());
    for (std::size_t r = 0; r < live_.size(); ++r) {
      const std::size_t i = live_[r];
      c[r] = floor_mod(floor_mod(y[i], n_) / delta_[i], n_ / delta_[i]);
    }
    return c;
  }

  std::size_t dim_ = 0;
  Int n_ = 1;
  IntMatrix u_, u_inv_;
  std::vector<Int> delta_;
  std::vector<std::size_t> live_;
  IntMatrix q_left_, q_left_inv_;
  std::vector<std::size_t> kept_;
  std::vector<Int> orders_;
};

inline std::vector<std::vector<Int>> relation_columns(const FinAbGroup& g) {
  std::vector<std::vector<Int>> cols;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    if (g.invariant_factors()[j] == g.exponent()) continue;  // zero modulo the exponent
    std::vector<Int> v(g.rank(), 0);
    v[j] = g.invariant_factors()[j];
    cols.push_back(std::move(v));
  }
  return cols;
}

inline void enumerate_mixed_radix(const std::vector<Int>& radices, const auto& visit) {
  std::vector<Int> digits(radices.size(), 0);
  for (;;) {
    visit(digits);
    std::size_t j = radices.size();
    while (j > 0) {
      --j;
      if (++digits[j] < radices[j]) break;
      digits[j] = 0;
      if (j == 0) return;
    }
    if (radices.empty()) return;
  }
}

}  // namespace detail

/// Subgroup of a finite abelian group spanned by explicit generators, with
/// its computed invariant factors and canonical coordinates.
class SubgroupPresentation {
 public:
  SubgroupPresentation() = default;

  SubgroupPresentation(FinAbGroup ambient, std::vector<Element> generators)
      : ambient_(std::move(ambient)), generators_(std::move(generators)) {
    for (auto& g : generators_) g = ambient_.reduce(g);
    auto numerator = generators_;
    const auto rel = detail::relation_columns(ambient_);
    numerator.insert(numerator.end(), rel.begin(), rel.end());
    data_ = detail::Subquotient(ambient_.rank(), ambient_.exponent(), numerator, rel);
    structure_ = FinAbGroup::make(data_.orders());
  }

  const FinAbGroup& ambient() const { return ambient_; }
  const std::vector<Element>& generators() const { return generators_; }
  const FinAbGroup& structure() const { return structure_; }
  std::size_t order() const { return structure_.order(); }

  bool contains(const Element& x) const { return data_.lattice_contains(x); }

  /// Coordinates of a member with respect to the cyclic decomposition in `cyclic_orders()`.
  Element coordinates(const Element& x) const { return data_.reduce(x); }
  const std::vector<Int>& cyclic_orders() const { return data_.orders(); }
  Element element_at(const Element& coords) const { return ambient_.reduce(data_.lift(coords)); }

  /// Every member, in the mixed-radix order of the cyclic coordinates.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(order());
    detail::enumerate_mixed_radix(data_.orders(), [&](const std::vector<Int>& c) { out.push_back(element_at(c)); });
    return out;
  }

 private:
  FinAbGroup ambient_;
  std::vector<Element> generators_;
  detail::Subquotient data_;
  FinAbGroup structure_;
};

/// Quotient of the span of `ambient` by the span of `sub`.
class Quotient {
 public:
  Quotient() = default;

  Quotient(const SubgroupPresentation& ambient, const SubgroupPresentation& sub) : ambient_group_(ambient.ambient()) {
    if (!(ambient.ambient() == sub.ambient())) throw std::invalid_argument("quotient of subgroups of different groups");
    auto numerator = ambient.generators();
    auto denominator = sub.generators();
    const auto rel = detail::relation_columns(ambient_group_);
    numerator.insert(numerator.end(), rel.begin(), rel.end());
    denominator.insert(denominator.end(), rel.begin(), rel.end());
    data_ = detail::Subquotient(ambient_group_.rank(), ambient_group_.exponent(), numerator, denominator);
    // Cyclic orders of the quotient already form a divisibility chain.
    group_ = FinAbGroup::make(data_.orders());
    if (group_.invariant_factors() != data_.orders()) throw InternalError("quotient orders are not an invariant-factor chain");
  }

  const FinAbGroup& group() const { return group_; }
  std::size_t order() const { return group_.order(); }

  /// Canonical coordinates; equal iff the inputs differ by an element of the sub-span.
  Element reduce(const Element& x) const { return data_.reduce(ambient_group_.reduce(x)); }
  bool in_span(const Element& x) const { return data_.lattice_contains(x); }
  Element lift(const Element& coords) const { return ambient_group_.reduce(data_.lift(coords)); }

 private:
  FinAbGroup ambient_group_;
  detail::Subquotient data_;
  FinAbGroup group_;
};

inline Quotient quotient(const SubgroupPresentation& ambient, const SubgroupPresentation& sub) { return {ambient, sub}; }

/// Integer linear system with one modulus per row, solved through one
/// modular row lattice and a single Smith form.
class ModularSystem {
 public:
  ModularSystem(std::size_t unknowns, Int modulus) : unknowns_(unknowns), lattice_(unknowns + 1, modulus) {}

  std::size_t unknowns() const { return unknowns_; }
  Int modulus() const { return lattice_.modulus(); }

  /// Adds sum_k row[k] x_k == rhs (mod row_modulus); row_modulus must divide modulus().
  void add_equation(const std::vector<Int>& row, Int rhs, Int row_modulus) {
    if (row.size() != unknowns_) throw std::invalid_argument("equation has wrong number of coefficients");
    if (row_modulus <= 0 || modulus() % row_modulus != 0) throw std::invalid_argument("row modulus must divide the system modulus");
    const Int scale = modulus() / row_modulus;
    std::vector<Int> r(unknowns_ + 1);
    for (std::size_t k = 0; k < unknowns_; ++k) r[k] = floor_mod(row[k], row_modulus) * scale;
    r[unknowns_] = floor_mod(-rhs, row_modulus) * scale;
    lattice_.insert(std::move(r));
  }

  /// Generators modulo modulus() of the homogeneous solution lattice.
  std::vector<std::vector<Int>> homogeneous_solutions() const {
    const IntMatrix& h = lattice_.basis();
    IntMatrix coeffs(h.rows(), unknowns_);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t k = 0; k < unknowns_; ++k) coeffs(i, k) = h(i, k);
    return modular_nullspace(coeffs, modulus());
  }

  /// One solution modulo modulus(), or nullopt when the system is inconsistent.
  std::optional<std::vector<Int>> solve() const {
    const Int n = modulus();
    const auto aug = modular_nullspace(lattice_.basis(), n);
    // Look for a combination whose augmented coordinate is 1 mod n;
    // invariant: sum coef[k] w_k == g (mod n).
    Int g = n;
    std::vector<Int> coef(aug.size(), 0);
    for (std::size_t k = 0; k < aug.size(); ++k) {
      const Int w = floor_mod(aug[k][unknowns_], n);
      if (w == 0) continue;
      const auto e = extended_gcd(g, w);
      if (e.g == g) continue;
      for (auto& c : coef) c = floor_mod(c * floor_mod(e.s, n), n);
      coef[k] = floor_mod(coef[k] + floor_mod(e.t, n), n);
      g = e.g;
    }
    if (floor_mod(g, n) != floor_mod(1, n) && n != 1) return std::nullopt;
    if (n == 1) return std::vector<Int>(unknowns_, 0);
    std::vector<Int> x(unknowns_, 0);
    for (std::size_t k = 0; k < aug.size(); ++k)
      if (coef[k] != 0)
        for (std::size_t i = 0; i < unknowns_; ++i) x[i] = floor_mod(x[i] + coef[k] * aug[k][i], n);
    return x;
  }

 private:
  std::size_t unknowns_;
  ModularRowLattice lattice_;
};

/// Solves M x == b componentwise modulo the given per-row moduli.
inline std::optional<std::vector<Int>> solve_mod(const IntMatrix& m, const std::vector<Int>& b, const std::vector<Int>& moduli) {
  if (b.size() != m.rows() || moduli.size() != m.rows()) throw std::invalid_argument("solve_mod: dimension mismatch");
  Int n = 1;
  for (Int e : moduli) {
    if (e <= 0) throw std::invalid_argument("solve_mod: moduli must be positive");
    n = lcm_checked(n, e);
  }
  ModularSystem sys(m.cols(), n);
  for (std::size_t i = 0; i < m.rows(); ++i) sys.add_equation(m.row(i), b[i], moduli[i]);
  auto x = sys.solve();
  if (x) {
    const auto y = m.apply(*x);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (floor_mod(y[i] - b[i], moduli[i]) != 0) throw InternalError("solve_mod produced an invalid solution");
  }
  return x;
}

inline SubgroupPresentation kernel(const GroupHom& h) {
  Int n = lcm_checked(std::max<Int>(1, h.domain.exponent()), std::max<Int>(1, h.codomain.exponent()));
  const std::size_t m = h.domain.rank();
  ModularSystem sys(m, n);
  for (std::size_t i = 0; i < h.codomain.rank(); ++i) sys.add_equation(h.matrix.row(i), 0, h.codomain.invariant_factors()[i]);
  std::vector<Element> gens;
  for (auto& v : sys.homogeneous_solutions()) gens.push_back(h.domain.reduce(v));
  return SubgroupPresentation(h.domain, std::move(gens));
}

inline SubgroupPresentation image(const GroupHom& h) {
  std::vector<Element> gens;
  for (std::size_t j = 0; j < h.domain.rank(); ++j) gens.push_back(h.codomain.reduce(h.matrix.column(j)));
  return SubgroupPresentation(h.codomain, std::move(gens));
}

namespace detail {

/// Closure of a set of element indices under addition (subgroup generated).
inline std::vector<bool> span_indices(const FinAbGroup& g, const std::vector<Element>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Index> frontier{0};
  in[0] = true;
  while (!frontier.empty()) {
    const Index cur = frontier.back();
    frontier.pop_back();
    const Element x = g.element(cur);
    for (const auto& s : gens) {
      const Index nxt = g.index_of(g.add(x, s));
      if (!in[nxt]) {
        in[nxt] = true;
        frontier.push_back(nxt);
      }
    }
  }
  return in;
}

}  // namespace detail

struct AutomorphismOptions {
  std::size_t max_order = 64;
  std::size_t max_count = std::size_t{1} << 20;
  bool brute_force = false;  // permutation search, orders <= 8 only
};

/// Every automorphism of A, in a deterministic order (lexicographic in the
/// generator-image indices). The identity is always present.
inline std::vector<GroupHom> enumerate_automorphisms(const FinAbGroup& a, const AutomorphismOptions& opt = {}) {
  if (a.order() > opt.max_order)
    throw SizeBoundError("enumerate_automorphisms: |A| = " + std::to_string(a.order()) + " exceeds bound " + std::to_string(opt.max_order));
  std::vector<GroupHom> out;
  const std::size_t k = a.rank();

  if (opt.brute_force) {
    if (a.order() > 8) throw SizeBoundError("brute-force automorphism search is limited to order 8");
    const OpTable plus = a.addition_table();
    Permutation p = identity_permutation(a.order());
    do {
      bool ok = true;
      for (std::size_t x = 0; x < a.order() && ok; ++x)
        for (std::size_t y = 0; y < a.order() && ok; ++y) ok = p[plus(x, y)] == plus(p[x], p[y]);
      if (ok) {
        std::vector<Element> images;
        for (std::size_t j = 0; j < k; ++j) {
          Element e = a.zero();
          e[j] = 1;
          images.push_back(a.element(p[a.index_of(e)]));
        }
        out.push_back(GroupHom::from_images(a, a, images));
      }
    } while (std::next_permutation(p.begin() + 1, p.end()));
    std::sort(out.begin(), out.end(), [&](const GroupHom& x, const GroupHom& y) {
      std::vector<Index> ix, iy;
      for (std::size_t j = 0; j < k; ++j) {
        ix.push_back(a.index_of(x.matrix.column(j)));
        iy.push_back(a.index_of(y.matrix.column(j)));
      }
      return ix < iy;
    });
    return out;
  }

  // Generator-image search: the j-th image must have order dividing d_j and
  // the partial map must stay injective on the span of the first j+1 generators.
  std::vector<std::vector<Element>> candidates(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < a.order(); ++i) {
      const Element e = a.element(i);
      if (a.invariant_factors()[j] % a.element_order(e) == 0) candidates[j].push_back(e);
    }
  std::vector<Element> chosen;
  std::vector<std::size_t> partial_orders(k + 1, 1);
  for (std::size_t j = 0; j < k; ++j) partial_orders[j + 1] = partial_orders[j] * static_cast<std::size_t>(a.invariant_factors()[j]);

  auto recurse = [&](auto&& self, std::size_t j) -> void {
    if (j == k) {
      if (out.size() >= opt.max_count) throw SizeBoundError("enumerate_automorphisms: too many automorphisms");
      out.push_back(GroupHom::from_images(a, a, chosen));
      return;
    }
    for (const auto& e : candidates[j]) {
      chosen.push_back(e);
      const auto span = detail::span_indices(a, chosen);
      const auto size = static_cast<std::size_t>(std::count(span.begin(), span.end(), true));
      if (size == partial_orders[j + 1]) self(self, j + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

/// Bilinear maps G x G -> A as a subgroup of A^(G x G), slot (x, y) at x*|G| + y.
inline SubgroupPresentation bilinear_group(const FinAbGroup& g, const FinAbGroup& a) {
  const std::size_t n = g.order(), k = a.rank();
  const FinAbGroup ambient = a.power(n * n);
  if (k == 0) return SubgroupPresentation(ambient, {});
  const OpTable plus = g.addition_table();
  ModularSystem sys(n * n * k, a.exponent());
  auto slot = [&](std::size_t x, std::size_t y) { return x * n + y; };
  auto emit = [&](const std::vector<std::pair<std::size_t, Int>>& terms) {
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Int> row(n * n * k, 0);
      for (const auto& [s, c] : terms) row[s * k + j] += c;
      sys.add_equation(row, 0, a.invariant_factors()[j]);
    }
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        emit({{slot(plus(x, y), z), 1}, {slot(x, z), -1}, {slot(y, z), -1}});
        emit({{slot(x, plus(y, z)), 1}, {slot(x, y), -1}, {slot(x, z), -1}});
      }
  std::vector<Element> gens;
  for (auto& v : sys.homogeneous_solutions()) gens.push_back(ambient.reduce(v));
  return SubgroupPresentation(ambient, std::move(gens));
}

}  // namespace cslab
