// Integer matrices, checked arithmetic and the Smith normal form engine.
//
// Every subgroup, kernel and quotient computation in cslab goes through
// smith_normal_form(). The engine runs in one of two modes:
//
//  * exact (modulus == 0): arithmetic over Z with overflow-checked 64-bit
//    integers; U * M * V == D holds exactly.
//  * modular (modulus == N > 0): the column lattice of M is taken together
//    with N * Z^rows, so every entry may be reduced modulo N. Then
//    U * M * V == D holds modulo N and each nonzero pivot divides N.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cslab {

using Int = std::int64_t;

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cslab: integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("cslab: integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cslab: integer overflow in multiplication");
  return r;
}

}  // namespace checked

/// Least nonnegative residue; m must be positive.
inline Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int lcm_checked(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked::mul(a / std::gcd(a, b), b);
}

struct ExtendedGcd {
  Int g;  // nonnegative
  Int s;
  Int t;  // g == s * a + t * b
};

inline ExtendedGcd extended_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = checked::sub(old_r, checked::mul(q, r));
    std::swap(old_r, r);
    old_s = checked::sub(old_s, checked::mul(q, s));
    std::swap(old_s, s);
    old_t = checked::sub(old_t, checked::mul(q, t));
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m; a must be a unit.
inline Int inverse_mod(Int a, Int m) {
  if (m == 1) return 0;
  const auto e = extended_gcd(floor_mod(a, m), m);
  if (e.g != 1) throw std::domain_error("cslab: element is not a unit");
  return floor_mod(e.s, m);
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("cslab: ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("cslab: ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.cols_));
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Int> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  std::vector<Int> column(std::size_t c) const {
    std::vector<Int> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<Int> apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("cslab: matrix-vector dimension mismatch");
    std::vector<Int> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      Int acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        const Int a = (*this)(r, c);
        if (a != 0 && x[c] != 0) acc = checked::add(acc, checked::mul(a, x[c]));
      }
      y[r] = acc;
    }
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("cslab: matrix product dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) p(i, j) = checked::add(p(i, j), checked::mul(aik, b(k, j)));
      }
    return p;
  }

  /// Entrywise least nonnegative residues modulo m.
  IntMatrix reduced(Int m) const {
    IntMatrix out = *this;
    for (auto& v : out.data_) v = floor_mod(v, m);
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct SmithForm {
  IntMatrix diagonal;       // same shape as the input
  IntMatrix left;           // U, rows x rows
  IntMatrix right;          // V, cols x cols
  IntMatrix left_inverse;   // U^-1
  IntMatrix right_inverse;  // V^-1
  Int modulus = 0;

  std::size_t rank_bound() const { return std::min(diagonal.rows(), diagonal.cols()); }

  std::vector<Int> diagonal_entries() const {
    std::vector<Int> d(rank_bound());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = diagonal(i, i);
    return d;
  }

  /// Order of the i-th cyclic factor of Z^rows / (M Z^cols + modulus Z^rows).
  /// In exact mode a zero pivot means an infinite factor, reported as 0.
  Int factor_order(std::size_t i) const {
    const Int d = i < rank_bound() ? diagonal(i, i) : 0;
    return modulus == 0 ? d : std::gcd(d, modulus);
  }
};

namespace detail {

class SmithWorker {
 public:
  SmithWorker(const IntMatrix& m, Int modulus)
      : n_(modulus),
        d_(modulus > 0 ? m.reduced(modulus) : m),
        u_(IntMatrix::identity(m.rows())),
        ui_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        vi_(IntMatrix::identity(m.cols())) {
    if (modulus < 0) throw std::invalid_argument("cslab: negative modulus");
  }

  SmithForm run() {
    const std::size_t rows = d_.rows(), cols = d_.cols();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
      if (!bring_pivot(t)) break;
      for (;;) {
        clear_column(t);
        clear_row(t);
        if (!column_clear(t) || !row_clear(t)) continue;
        normalise_pivot(t);
        if (!fix_divisibility(t)) break;
      }
    }
    return {std::move(d_), std::move(u_), std::move(v_), std::move(ui_), std::move(vi_), n_};
  }

 private:
  Int norm(Int x) const { return n_ > 0 ? floor_mod(x, n_) : x; }
  Int mag(Int x) const { return x < 0 ? -x : x; }
  Int combine(Int a, Int x, Int b, Int y) const {
    if (n_ > 0) {
      // Residues are below n_, which keeps the products small.
      return floor_mod(checked::add(checked::mul(floor_mod(a, n_), x), checked::mul(floor_mod(b, n_), y)), n_);
    }
    return checked::add(checked::mul(a, x), checked::mul(b, y));
  }

  // rows (i, j) <- [[a, b], [c, e]] * rows (i, j); determinant must be 1.
  void row_transform(std::size_t i, std::size_t j, Int a, Int b, Int c, Int e) {
    for (IntMatrix* m : {&d_, &u_}) {
      for (std::size_t k = 0; k < m->cols(); ++k) {
        const Int x = (*m)(i, k), y = (*m)(j, k);
        (*m)(i, k) = combine(a, x, b, y);
        (*m)(j, k) = combine(c, x, e, y);
      }
    }
    // U^-1 <- U^-1 * T^-1, T^-1 = [[e, -b], [-c, a]]
    for (std::size_t k = 0; k < ui_.rows(); ++k) {
      const Int x = ui_(k, i), y = ui_(k, j);
      ui_(k, i) = combine(e, x, -c, y);
      ui_(k, j) = combine(-b, x, a, y);
    }
  }

  // cols (i, j) <- cols (i, j) * [[a, c], [b, e]]: new_i = a*col_i + b*col_j, new_j = c*col_i + e*col_j.
  void col_transform(std::size_t i, std::size_t j, Int a, Int b, Int c, Int e) {
    for (IntMatrix* m : {&d_, &v_}) {
      for (std::size_t k = 0; k < m->rows(); ++k) {
        const Int x = (*m)(k, i), y = (*m)(k, j);
        (*m)(k, i) = combine(a, x, b, y);
        (*m)(k, j) = combine(c, x, e, y);
      }
    }
    // V^-1 <- S^-1 * V^-1 with S^-1 = [[e, -c], [-b, a]] acting on rows (i, j).
    for (std::size_t k = 0; k < vi_.cols(); ++k) {
      const Int x = vi_(i, k), y = vi_(j, k);
      vi_(i, k) = combine(e, x, -c, y);
      vi_(j, k) = combine(-b, x, a, y);
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (IntMatrix* m : {&d_, &u_})
      for (std::size_t k = 0; k < m->cols(); ++k) std::swap((*m)(i, k), (*m)(j, k));
    for (std::size_t k = 0; k < ui_.rows(); ++k) std::swap(ui_(k, i), ui_(k, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (IntMatrix* m : {&d_, &v_})
      for (std::size_t k = 0; k < m->rows(); ++k) std::swap((*m)(k, i), (*m)(k, j));
    for (std::size_t k = 0; k < vi_.cols(); ++k) std::swap(vi_(i, k), vi_(j, k));
  }

  void scale_col(std::size_t i, Int unit, Int unit_inverse) {
    for (IntMatrix* m : {&d_, &v_})
      for (std::size_t k = 0; k < m->rows(); ++k) (*m)(k, i) = combine(unit, (*m)(k, i), 0, 0);
    for (std::size_t k = 0; k < vi_.cols(); ++k) vi_(i, k) = combine(unit_inverse, vi_(i, k), 0, 0);
  }

  bool bring_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    Int best = 0;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Int v = mag(d_(i, j));
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          bi = i;
          bj = j;
          if (best == 1) goto found;
        }
      }
    if (best == 0) return false;
  found:
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void clear_column(std::size_t t) {
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      const Int b = d_(i, t);
      if (b == 0) continue;
      const Int a = d_(t, t);
      if (a != 0 && b % a == 0) {
        row_transform(t, i, 1, 0, -(b / a), 1);
      } else {
        const auto e = extended_gcd(a, b);
        row_transform(t, i, e.s, e.t, -(b / e.g), a / e.g);
      }
    }
  }

  void clear_row(std::size_t t) {
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      const Int b = d_(t, j);
      if (b == 0) continue;
      const Int a = d_(t, t);
      if (a != 0 && b % a == 0) {
        col_transform(t, j, 1, 0, -(b / a), 1);
      } else {
        const auto e = extended_gcd(a, b);
        col_transform(t, j, e.s, e.t, -(b / e.g), a / e.g);
      }
    }
  }

  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      if (d_(i, t) != 0) return false;
    return true;
  }

  bool row_clear(std::size_t t) const {
    for (std::size_t j = t + 1; j < d_.cols(); ++j)
      if (d_(t, j) != 0) return false;
    return true;
  }

  void normalise_pivot(std::size_t t) {
    const Int a = d_(t, t);
    if (n_ == 0) {
      if (a < 0) {
        for (std::size_t k = 0; k < d_.cols(); ++k) d_(t, k) = -d_(t, k);
        for (std::size_t k = 0; k < u_.cols(); ++k) u_(t, k) = -u_(t, k);
        for (std::size_t k = 0; k < ui_.rows(); ++k) ui_(k, t) = -ui_(k, t);
      }
      return;
    }
    if (a == 0) return;
    const Int g = std::gcd(a, n_);
    if (g == a) return;
    // Find a unit u with u * a == g (mod n).
    const Int reduced_mod = n_ / g;
    const Int base = inverse_mod(a / g, reduced_mod);
    Int unit = base;
    while (std::gcd(unit, n_) != 1) unit += reduced_mod;
    scale_col(t, unit, inverse_mod(unit, n_));
  }

  // Ensures the pivot divides every entry of the trailing block; returns
  // false once that holds, true after injecting an offending row.
  bool fix_divisibility(std::size_t t) {
    const Int a = d_(t, t);
    if (a == 0) return false;
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      for (std::size_t j = t + 1; j < d_.cols(); ++j)
        if (d_(i, j) % a != 0) {
          row_transform(t, i, 1, 1, 0, 1);
          return true;
        }
    return false;
  }

  Int n_;
  IntMatrix d_, u_, ui_, v_, vi_;
};

}  // namespace detail

/// Smith normal form U * M * V = D with unimodular U, V (see file comment for
/// the modular mode). Diagonal entries form a divisibility chain.
inline SmithForm smith_normal_form(const IntMatrix& m, Int modulus = 0) {
  return detail::SmithWorker(m, modulus).run();
}

/// Row lattice accumulator modulo N: keeps an upper triangular basis H whose
/// row lattice together with N Z^dim equals that of every inserted row.
class ModularRowLattice {
 public:
  ModularRowLattice(std::size_t dim, Int modulus) : dim_(dim), n_(modulus), h_(dim, dim, 0) {
    if (modulus <= 0) throw std::invalid_argument("cslab: modulus must be positive");
  }

  std::size_t dim() const { return dim_; }
  Int modulus() const { return n_; }

  void insert(std::vector<Int> r) {
    if (r.size() != dim_) throw std::invalid_argument("cslab: row length mismatch");
    for (auto& v : r) v = floor_mod(v, n_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const Int b = r[j];
      if (b == 0) continue;
      const Int a = h_(j, j) == 0 ? n_ : h_(j, j);
      if (b % a == 0) {
        const Int q = b / a;
        if (h_(j, j) == 0) {
          r[j] = 0;  // b is a multiple of n_, i.e. already zero
        } else {
          for (std::size_t k = j; k < dim_; ++k) r[k] = floor_mod(r[k] - floor_mod(q * h_(j, k), n_), n_);
        }
        continue;
      }
      const auto e = extended_gcd(a, b);
      // Pair (h_j, r) -> (s h_j + t r, -(b/g) h_j + (a/g) r); h_j is n_ e_j when empty.
      const Int s = floor_mod(e.s, n_), t = floor_mod(e.t, n_);
      const Int c = floor_mod(-(b / e.g), n_), d = floor_mod(a / e.g, n_);
      for (std::size_t k = j; k < dim_; ++k) {
        const Int hk = h_(j, k), rk = r[k];
        h_(j, k) = floor_mod(s * hk + t * rk, n_);
        r[k] = floor_mod(c * hk + d * rk, n_);
      }
      h_(j, j) = e.g % n_;
      r[j] = 0;
    }
  }

  const IntMatrix& basis() const { return h_; }

 private:
  std::size_t dim_;
  Int n_;
  IntMatrix h_;
};

/// Generators (mod N) of {x in Z^dim : r . x == 0 (mod N) for every row r}.
inline std::vector<std::vector<Int>> modular_nullspace(const IntMatrix& rows, Int modulus) {
  const std::size_t dim = rows.cols();
  const SmithForm s = smith_normal_form(rows, modulus);
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < dim; ++i) {
    const Int d = i < s.rank_bound() ? s.diagonal(i, i) : 0;
    const Int step = modulus / std::gcd(d, modulus);
    if (step == modulus) continue;
    std::vector<Int> v(dim);
    bool nonzero = false;
    for (std::size_t k = 0; k < dim; ++k) {
      v[k] = floor_mod(checked::mul(s.right(k, i), step), modulus);
      nonzero = nonzero || v[k] != 0;
    }
    if (nonzero) gens.push_back(std::move(v));
  }
  return gens;
}

}  // namespace cslab
