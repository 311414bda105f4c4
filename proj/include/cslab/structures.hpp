// Table-based cycle sets, linear cycle sets, braces, racks and bi-groupoids,
// with verifiers that report the first failing witness in lexicographic order.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cslab/abelian.hpp"

namespace cslab {

struct Verdict {
  bool ok = true;
  std::string condition;      // empty on pass
  std::vector<Int> witness;   // indices, in the order the condition names them
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string condition, std::vector<Int> witness, std::string detail = {}) {
    return {false, std::move(condition), std::move(witness), std::move(detail)};
  }
  explicit operator bool() const { return ok; }
};

/// Structure verification failure, carrying the verdict that caused it.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(Verdict v)
      : std::runtime_error("verification failed: " + v.condition + (v.detail.empty() ? "" : " (" + v.detail + ")")),
        verdict_(std::move(v)) {}
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

namespace detail {

inline bool row_is_bijection(const OpTable& t, std::size_t x) {
  std::vector<bool> seen(t.size(), false);
  for (std::size_t y = 0; y < t.size(); ++y) {
    if (seen[t(x, y)]) return false;
    seen[t(x, y)] = true;
  }
  return true;
}

inline Permutation row(const OpTable& t, std::size_t x) {
  Permutation p(t.size());
  for (std::size_t y = 0; y < t.size(); ++y) p[y] = t(x, y);
  return p;
}

inline Int I(std::size_t v) { return static_cast<Int>(v); }

}  // namespace detail

// ---------------------------------------------------------------- cycle sets

struct CycleSet {
  OpTable dot;
  std::size_t size() const { return dot.size(); }
};

inline Verdict verify_cycle_set(const OpTable& dot) {
  using detail::I;
  const std::size_t n = dot.size();
  for (std::size_t x = 0; x < n; ++x)
    if (!detail::row_is_bijection(dot, x)) return Verdict::fail("bijectivity", {I(x)}, "left translation is not a bijection");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (dot(dot(x, y), dot(x, z)) != dot(dot(y, x), dot(y, z)))
          return Verdict::fail("axiom", {I(x), I(y), I(z)}, "(x.y).(x.z) != (y.x).(y.z)");
  return Verdict::pass();
}

inline Verdict verify_nondegenerate(const OpTable& dot) {
  std::vector<bool> seen(dot.size(), false);
  for (std::size_t x = 0; x < dot.size(); ++x) {
    const Index sq = dot(x, x);
    if (seen[sq]) return Verdict::fail("squaring", {detail::I(x)}, "squaring map is not injective");
    seen[sq] = true;
  }
  return Verdict::pass();
}

/// Every cycle set table on {0..n-1}, in lexicographic table order.
inline std::vector<OpTable> enumerate_cycle_sets(std::size_t n) {
  if (n > 4) throw SizeBoundError("enumerate_cycle_sets is limited to n <= 4");
  std::vector<Permutation> perms;
  Permutation p = identity_permutation(n);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<OpTable> out;
  OpTable t(n);
  auto rec = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      if (verify_cycle_set(t)) out.push_back(t);
      return;
    }
    for (const auto& q : perms) {
      for (std::size_t y = 0; y < n; ++y) t.set(x, y, q[y]);
      self(self, x + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// ------------------------------------------------------ linear cycle sets

/// An abelian group given by its addition table; index `zero` is the identity.
struct AdditiveTable {
  OpTable plus;
  Index zero = 0;
  std::vector<Index> negation;

  static AdditiveTable of(const FinAbGroup& g) { return {g.addition_table(), 0, g.negation_map()}; }
  std::size_t size() const { return plus.size(); }
};

/// Checks that `plus` is an abelian group table; on success fills identity and negation.
inline Verdict verify_abelian_group(const OpTable& plus, AdditiveTable* out = nullptr) {
  using detail::I;
  const std::size_t n = plus.size();
  if (n == 0) return Verdict::fail("group", {}, "empty carrier");
  std::optional<Index> zero;
  for (std::size_t e = 0; e < n && !zero; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = plus(e, x) == x;
    if (ok) zero = static_cast<Index>(e);
  }
  if (!zero) return Verdict::fail("identity", {}, "no additive identity");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (plus(x, y) != plus(y, x)) return Verdict::fail("commutativity", {I(x), I(y)});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (plus(plus(x, y), z) != plus(x, plus(y, z))) return Verdict::fail("associativity", {I(x), I(y), I(z)});
  std::vector<Index> neg(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = 0;
    while (y < n && plus(x, y) != *zero) ++y;
    if (y == n) return Verdict::fail("inverse", {I(x)});
    neg[x] = static_cast<Index>(y);
  }
  if (out) *out = {plus, *zero, std::move(neg)};
  return Verdict::pass();
}

struct LinearCycleSet {
  AdditiveTable add;
  OpTable dot;
  std::optional<FinAbGroup> carrier;  // set when `add` is the standard table of this group

  std::size_t size() const { return dot.size(); }
  Index plus(std::size_t x, std::size_t y) const { return add.plus(x, y); }
  Index neg(std::size_t x) const { return add.negation[x]; }
  Index zero() const { return add.zero; }
  Permutation left(std::size_t x) const { return detail::row(dot, x); }

  static LinearCycleSet on_group(const FinAbGroup& g, OpTable dot) {
    if (dot.size() != g.order()) throw std::invalid_argument("dot table size does not match the group order");
    return {AdditiveTable::of(g), std::move(dot), g};
  }
};

inline bool operator==(const LinearCycleSet& a, const LinearCycleSet& b) {
  return a.add.plus == b.add.plus && a.dot == b.dot;
}

inline LinearCycleSet trivial_lcs(const FinAbGroup& g) {
  return LinearCycleSet::on_group(g, OpTable::generate(g.order(), [](Index, Index y) { return y; }));
}

/// Checks the abelian group, bijectivity of left translations, both linear
/// axioms, and then the cycle set axiom, which the others imply.
inline Verdict verify_linear_cycle_set(const AdditiveTable& a, const OpTable& dot) {
  using detail::I;
  const std::size_t n = dot.size();
  if (a.size() != n) return Verdict::fail("shape", {}, "addition and dot tables differ in size");
  if (auto v = verify_abelian_group(a.plus); !v) return v;
  const auto& p = a.plus;
  for (std::size_t x = 0; x < n; ++x)
    if (!detail::row_is_bijection(dot, x)) return Verdict::fail("bijectivity", {I(x)}, "left translation is not a bijection");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (dot(x, p(y, z)) != p(dot(x, y), dot(x, z))) return Verdict::fail("distributivity", {I(x), I(y), I(z)}, "x.(y+z) != x.y + x.z");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (dot(p(x, y), z) != dot(dot(x, y), dot(x, z))) return Verdict::fail("compatibility", {I(x), I(y), I(z)}, "(x+y).z != (x.y).(x.z)");
  if (auto v = verify_cycle_set(dot); !v) {
    v.condition = "internal:cycle-set-axiom";
    v.detail = "linear axioms hold but the cycle set axiom fails";
    return v;
  }
  return Verdict::pass();
}

inline Verdict verify_linear_cycle_set(const LinearCycleSet& l) { return verify_linear_cycle_set(l.add, l.dot); }

// ------------------------------------------------------------------ braces

struct Brace {
  AdditiveTable add;
  OpTable circ;
  std::optional<FinAbGroup> carrier;

  std::size_t size() const { return circ.size(); }

  static Brace on_group(const FinAbGroup& g, OpTable circ) {
    if (circ.size() != g.order()) throw std::invalid_argument("circ table size does not match the group order");
    return {AdditiveTable::of(g), std::move(circ), g};
  }
};

inline Brace trivial_brace(const FinAbGroup& g) {
  return Brace::on_group(g, g.addition_table());
}

inline Verdict verify_brace(const AdditiveTable& a, const OpTable& circ) {
  using detail::I;
  const std::size_t n = circ.size();
  if (a.size() != n) return Verdict::fail("shape", {}, "addition and circle tables differ in size");
  if (auto v = verify_abelian_group(a.plus); !v) return v;
  const auto& p = a.plus;
  const Index e = a.zero;
  for (std::size_t x = 0; x < n; ++x)
    if (circ(e, x) != x || circ(x, e) != x) return Verdict::fail("circ-identity", {I(x)}, "additive zero is not the circle identity");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (circ(circ(x, y), z) != circ(x, circ(y, z))) return Verdict::fail("circ-associativity", {I(x), I(y), I(z)});
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = 0;
    while (y < n && !(circ(x, y) == e && circ(y, x) == e)) ++y;
    if (y == n) return Verdict::fail("circ-inverse", {I(x)});
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (p(circ(x, p(y, z)), x) != p(circ(x, y), circ(x, z)))
          return Verdict::fail("brace-axiom", {I(x), I(y), I(z)}, "a o (b+c) + a != a o b + a o c");
  return Verdict::pass();
}

inline Verdict verify_brace(const Brace& b) { return verify_brace(b.add, b.circ); }

/// x.y = x^{-1} o (x + y).
inline LinearCycleSet brace_to_lcs(const Brace& b) {
  if (auto v = verify_brace(b); !v) throw VerificationError(v);
  const std::size_t n = b.size();
  std::vector<Index> inv(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (b.circ(x, y) == b.add.zero) inv[x] = static_cast<Index>(y);
  return {b.add, OpTable::generate(n, [&](Index x, Index y) { return b.circ(inv[x], b.add.plus(x, y)); }), b.carrier};
}

/// x o y = x + L_x^{-1}(y); the result is re-verified and converted back.
inline Brace lcs_to_brace(const LinearCycleSet& l) {
  if (auto v = verify_linear_cycle_set(l); !v) throw VerificationError(v);
  const std::size_t n = l.size();
  std::vector<Permutation> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[x] = inverse_permutation(l.left(x));
  Brace b{l.add, OpTable::generate(n, [&](Index x, Index y) { return l.plus(x, inv[x][y]); }), l.carrier};
  if (auto v = verify_brace(b); !v) throw InternalError("lcs_to_brace produced a non-brace: " + v.condition);
  if (!(brace_to_lcs(b) == l)) throw InternalError("lcs_to_brace does not invert brace_to_lcs");
  return b;
}

// ------------------------------------------------------------------- racks

struct Rack {
  OpTable star;
  std::size_t size() const { return star.size(); }
};

inline Verdict verify_rack(const OpTable& star) {
  using detail::I;
  const std::size_t n = star.size();
  for (std::size_t x = 0; x < n; ++x)
    if (!detail::row_is_bijection(star, x)) return Verdict::fail("bijectivity", {I(x)});
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (star(z, star(y, x)) != star(star(z, y), star(z, x)))
          return Verdict::fail("left-distributivity", {I(z), I(y), I(x)}, "z*(y*x) != (z*y)*(z*x)");
  return Verdict::pass();
}

struct RackConversion {
  Verdict verdict;                 // fails with the commuting witness when the rack is not abelian
  std::optional<CycleSet> cycle_set;
};

inline RackConversion abelian_rack_to_cycle_set(const Rack& r) {
  using detail::I;
  if (auto v = verify_rack(r.star); !v) return {v, std::nullopt};
  const auto& s = r.star;
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      for (std::size_t z = 0; z < r.size(); ++z)
        if (s(x, s(y, z)) != s(y, s(x, z))) return {Verdict::fail("not-abelian", {I(x), I(y), I(z)}, "x*(y*z) != y*(x*z)"), std::nullopt};
  if (auto v = verify_cycle_set(s); !v) throw InternalError("abelian rack failed the cycle set axiom");
  return {Verdict::pass(), CycleSet{s}};
}

// ------------------------------------------------- braid relation and YBE

/// r(x, y) stored at x * n + y.
struct PairMap {
  std::size_t n = 0;
  std::vector<std::pair<Index, Index>> r;

  std::pair<Index, Index> operator()(std::size_t x, std::size_t y) const { return r[x * n + y]; }
};

struct BraidReport {
  Verdict braid;
  bool left_nondegenerate = false;   // y -> first(r(x, y)) bijective for all x
  bool right_nondegenerate = false;  // x -> second(r(x, y)) bijective for all y
};

inline BraidReport verify_braid(const PairMap& r) {
  using detail::I;
  const std::size_t n = r.n;
  if (r.r.size() != n * n) throw std::invalid_argument("malformed pair map");
  for (const auto& [a, b] : r.r)
    if (a >= n || b >= n) throw std::invalid_argument("malformed pair map: entry out of range");
  BraidReport rep;
  using Triple = std::array<Index, 3>;
  auto r12 = [&](Triple t) { auto [a, b] = r(t[0], t[1]); return Triple{a, b, t[2]}; };
  auto r23 = [&](Triple t) { auto [b, c] = r(t[1], t[2]); return Triple{t[0], b, c}; };
  for (std::size_t x = 0; x < n && rep.braid.ok; ++x)
    for (std::size_t y = 0; y < n && rep.braid.ok; ++y)
      for (std::size_t z = 0; z < n && rep.braid.ok; ++z) {
        const Triple t{static_cast<Index>(x), static_cast<Index>(y), static_cast<Index>(z)};
        if (r12(r23(r12(t))) != r23(r12(r23(t)))) rep.braid = Verdict::fail("braid", {I(x), I(y), I(z)}, "r12 r23 r12 != r23 r12 r23");
      }
  rep.left_nondegenerate = rep.right_nondegenerate = true;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> a(n, false), b(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      a[r(x, y).first] = true;
      b[r(y, x).second] = true;
    }
    rep.left_nondegenerate = rep.left_nondegenerate && std::all_of(a.begin(), a.end(), [](bool v) { return v; });
    rep.right_nondegenerate = rep.right_nondegenerate && std::all_of(b.begin(), b.end(), [](bool v) { return v; });
  }
  return rep;
}

struct BiGroupoid {
  OpTable table1;  // x . y
  OpTable table2;  // x * y
  std::size_t size() const { return table1.size(); }
};

/// S(x, y) = (x . y, y * x).
inline PairMap bigroupoid_map(const BiGroupoid& b) {
  const std::size_t n = b.size();
  PairMap m{n, std::vector<std::pair<Index, Index>>(n * n)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m.r[x * n + y] = {b.table1(x, y), b.table2(y, x)};
  return m;
}

inline Verdict bigroupoid_conditions(const BiGroupoid& b) {
  using detail::I;
  const auto& d = b.table1;
  const auto& s = b.table2;
  const std::size_t n = b.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (d(x, d(y, z)) != d(d(x, y), d(s(y, x), z))) return Verdict::fail("first", {I(x), I(y), I(z)});
        if (d(s(d(y, z), x), s(z, y)) != s(d(s(y, x), z), d(x, y))) return Verdict::fail("second", {I(x), I(y), I(z)});
        if (s(s(z, y), s(d(y, z), x)) != s(z, s(y, x))) return Verdict::fail("third", {I(x), I(y), I(z)});
      }
  return Verdict::pass();
}

struct YbeEquivalence {
  Verdict braid;
  Verdict conditions;
  bool agree() const { return braid.ok == conditions.ok; }
};

/// Both verdicts for S; disagreement is an internal error.
inline YbeEquivalence bigroupoid_ybe_equivalence(const BiGroupoid& b) {
  if (b.table1.size() != b.table2.size()) throw std::invalid_argument("bi-groupoid tables differ in size");
  YbeEquivalence e{verify_braid(bigroupoid_map(b)).braid, bigroupoid_conditions(b)};
  if (!e.agree()) throw InternalError("braid verdict and bi-groupoid conditions disagree");
  return e;
}

// ----------------------------------------------------------- enumeration

/// All linear cycle sets on the group, as assignments x -> L_x in Aut(A)
/// satisfying L_{x+y} = L_{L_x(y)} L_x. Sorted by dot table.
inline std::vector<LinearCycleSet> enumerate_lcs(const FinAbGroup& g, std::size_t max_order = 8) {
  if (g.order() > max_order) throw SizeBoundError("enumerate_lcs: |A| = " + std::to_string(g.order()) + " exceeds bound " + std::to_string(max_order));
  const std::size_t n = g.order();
  const OpTable plus = g.addition_table();
  const auto neg = g.negation_map();
  std::vector<Permutation> auts;
  for (const auto& h : enumerate_automorphisms(g)) auts.push_back(h.as_map());
  std::sort(auts.begin(), auts.end());
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < auts.size(); ++i) index[auts[i]] = static_cast<int>(i);
  const int id = index.at(identity_permutation(n));

  std::vector<std::vector<int>> mul(auts.size(), std::vector<int>(auts.size()));
  std::vector<int> inv(auts.size());
  for (std::size_t a = 0; a < auts.size(); ++a) {
    for (std::size_t b = 0; b < auts.size(); ++b) mul[a][b] = index.at(compose(auts[a], auts[b]));
    inv[a] = index.at(inverse_permutation(auts[a]));
  }

  std::set<OpTable> found;
  std::vector<int> assign(n, -1);

  // Closes the partial assignment under both forms of the compatibility law.
  auto propagate = [&](std::vector<int>& l) -> bool {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t x = 0; x < n; ++x) {
        if (l[x] < 0) continue;
        for (std::size_t u = 0; u < n; ++u) {
          const std::size_t y = plus(u, neg[x]);  // u = x + y
          const std::size_t w = auts[l[x]][y];
          if (l[u] >= 0 && l[w] >= 0) {
            if (l[u] != mul[l[w]][l[x]]) return false;
          } else if (l[w] >= 0) {
            l[u] = mul[l[w]][l[x]];
            changed = true;
          } else if (l[u] >= 0) {
            l[w] = mul[l[u]][inv[l[x]]];
            changed = true;
          }
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::vector<int> l) -> void {
    if (!propagate(l)) return;
    auto it = std::find(l.begin(), l.end(), -1);
    if (it == l.end()) {
      found.insert(OpTable::generate(n, [&](Index x, Index y) { return auts[l[x]][y]; }));
      return;
    }
    const std::size_t x = static_cast<std::size_t>(it - l.begin());
    for (std::size_t a = 0; a < auts.size(); ++a) {
      auto next = l;
      next[x] = static_cast<int>(a);
      self(self, std::move(next));
    }
  };
  assign[0] = id;
  rec(rec, assign);

  std::vector<LinearCycleSet> out;
  for (const auto& t : found) {
    auto l = LinearCycleSet::on_group(g, t);
    if (auto v = verify_linear_cycle_set(l); !v) throw InternalError("enumerate_lcs produced an invalid structure: " + v.condition);
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace cslab
