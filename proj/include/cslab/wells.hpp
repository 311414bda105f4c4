// The action of Aut(X) x Aut(A) on H^2_N(X; A), the map Theta, Aut_A(E) with
// Psi and iota, exactness certificates, and the comparison with the group
// sequence for (E,+).
//
// Convention: Theta(p) = base - p.base in the additive group H^2.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslab/abelian.hpp"
#include "cslab/cohomology.hpp"
#include "cslab/extension.hpp"
#include "cslab/structures.hpp"

namespace cslab {

/// LCS automorphisms of X (bijections preserving + and .), sorted; the identity comes first.
inline std::vector<Permutation> enumerate_aut_lcs(const LinearCycleSet& x, const AutomorphismOptions& opt = {}) {
  const std::size_t n = x.size();
  std::vector<Permutation> candidates;
  if (x.carrier) {
    for (const auto& h : enumerate_automorphisms(*x.carrier, opt)) candidates.push_back(h.as_map());
  } else {
    if (n > 8) throw SizeBoundError("enumerate_aut_lcs: tables without a group carrier are limited to 8 points");
    Permutation p = identity_permutation(n);
    do {
      bool ok = p[x.zero()] == x.zero();
      for (std::size_t u = 0; u < n && ok; ++u)
        for (std::size_t v = 0; v < n && ok; ++v) ok = p[x.plus(u, v)] == x.plus(p[u], p[v]);
      if (ok) candidates.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<Permutation> out;
  for (const auto& p : candidates) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      for (std::size_t v = 0; v < n && ok; ++v) ok = p[x.dot(u, v)] == x.dot(p[u], p[v]);
    if (ok) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  const std::set<Permutation> s(out.begin(), out.end());
  for (const auto& a : out) {
    if (!s.count(inverse_permutation(a))) throw InternalError("Aut(X) is not closed under inverses");
    for (const auto& b : out)
      if (!s.count(compose(a, b))) throw InternalError("Aut(X) is not closed under composition");
  }
  return out;
}

struct AutPair {
  Permutation phi;
  GroupHom theta;
  std::vector<Index> theta_map;
};

/// Aut(X) x Aut(A) as an explicit list; pair index = i_x * |Aut(A)| + i_a.
class AutPairs {
 public:
  AutPairs() = default;
  AutPairs(std::vector<Permutation> aut_x, std::vector<GroupHom> aut_a) : aut_x_(std::move(aut_x)), aut_a_(std::move(aut_a)) {
    for (const auto& t : aut_a_) maps_.push_back(t.as_map());
    for (std::size_t i = 0; i < aut_x_.size(); ++i) x_index_[aut_x_[i]] = i;
    for (std::size_t i = 0; i < maps_.size(); ++i) a_index_[maps_[i]] = i;
    id_x_ = x_index_.at(identity_permutation(aut_x_.front().size()));
    id_a_ = a_index_.at(identity_permutation(maps_.front().size()));
  }

  std::size_t size() const { return aut_x_.size() * aut_a_.size(); }
  std::size_t aut_x_order() const { return aut_x_.size(); }
  std::size_t aut_a_order() const { return aut_a_.size(); }
  std::size_t identity() const { return id_x_ * aut_a_.size() + id_a_; }
  const Permutation& phi(std::size_t p) const { return aut_x_[p / aut_a_.size()]; }
  const GroupHom& theta(std::size_t p) const { return aut_a_[p % aut_a_.size()]; }
  const std::vector<Index>& theta_map(std::size_t p) const { return maps_[p % aut_a_.size()]; }
  AutPair at(std::size_t p) const { return {phi(p), theta(p), theta_map(p)}; }
  const std::vector<Permutation>& aut_x() const { return aut_x_; }

  std::optional<std::size_t> find(const Permutation& phi, const std::vector<Index>& theta_map) const {
    auto ix = x_index_.find(phi);
    auto ia = a_index_.find(theta_map);
    if (ix == x_index_.end() || ia == a_index_.end()) return std::nullopt;
    return ix->second * aut_a_.size() + ia->second;
  }

  /// (phi1 phi2, theta1 theta2).
  std::size_t compose(std::size_t p, std::size_t q) const {
    return *find(cslab::compose(phi(p), phi(q)), cslab::compose(theta_map(p), theta_map(q)));
  }

 private:
  std::vector<Permutation> aut_x_;
  std::vector<GroupHom> aut_a_;
  std::vector<std::vector<Index>> maps_;
  std::map<Permutation, std::size_t> x_index_;
  std::map<std::vector<Index>, std::size_t> a_index_;
  std::size_t id_x_ = 0, id_a_ = 0;
};

/// ^(phi,theta)f(x,y) = theta(f(phi^-1 x, phi^-1 y)), same for g.
inline Cochain2 act_on_cochain(const AutPair& p, const Cochain2& c) {
  const std::size_t n = c.n;
  const Permutation inv = inverse_permutation(p.phi);
  Cochain2 r = Cochain2::zero(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      r.f[x * n + y] = p.theta_map[c.F(inv[x], inv[y])];
      r.g[x * n + y] = p.theta_map[c.G(inv[x], inv[y])];
    }
  return r;
}

/// psi(x,a) = (phi(x), lambda(x) + theta(a)).
struct LiftedAut {
  std::size_t pair = 0;
  Permutation phi;
  std::vector<Index> theta_map;
  std::vector<Index> lambda;
};

/// The table of psi on the canonical carrier.
inline Permutation lift_table(const CentralExtensionLCS& e, const LiftedAut& l) {
  const OpTable amul = e.kernel.addition_table();
  Permutation t(e.e.size());
  for (std::size_t x = 0; x < e.base.size(); ++x)
    for (std::size_t a = 0; a < e.m(); ++a) t[e.pair(x, a)] = e.pair(l.phi[x], amul(l.lambda[x], l.theta_map[a]));
  return t;
}

struct WellsOptions {
  std::size_t max_order = 16;  // |X| * |A|
  AutomorphismOptions automorphisms{};
};

struct WellsCertificate {
  std::string instance;
  std::string carrier_note = "Aut_A(E) is taken on the canonical carrier X x A";
  std::vector<Int> h2_factors;
  Element base;
  std::size_t z1_order = 0, aut_ae_order = 0, pairs_order = 0, h2_order = 0;
  std::vector<AutPair> pairs;
  std::vector<Permutation> iota_image;   // psi tables
  std::vector<Permutation> psi_kernel;   // psi tables
  std::vector<std::size_t> psi_image;    // pair indices
  std::vector<Element> theta_table;      // by pair index
  std::vector<std::size_t> theta_zero;   // pair indices
  std::vector<Permutation> proof_lifts;  // one per member of theta_zero
  bool iota_injective = false, iota_homomorphism = false, psi_homomorphism = false, lifts_closed = false;
  bool ker_psi_eq_im_iota = false, im_psi_eq_theta_zero = false, theta_cocycle = false, proof_lifts_valid = false;
  bool surjective_if_h2_trivial = false;

  bool valid() const {
    return iota_injective && iota_homomorphism && psi_homomorphism && lifts_closed && ker_psi_eq_im_iota && im_psi_eq_theta_zero &&
           theta_cocycle && proof_lifts_valid && surjective_if_h2_trivial;
  }
};

/// One instance X, A with its H^2, pair list and the action on classes.
/// `g_only` switches to the group side: X is replaced by the trivial LCS on
/// (X,+), H^2 by H^2_sym and all lifting conditions by the additive one.
class WellsContext {
 public:
  WellsContext(const LinearCycleSet& x, const FinAbGroup& a, bool g_only = false, const WellsOptions& opt = {})
      : x_(prepare(x, a, g_only, opt)), a_(a), g_only_(g_only), h2_(x_, a, g_only), z1_(x_, a, g_only) {
    pairs_ = AutPairs(enumerate_aut_lcs(x_, opt.automorphisms), enumerate_automorphisms(a, opt.automorphisms));
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      std::vector<Element> images;
      for (const auto& g : h2_.generators()) images.push_back(h2_.reduce(transport(p, g)));
      act_.push_back(GroupHom::from_images(h2_.group(), h2_.group(), images));
    }
    z1_members_ = z1_.members();
  }

  const LinearCycleSet& cycle_set() const { return x_; }
  const FinAbGroup& coefficients() const { return a_; }
  bool g_only() const { return g_only_; }
  const SecondCohomology& h2() const { return h2_; }
  const FirstCocycles& z1() const { return z1_; }
  const std::vector<std::vector<Index>>& z1_members() const { return z1_members_; }
  const AutPairs& pairs() const { return pairs_; }

  /// Transported cochain, restricted to g when on the group side.
  Cochain2 transport(std::size_t p, const Cochain2& c) const { return h2_.space().restrict(act_on_cochain(pairs_.at(p), c)); }

  /// Class of the transported representative.
  Element act(std::size_t p, const Element& cls) const { return act_[p](cls); }
  Element act_direct(std::size_t p, const Element& cls) const { return h2_.reduce(transport(p, h2_.representative(cls))); }

  Element theta(const Element& base, std::size_t p) const { return h2_.group().sub(base, act(p, base)); }

  /// All lambda making psi = (phi, lambda + theta) an automorphism.
  std::vector<std::vector<Index>> lifts(const Cochain2& c, std::size_t p) const {
    // lambda(x+y) - lambda(x) - lambda(y) = g(phi x, phi y) - theta g(x,y), likewise for f
    const auto pr = pairs_.at(p);
    const std::size_t n = x_.size();
    Cochain2 target = Cochain2::zero(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        target.f[u * n + v] = g_only_ ? 0 : a_.index_of(a_.sub(a_.element(c.F(pr.phi[u], pr.phi[v])), a_.element(pr.theta_map[c.F(u, v)])));
        target.g[u * n + v] = a_.index_of(a_.sub(a_.element(c.G(pr.phi[u], pr.phi[v])), a_.element(pr.theta_map[c.G(u, v)])));
      }
    const auto w = coboundary_witness(x_, a_, target, g_only_);
    if (!w) return {};
    std::vector<std::vector<Index>> out;
    const OpTable amul = a_.addition_table();
    for (const auto& z : z1_members_) {
      std::vector<Index> l(n);
      for (std::size_t u = 0; u < n; ++u) l[u] = amul((*w)[u], z[u]);
      out.push_back(std::move(l));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Both lifting equations, pointwise.
  Verdict check_lift(const Cochain2& c, const LiftedAut& l) const {
    using detail::I;
    const std::size_t n = x_.size();
    auto L = [&](std::size_t u) { return a_.element(l.lambda[u]); };
    auto T = [&](Index v) { return a_.element(l.theta_map[v]); };
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (a_.add(L(x_.plus(u, v)), T(c.G(u, v))) != a_.add(a_.add(L(u), L(v)), a_.element(c.G(l.phi[u], l.phi[v]))))
          return Verdict::fail("lift-additive", {I(u), I(v)}, "l(x+y) + theta g(x,y) != l(x) + l(y) + g(phi x, phi y)");
        if (!g_only_ && a_.add(L(x_.dot(u, v)), T(c.F(u, v))) != a_.add(L(v), a_.element(c.F(l.phi[u], l.phi[v]))))
          return Verdict::fail("lift-dot", {I(u), I(v)}, "l(x.y) + theta f(x,y) != l(y) + f(phi x, phi y)");
      }
    return Verdict::pass();
  }

 private:
  static LinearCycleSet prepare(const LinearCycleSet& x, const FinAbGroup& a, bool g_only, const WellsOptions& opt) {
    if (x.size() * a.order() > opt.max_order)
      throw SizeBoundError("Wells computations: |X||A| = " + std::to_string(x.size() * a.order()) + " exceeds bound " +
                           std::to_string(opt.max_order));
    if (!g_only) return x;
    return {x.add, OpTable::generate(x.size(), [](Index, Index v) { return v; }), x.carrier};
  }

  LinearCycleSet x_;
  FinAbGroup a_;
  bool g_only_;
  SecondCohomology h2_;
  FirstCocycles z1_;
  std::vector<std::vector<Index>> z1_members_;
  AutPairs pairs_;
  std::vector<GroupHom> act_;
};

// ------------------------------------------------------------------ Aut_A(E)

/// Whether psi preserves E's tables (only + on the group side).
inline bool is_automorphism_of(const CentralExtensionLCS& e, const Permutation& t, bool additive_only = false) {
  if (!is_permutation_of_range(t)) return false;
  for (std::size_t p = 0; p < e.e.size(); ++p)
    for (std::size_t q = 0; q < e.e.size(); ++q) {
      if (t[e.e.plus(p, q)] != e.e.plus(t[p], t[q])) return false;
      if (!additive_only && t[e.e.dot(p, q)] != e.e.dot(t[p], t[q])) return false;
    }
  return true;
}

namespace detail {

inline const Cochain2& extension_cocycle(const CentralExtensionLCS& e) {
  if (!e.cocycle) throw std::invalid_argument("extension carries no cocycle; rebuild it on the canonical carrier");
  return *e.cocycle;
}

inline void check_context(const WellsContext& ctx, const CentralExtensionLCS& e) {
  if (!(e.kernel == ctx.coefficients()) || e.base.size() != ctx.cycle_set().size() || !(e.base.add.plus == ctx.cycle_set().add.plus))
    throw std::invalid_argument("extension does not match the instance");
  if (!ctx.g_only() && !(e.base.dot == ctx.cycle_set().dot)) throw std::invalid_argument("extension does not match the instance");
}

}  // namespace detail

/// Every lift of every pair, ordered by pair and then lambda; each is
/// re-verified against the tables of E.
inline std::vector<LiftedAut> enumerate_aut_A_E(const WellsContext& ctx, const CentralExtensionLCS& e) {
  detail::check_context(ctx, e);
  const Cochain2& c = detail::extension_cocycle(e);
  std::vector<LiftedAut> out;
  for (std::size_t p = 0; p < ctx.pairs().size(); ++p)
    for (auto& lam : ctx.lifts(c, p)) {
      LiftedAut l{p, ctx.pairs().phi(p), ctx.pairs().theta_map(p), std::move(lam)};
      if (!ctx.check_lift(c, l)) throw InternalError("solver lift fails the lifting equations");
      if (!is_automorphism_of(e, lift_table(e, l), ctx.g_only())) throw InternalError("lift is not an automorphism of E");
      out.push_back(std::move(l));
    }
  return out;
}

inline std::vector<LiftedAut> enumerate_aut_A_E(const CentralExtensionLCS& e, const WellsOptions& opt = {}) {
  return enumerate_aut_A_E(WellsContext(e.base, e.kernel, false, opt), e);
}

/// lambda(x) = lambda1(phi2 x) + theta1(lambda2 x).
inline LiftedAut compose_lifts(const WellsContext& ctx, const LiftedAut& l1, const LiftedAut& l2) {
  const OpTable amul = ctx.coefficients().addition_table();
  LiftedAut r{ctx.pairs().compose(l1.pair, l2.pair), compose(l1.phi, l2.phi), compose(l1.theta_map, l2.theta_map), {}};
  for (std::size_t x = 0; x < l1.phi.size(); ++x) r.lambda.push_back(amul(l1.lambda[l2.phi[x]], l1.theta_map[l2.lambda[x]]));
  return r;
}

/// psi^-1(x,a) = (phi^-1 x, theta^-1(-lambda(phi^-1 x)) + theta^-1 a).
inline LiftedAut inverse_lift(const WellsContext& ctx, const LiftedAut& l) {
  const Permutation pinv = inverse_permutation(l.phi);
  const Permutation tinv = inverse_permutation(l.theta_map);
  const auto neg = ctx.coefficients().negation_map();
  LiftedAut r{*ctx.pairs().find(pinv, tinv), pinv, tinv, {}};
  for (std::size_t x = 0; x < pinv.size(); ++x) r.lambda.push_back(tinv[neg[l.lambda[pinv[x]]]]);
  return r;
}

inline std::size_t psi(const LiftedAut& l) { return l.pair; }

/// iota(lambda) = (x,a) -> (x, lambda(x) + a); rejects lambda outside Z^1.
inline LiftedAut iota(const WellsContext& ctx, const std::vector<Index>& lambda) {
  if (auto v = verify_one_cocycle(ctx.cycle_set(), ctx.coefficients(), lambda, ctx.g_only()); !v) throw VerificationError(v);
  const std::size_t id = ctx.pairs().identity();
  return {id, ctx.pairs().phi(id), ctx.pairs().theta_map(id), lambda};
}

// ------------------------------------------------------------- certificates

/// Full enumeration certificate for the sequence attached to E.
inline WellsCertificate verify_wells(const WellsContext& ctx, const CentralExtensionLCS& e) {
  detail::check_context(ctx, e);
  const Cochain2& c = detail::extension_cocycle(e);
  const auto& h2 = ctx.h2();
  const auto& P = ctx.pairs();
  const FinAbGroup& H = h2.group();
  WellsCertificate cert;
  cert.instance = std::string(ctx.g_only() ? "group" : "lcs") + " |X|=" + std::to_string(e.base.size()) + " |A|=" + std::to_string(e.m());
  cert.h2_factors = H.invariant_factors();
  cert.base = h2.reduce(h2.space().restrict(c));
  cert.z1_order = ctx.z1().order();
  cert.pairs_order = P.size();
  cert.h2_order = h2.order();
  for (std::size_t p = 0; p < P.size(); ++p) cert.pairs.push_back(P.at(p));

  // iota
  std::set<Permutation> im_iota;
  std::map<std::vector<Index>, Permutation> iota_of;
  for (const auto& lam : ctx.z1_members()) {
    const auto t = lift_table(e, iota(ctx, lam));
    iota_of[lam] = t;
    im_iota.insert(t);
    cert.iota_image.push_back(t);
  }
  cert.iota_injective = im_iota.size() == ctx.z1_members().size();
  cert.iota_homomorphism = true;
  const OpTable amul = ctx.coefficients().addition_table();
  for (const auto& l1 : ctx.z1_members())
    for (const auto& l2 : ctx.z1_members()) {
      std::vector<Index> s(l1.size());
      for (std::size_t x = 0; x < s.size(); ++x) s[x] = amul(l1[x], l2[x]);
      if (iota_of.at(s) != compose(iota_of.at(l1), iota_of.at(l2))) cert.iota_homomorphism = false;
    }

  // Aut_A(E), Psi
  const auto lifts = enumerate_aut_A_E(ctx, e);
  cert.aut_ae_order = lifts.size();
  std::map<Permutation, std::size_t> by_table;
  for (std::size_t i = 0; i < lifts.size(); ++i) by_table[lift_table(e, lifts[i])] = i;
  cert.lifts_closed = by_table.size() == lifts.size() && by_table.count(identity_permutation(e.e.size()));
  cert.psi_homomorphism = true;
  // right factors: every lift when few, else a generating set. S.g in S for the
  // generators of <S> gives S.S in S, and psi(lg) = psi(l)psi(g) extends the same way.
  std::vector<const LiftedAut*> right;
  if (lifts.size() <= 64) {
    for (const auto& l : lifts) right.push_back(&l);
  } else {
    std::set<Permutation> span{identity_permutation(e.e.size())};
    for (const auto& l : lifts) {
      const auto t = lift_table(e, l);
      if (span.count(t)) continue;
      right.push_back(&l);
      std::vector<Permutation> gens;
      for (const auto* g : right) gens.push_back(lift_table(e, *g));
      std::vector<Permutation> todo(span.begin(), span.end());
      while (!todo.empty()) {
        const auto u = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
          auto v = compose(u, g);
          if (span.insert(v).second) todo.push_back(std::move(v));
        }
      }
      if (span.size() > lifts.size()) break;  // not closed; the checks below catch it
    }
  }
  for (const auto& l1 : lifts) {
    const auto inv = inverse_lift(ctx, l1);
    if (compose(lift_table(e, inv), lift_table(e, l1)) != identity_permutation(e.e.size()) || !by_table.count(lift_table(e, inv)))
      cert.lifts_closed = false;
    for (const auto* r2 : right) {
      const auto& l2 = *r2;
      const auto l12 = compose_lifts(ctx, l1, l2);
      const auto t = lift_table(e, l12);
      if (t != compose(lift_table(e, l1), lift_table(e, l2)) || !by_table.count(t)) cert.lifts_closed = false;
      if (psi(l12) != P.compose(psi(l1), psi(l2))) cert.psi_homomorphism = false;
    }
  }
  std::set<Permutation> ker;
  std::set<std::size_t> im_psi;
  for (const auto& l : lifts) {
    im_psi.insert(psi(l));
    if (psi(l) == P.identity()) ker.insert(lift_table(e, l));
  }
  cert.psi_kernel.assign(ker.begin(), ker.end());
  cert.psi_image.assign(im_psi.begin(), im_psi.end());
  cert.ker_psi_eq_im_iota = ker == im_iota;

  // Theta and the lifts from the proof: psi(x,a) = (phi x, -l(phi x) + theta a)
  // where ^(phi,theta)(f,g) - (f,g) = d l.
  std::set<std::size_t> zero;
  bool direct_ok = true;
  cert.proof_lifts_valid = true;
  const auto neg = ctx.coefficients().negation_map();
  for (std::size_t p = 0; p < P.size(); ++p) {
    const Element t = ctx.theta(cert.base, p);
    if (t != H.sub(cert.base, ctx.act_direct(p, cert.base))) direct_ok = false;
    cert.theta_table.push_back(t);
    const Cochain2 diff = subtract(ctx.coefficients(), ctx.transport(p, c), h2.space().restrict(c));
    const auto w = coboundary_witness(ctx.cycle_set(), ctx.coefficients(), diff, ctx.g_only());
    if (t == H.zero()) {
      zero.insert(p);
      if (!w) {
        cert.proof_lifts_valid = false;
        continue;
      }
      LiftedAut l{p, P.phi(p), P.theta_map(p), std::vector<Index>(e.base.size())};
      for (std::size_t x = 0; x < e.base.size(); ++x) l.lambda[x] = neg[(*w)[P.phi(p)[x]]];
      const auto table = lift_table(e, l);
      if (!ctx.check_lift(c, l) || !is_automorphism_of(e, table, ctx.g_only()) || !by_table.count(table)) cert.proof_lifts_valid = false;
      cert.proof_lifts.push_back(table);
    } else {
      if (w || !ctx.lifts(c, p).empty()) cert.proof_lifts_valid = false;
    }
  }
  cert.theta_zero.assign(zero.begin(), zero.end());
  cert.im_psi_eq_theta_zero = zero == im_psi;

  cert.theta_cocycle = direct_ok;
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (cert.theta_table[P.compose(p, q)] != H.add(cert.theta_table[p], ctx.act(p, cert.theta_table[q]))) cert.theta_cocycle = false;

  cert.surjective_if_h2_trivial = h2.order() != 1 || im_psi.size() == P.size();
  return cert;
}

inline WellsCertificate verify_wells(const CentralExtensionLCS& e, const WellsOptions& opt = {}) {
  return verify_wells(WellsContext(e.base, e.kernel, false, opt), e);
}

/// The group sequence for (E,+) = H x_g N inside H^2_sym.
inline WellsCertificate group_wells(const CentralExtensionLCS& e, const WellsOptions& opt = {}) {
  return verify_wells(WellsContext(e.base, e.kernel, true, opt), e);
}

// ------------------------------------------------------ action properties

/// Classes the action laws are tested on. Every class when |H^2| <= all_up_to,
/// else zero, the generators and (if asked) their pairwise sums; the laws are
/// additive or affine in each class argument, so generators carry the check.
inline std::vector<Element> action_sample(const SecondCohomology& h2, std::size_t all_up_to = 64, bool pairwise = true) {
  const auto& H = h2.group();
  if (h2.order() <= all_up_to) return h2.classes();
  std::vector<Element> out{H.zero()};
  std::vector<Element> gens;
  for (std::size_t i = 0; i < H.rank(); ++i) {
    Element e = H.zero();
    e[i] = 1;
    gens.push_back(e);
  }
  out.insert(out.end(), gens.begin(), gens.end());
  if (pairwise)
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) out.push_back(H.add(gens[i], gens[j]));
  return out;
}

struct ActionReport {
  bool by_automorphisms = false;   // act(p, h1 + h2) = act(p, h1) + act(p, h2)
  bool composition = false;        // act(pq) = act(p) act(q)
  bool identity = false;
  bool coboundaries_preserved = false;
  bool matches_transport = false;  // cached homomorphism agrees with direct transport
  bool ok() const { return by_automorphisms && composition && identity && coboundaries_preserved && matches_transport; }
};

inline ActionReport verify_action(const WellsContext& ctx) {
  const auto& H = ctx.h2().group();
  const auto& P = ctx.pairs();
  const auto classes = action_sample(ctx.h2(), 16);
  // both sides of the composition law are homomorphisms, so generators suffice
  const auto gens = action_sample(ctx.h2(), 1, false);
  ActionReport r{true, true, true, true, true};
  for (std::size_t p = 0; p < P.size(); ++p) {
    for (const auto& b : ctx.h2().b2().generators()) {
      const Cochain2 moved = ctx.transport(p, ctx.h2().space().from_vector(b));
      if (!ctx.h2().is_cocycle(moved) || ctx.h2().reduce(moved) != H.zero()) r.coboundaries_preserved = false;
    }
    for (const auto& h1 : classes) {
      if (ctx.act(p, h1) != ctx.act_direct(p, h1)) r.matches_transport = false;
      for (const auto& h2 : classes)
        if (ctx.act(p, H.add(h1, h2)) != H.add(ctx.act(p, h1), ctx.act(p, h2))) r.by_automorphisms = false;
    }
    for (const auto& h1 : gens)
      for (std::size_t q = 0; q < P.size(); ++q)
        if (ctx.act(P.compose(p, q), h1) != ctx.act(p, ctx.act(q, h1))) r.composition = false;
  }
  for (const auto& h : classes)
    if (ctx.act(P.identity(), h) != h) r.identity = false;
  return r;
}

/// A generating set of the pair group, picked greedily in index order.
inline std::vector<std::size_t> pair_generators(const AutPairs& P) {
  std::vector<std::size_t> gens;
  std::set<std::size_t> span{P.identity()};
  for (std::size_t p = 0; p < P.size(); ++p) {
    if (span.count(p)) continue;
    gens.push_back(p);
    std::vector<std::size_t> todo(span.begin(), span.end());
    while (!todo.empty()) {
      const auto u = todo.back();
      todo.pop_back();
      for (const auto g : gens)
        if (const auto v = P.compose(u, g); span.insert(v).second) todo.push_back(v);
    }
  }
  return gens;
}

/// Theta(pq) = Theta(p) + p.Theta(q) for all pairs, and ([a],p).b = [a] + p.b
/// is an action of H x| P, with ([a1],p1)([a2],p2) = ([a1] + p1.[a2], p1 p2).
inline Verdict verify_theta_cocycle(const WellsContext& ctx, const Element& base) {
  using detail::I;
  const auto& H = ctx.h2().group();
  const auto& P = ctx.pairs();
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      if (ctx.theta(base, P.compose(p, q)) != H.add(ctx.theta(base, p), ctx.act(p, ctx.theta(base, q))))
        return Verdict::fail("theta-cocycle", {I(p), I(q)}, "Theta(pq) != Theta(p) + p.Theta(q)");
  // the action law only needs the right factor from a generating set of H x| P,
  // and both sides are affine in a1 and in b, so those run over 0 and generators
  const auto hs = action_sample(ctx.h2(), 8, false);
  std::vector<std::pair<Element, std::size_t>> right;
  for (const auto& h : hs) right.emplace_back(h, P.identity());
  for (const auto g : pair_generators(P)) right.emplace_back(H.zero(), g);
  for (std::size_t i1 = 0; i1 < hs.size(); ++i1)
    for (std::size_t p = 0; p < P.size(); ++p)
      for (std::size_t j = 0; j < right.size(); ++j)
        for (const auto& b : hs) {
          const auto& [a2, q] = right[j];
          const Element lhs = H.add(H.add(hs[i1], ctx.act(p, a2)), ctx.act(P.compose(p, q), b));
          const Element rhs = H.add(hs[i1], ctx.act(p, H.add(a2, ctx.act(q, b))));
          if (lhs != rhs) return Verdict::fail("semidirect-action", {I(i1), I(p), I(j)});
        }
  return Verdict::pass();
}

struct ThetaDifference {
  Verdict verdict;
  Element beta;
};

/// base1 = beta + base2, and Theta1(p) + p.beta = Theta2(p) + beta for every p.
inline ThetaDifference theta_difference_coboundary(const WellsContext& ctx, const Element& base1, const Element& base2) {
  const auto& H = ctx.h2().group();
  ThetaDifference r{Verdict::pass(), H.sub(base1, base2)};
  if (H.add(r.beta, base2) != H.reduce(base1)) throw InternalError("beta does not translate base2 to base1");
  for (std::size_t p = 0; p < ctx.pairs().size(); ++p)
    if (H.add(ctx.theta(base1, p), ctx.act(p, r.beta)) != H.add(ctx.theta(base2, p), r.beta)) {
      r.verdict = Verdict::fail("theta-difference", {detail::I(p)}, "Theta(p) + p.beta != Theta'(p) + beta");
      break;
    }
  return r;
}

struct OrbitReport {
  std::vector<Element> orbit;
  std::vector<std::size_t> stabiliser;
  std::size_t group_order = 0, h2_order = 0;
  bool orbit_stabiliser = false;  // |orbit| |stab| = |Aut(X) x Aut(A)|
  bool bound = false;             // |H^2| >= |orbit|
  bool stabiliser_is_theta_zero = false;
  bool complement = false;        // stabiliser of base in H x| P is a complement of H
  bool ok() const { return orbit_stabiliser && bound && stabiliser_is_theta_zero && complement; }
};

inline OrbitReport orbit_bound_report(const WellsContext& ctx, const Element& base) {
  const auto& H = ctx.h2().group();
  const auto& P = ctx.pairs();
  OrbitReport r;
  r.group_order = P.size();
  r.h2_order = ctx.h2().order();
  std::set<Element> orbit;
  bool theta_zero = true;
  for (std::size_t p = 0; p < P.size(); ++p) {
    const Element moved = ctx.act(p, base);
    orbit.insert(moved);
    if (moved == base) r.stabiliser.push_back(p);
    theta_zero = theta_zero && ((moved == base) == (ctx.theta(base, p) == H.zero()));
  }
  r.orbit.assign(orbit.begin(), orbit.end());
  r.orbit_stabiliser = r.orbit.size() * r.stabiliser.size() == P.size();
  r.bound = r.h2_order >= r.orbit.size();
  r.stabiliser_is_theta_zero = theta_zero;

  // S = {(a, p) : a + p.base = base} in H x| P
  std::vector<std::pair<Element, std::size_t>> s;
  for (const auto& a : ctx.h2().classes())
    for (std::size_t p = 0; p < P.size(); ++p)
      if (H.add(a, ctx.act(p, base)) == base) s.emplace_back(a, p);
  std::set<std::pair<Element, std::size_t>> sset(s.begin(), s.end());
  bool closed = true;
  for (const auto& [a1, p1] : s)
    for (const auto& [a2, p2] : s)
      if (!sset.count({H.add(a1, ctx.act(p1, a2)), P.compose(p1, p2)})) closed = false;
  std::size_t meet = 0;  // S meets H = {(a, id)}
  for (const auto& [a, p] : s) meet += p == P.identity();
  r.complement = closed && meet == 1 && s.size() == P.size() && sset.count({H.zero(), P.identity()});
  // each p appears once, with a = Theta(p)
  for (const auto& [a, p] : s)
    if (a != ctx.theta(base, p)) r.complement = false;
  return r;
}

// ------------------------------------------------------ comparison diagram

struct ComparisonReport {
  bool z1_included = false;        // Z^1 in Hom((X,+), A)
  bool aut_ae_included = false;    // Aut_A(E) in Aut_A((E,+))
  bool aut_x_included = false;     // Aut(X) in Aut((X,+))
  bool square_iota = false;        // inclusion o iota = j o inclusion
  bool square_psi = false;         // Phi o inclusion = inclusion o Psi
  bool square_theta = false;       // Lambda o Theta = Omega o inclusion
  bool ok() const { return z1_included && aut_ae_included && aut_x_included && square_iota && square_psi && square_theta; }
};

/// top is the LCS context of e, bottom the group-side one.
inline ComparisonReport comparison_diagram(const WellsContext& top, const WellsContext& bottom, const CentralExtensionLCS& e) {
  if (top.g_only() || !bottom.g_only()) throw std::invalid_argument("comparison needs an LCS context and a group-side context");
  detail::check_context(top, e);
  detail::check_context(bottom, e);
  const Cochain2& c = detail::extension_cocycle(e);
  ComparisonReport r{true, true, true, true, true, true};

  for (const auto& lam : top.z1_members()) {
    if (!bottom.z1().contains(lam)) r.z1_included = false;
    // j(lambda) is the same formula on (E,+)
    if (lift_table(e, iota(top, lam)) != lift_table(e, iota(bottom, lam))) r.square_iota = false;
  }

  std::vector<std::size_t> incl(top.pairs().size());
  for (std::size_t p = 0; p < top.pairs().size(); ++p) {
    const auto q = bottom.pairs().find(top.pairs().phi(p), top.pairs().theta_map(p));
    if (!q) {
      r.aut_x_included = false;
      continue;
    }
    incl[p] = *q;
  }
  if (!r.aut_x_included) return r;

  std::map<Permutation, std::size_t> group_side;
  for (const auto& l : enumerate_aut_A_E(bottom, e)) group_side[lift_table(e, l)] = psi(l);
  for (const auto& l : enumerate_aut_A_E(top, e)) {
    auto it = group_side.find(lift_table(e, l));
    if (it == group_side.end()) {
      r.aut_ae_included = false;
      continue;
    }
    if (it->second != incl[psi(l)]) r.square_psi = false;
  }

  const LambdaMap lam(top.h2(), bottom.h2());
  const Element base = top.h2().reduce(c);
  const Element gbase = bottom.h2().reduce(bottom.h2().space().restrict(c));
  if (lam(base) != gbase) r.square_theta = false;
  for (std::size_t p = 0; p < top.pairs().size(); ++p)
    if (lam(top.theta(base, p)) != bottom.theta(gbase, incl[p])) r.square_theta = false;
  return r;
}

inline ComparisonReport comparison_diagram(const CentralExtensionLCS& e, const WellsOptions& opt = {}) {
  return comparison_diagram(WellsContext(e.base, e.kernel, false, opt), WellsContext(e.base, e.kernel, true, opt), e);
}

}  // namespace cslab
