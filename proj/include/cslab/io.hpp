// JSON codecs for groups, structures, cochains, extensions, dynamical maps
// and reports. Elements go out as coordinate arrays; tables are row-major
// over element indices with the row as left operand.
#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cslab/dynamical.hpp"
#include "cslab/extension.hpp"
#include "cslab/wells.hpp"

namespace cslab::io {

using json = nlohmann::ordered_json;

/// Malformed or unusable input. May carry the verdict that made a
/// structure unusable (an input X that is not an LCS, say).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what, std::optional<Verdict> v = std::nullopt)
      : std::invalid_argument(what), verdict_(std::move(v)) {}
  const std::optional<Verdict>& verdict() const { return verdict_; }

 private:
  std::optional<Verdict> verdict_;
};

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << dump(j);
  if (!out) throw InputError("write failed: " + path);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline Int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<Int>();
}

inline std::vector<Int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  std::vector<Int> out;
  for (const auto& v : j) out.push_back(integer(v, what));
  return out;
}

}  // namespace detail

// -------------------------------------------------------------- groups

inline FinAbGroup group_from_json(const json& j) {
  const auto factors = detail::int_list(detail::field(j, "invariant_factors"), "invariant_factors");
  for (Int f : factors)
    if (f < 1) throw InputError("invariant_factors: factors must be positive");
  return make_group(factors);
}

inline json group_to_json(const FinAbGroup& g) { return {{"invariant_factors", g.invariant_factors()}}; }

inline json element_to_json(const FinAbGroup& g, std::size_t idx) { return g.element(idx); }
inline json element_to_json(const Element& e) { return e; }

/// A coordinate array (reduced modulo the factors) or a bare element index.
inline Index element_from_json(const FinAbGroup& g, const json& j) {
  if (j.is_number_integer()) {
    const Int v = j.get<Int>();
    if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw InputError("element index out of range");
    return static_cast<Index>(v);
  }
  const auto c = detail::int_list(j, "element");
  if (c.size() != g.rank()) throw InputError("element has " + std::to_string(c.size()) + " coordinates, group has rank " + std::to_string(g.rank()));
  return g.index_of(g.reduce(c));
}

inline Element class_from_json(const FinAbGroup& g, const json& j) { return g.element(element_from_json(g, j)); }

// -------------------------------------------------------------- tables

inline OpTable table_from_json(const json& j, const char* what, std::size_t n = 0) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) rows.push_back(detail::int_list(r, what));
  if (n && rows.size() != n) throw InputError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  try {
    return OpTable::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

inline json table_to_json(const OpTable& t) { return t.rows(); }

inline std::vector<Index> index_list(const json& j, const char* what, std::size_t len, std::size_t bound) {
  const auto v = detail::int_list(j, what);
  if (v.size() != len) throw InputError(std::string(what) + ": expected " + std::to_string(len) + " entries");
  std::vector<Index> out;
  for (Int x : v) {
    if (x < 0 || static_cast<std::size_t>(x) >= bound) throw InputError(std::string(what) + ": entry out of range");
    out.push_back(static_cast<Index>(x));
  }
  return out;
}

// ---------------------------------------------------------- structures

/// A structure file before any axiom is checked.
struct RawStructure {
  std::string kind;
  std::optional<FinAbGroup> group;
  std::optional<OpTable> plus;
  std::map<std::string, OpTable> tables;

  std::size_t size() const { return tables.begin()->second.size(); }
  const OpTable& table(const std::string& k) const { return tables.at(k); }
};

inline RawStructure structure_from_json(const json& j) {
  RawStructure s;
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw InputError("kind: expected a string");
  s.kind = kind.get<std::string>();
  std::vector<std::string> names;
  bool additive = false;
  if (s.kind == "lcs" || s.kind == "cycleset") {
    names = {"dot"};
  } else if (s.kind == "brace") {
    names = {"circ"};
  } else if (s.kind == "rack") {
    names = {"star"};
  } else if (s.kind == "bigroupoid") {
    names = {"table1", "table2"};
  } else {
    throw InputError("unknown structure kind \"" + s.kind + "\"");
  }
  additive = s.kind == "lcs" || s.kind == "brace";

  std::size_t n = 0;
  if (j.contains("group")) {
    s.group = group_from_json(j["group"]);
    n = s.group->order();
  }
  if (j.contains("n")) {
    const Int v = detail::integer(j["n"], "n");
    if (v < 0 || (n && static_cast<std::size_t>(v) != n)) throw InputError("n does not match the table size");
    n = static_cast<std::size_t>(v);
  }
  if (additive && !s.group) {
    if (!j.contains("plus")) throw InputError(s.kind + " needs \"group\" or \"plus\"");
    s.plus = table_from_json(j["plus"], "plus", n);
    n = s.plus->size();
  }
  for (const auto& name : names) {
    s.tables.emplace(name, table_from_json(detail::field(j, name.c_str()), name.c_str(), n));
    n = s.tables.at(name).size();
  }
  if (n == 0) throw InputError("empty structure");
  return s;
}

/// The additive part; fails with the group-axiom verdict.
inline Verdict additive_part(const RawStructure& s, AdditiveTable& out) {
  if (s.group) {
    out = AdditiveTable::of(*s.group);
    return Verdict::pass();
  }
  return verify_abelian_group(*s.plus, &out);
}

/// Throws InputError (with the verdict) unless the file holds a linear cycle set.
inline LinearCycleSet lcs_from_json(const json& j) {
  const RawStructure s = structure_from_json(j);
  if (s.kind != "lcs") throw InputError("expected a structure of kind \"lcs\", got \"" + s.kind + "\"");
  AdditiveTable add;
  if (auto v = additive_part(s, add); !v) throw InputError("not a linear cycle set: " + v.condition, v);
  LinearCycleSet l{std::move(add), s.table("dot"), s.group};
  if (auto v = verify_linear_cycle_set(l); !v) throw InputError("not a linear cycle set: " + v.condition, v);
  return l;
}

inline json lcs_to_json(const LinearCycleSet& l) {
  json j{{"kind", "lcs"}};
  if (l.carrier) j["group"] = group_to_json(*l.carrier);
  else j["plus"] = table_to_json(l.add.plus);
  j["dot"] = table_to_json(l.dot);
  return j;
}

inline json brace_to_json(const Brace& b) {
  json j{{"kind", "brace"}};
  if (b.carrier) j["group"] = group_to_json(*b.carrier);
  else j["plus"] = table_to_json(b.add.plus);
  j["circ"] = table_to_json(b.circ);
  return j;
}

inline json cycle_set_to_json(const OpTable& dot) { return {{"kind", "cycleset"}, {"n", dot.size()}, {"dot", table_to_json(dot)}}; }

// ------------------------------------------------------------ cochains

inline Cochain2 cochain_from_json(const json& j, std::size_t n, const FinAbGroup& a) {
  Cochain2 c = Cochain2::zero(n);
  auto part = [&](const char* key, std::vector<Index>& dst) {
    const json& rows = detail::field(j, key);
    if (!rows.is_array() || rows.size() != n) throw InputError(std::string(key) + ": expected " + std::to_string(n) + " rows");
    for (std::size_t x = 0; x < n; ++x) {
      if (!rows[x].is_array() || rows[x].size() != n) throw InputError(std::string(key) + ": expected " + std::to_string(n) + " entries per row");
      for (std::size_t y = 0; y < n; ++y) dst[x * n + y] = element_from_json(a, rows[x][y]);
    }
  };
  part("f", c.f);
  part("g", c.g);
  return c;
}

inline json cochain_to_json(const Cochain2& c, const FinAbGroup& a) {
  auto part = [&](const std::vector<Index>& src) {
    json rows = json::array();
    for (std::size_t x = 0; x < c.n; ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < c.n; ++y) row.push_back(element_to_json(a, src[x * c.n + y]));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return {{"f", part(c.f)}, {"g", part(c.g)}};
}

// ------------------------------------------------------------ verdicts

inline json verdict_to_json(const Verdict& v) {
  if (v.ok) return {{"ok", true}};
  json j{{"ok", false}, {"condition", v.condition}, {"witness", v.witness}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

// ---------------------------------------------------------- extensions

inline json extension_to_json(const CentralExtensionLCS& e) {
  std::vector<Index> i, pi;
  for (std::size_t a = 0; a < e.m(); ++a) i.push_back(e.i(a));
  for (std::size_t p = 0; p < e.e.size(); ++p) pi.push_back(e.pi(p));
  json j{{"kind", "extension"},
         {"base", lcs_to_json(e.base)},
         {"kernel", group_to_json(e.kernel)},
         {"e", {{"plus", table_to_json(e.e.add.plus)}, {"dot", table_to_json(e.e.dot)}}},
         {"i", i},
         {"pi", pi},
         {"section", e.default_section()}};
  if (e.cocycle) j["cocycle"] = cochain_to_json(*e.cocycle, e.kernel);
  return j;
}

/// The raw parts of an extension file; axioms are left to the caller.
struct RawExtension {
  LinearCycleSet base;
  FinAbGroup kernel;
  OpTable plus, dot;
  std::vector<Index> i, pi;
  std::optional<std::vector<Index>> section;
};

inline RawExtension extension_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (kind != "extension") throw InputError("expected a structure of kind \"extension\"");
  RawExtension r{lcs_from_json(detail::field(j, "base")), group_from_json(detail::field(j, "kernel")), OpTable(0), OpTable(0), {}, {}, {}};
  const json& e = detail::field(j, "e");
  r.plus = table_from_json(detail::field(e, "plus"), "e.plus");
  r.dot = table_from_json(detail::field(e, "dot"), "e.dot", r.plus.size());
  const std::size_t n = r.base.size(), m = r.kernel.order(), N = r.plus.size();
  if (N != n * m) throw InputError("|E| = " + std::to_string(N) + " but |X||A| = " + std::to_string(n * m));
  r.i = index_list(detail::field(j, "i"), "i", m, N);
  r.pi = index_list(detail::field(j, "pi"), "pi", N, n);
  if (j.contains("section")) r.section = index_list(j["section"], "section", n, N);
  return r;
}

// ------------------------------------------------------ dynamical maps

inline DynamicalMap dynamical_from_json(const json& j, const char* what, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError(std::string(what) + ": expected " + std::to_string(n) + " entries at depth 1");
  std::size_t m = 0;
  if (n) {
    if (!j[0].is_array() || j[0].empty() || !j[0][0].is_array()) throw InputError(std::string(what) + ": expected alpha[x][y][s][t]");
    m = j[0][0].size();
  }
  DynamicalMap d(n, m);
  for (std::size_t x = 0; x < n; ++x) {
    if (!j[x].is_array() || j[x].size() != n) throw InputError(std::string(what) + ": ragged at depth 2");
    for (std::size_t y = 0; y < n; ++y) {
      const json& st = j[x][y];
      if (!st.is_array() || st.size() != m) throw InputError(std::string(what) + ": ragged at depth 3");
      for (std::size_t s = 0; s < m; ++s) {
        const auto row = index_list(st[s], what, m, m);
        for (std::size_t t = 0; t < m; ++t) d.set(x, y, s, t, row[t]);
      }
    }
  }
  return d;
}

inline json dynamical_to_json(const DynamicalMap& d) {
  json out = json::array();
  for (std::size_t x = 0; x < d.outer; ++x) {
    json jx = json::array();
    for (std::size_t y = 0; y < d.outer; ++y) {
      json jy = json::array();
      for (std::size_t s = 0; s < d.inner; ++s) {
        json js = json::array();
        for (std::size_t t = 0; t < d.inner; ++t) js.push_back(d(x, y, s, t));
        jy.push_back(std::move(js));
      }
      jx.push_back(std::move(jy));
    }
    out.push_back(std::move(jx));
  }
  return out;
}

inline json dynamical_verdict_to_json(const DynamicalVerdict& v) {
  json j{{"conditions", verdict_to_json(v.conditions)}, {"product", verdict_to_json(v.product)}, {"agree", v.agree()}};
  if (!v.agree()) j["gap"] = v.gap();
  return j;
}

// ------------------------------------------------------------- reports

inline json cohomology_to_json(const SecondCohomology& h) {
  json gens = json::array();
  for (const auto& g : h.generators()) gens.push_back(cochain_to_json(g, h.coefficients()));
  return {{"kind", h.kind()},
          {"z2_order", h.z2().order()},
          {"b2_order", h.b2().order()},
          {"h2_order", h.order()},
          {"h2_invariant_factors", h.group().invariant_factors()},
          {"generators", gens}};
}

inline json pair_to_json(const AutPair& p) { return {{"phi", p.phi}, {"theta", p.theta_map}}; }

inline json certificate_to_json(const WellsCertificate& c) {
  json pairs = json::array();
  for (const auto& p : c.pairs) pairs.push_back(pair_to_json(p));
  return {{"instance", c.instance},
          {"carrier_note", c.carrier_note},
          {"h2_invariant_factors", c.h2_factors},
          {"base", c.base},
          {"z1_order", c.z1_order},
          {"aut_ae_order", c.aut_ae_order},
          {"pairs_order", c.pairs_order},
          {"h2_order", c.h2_order},
          {"pairs", pairs},
          {"iota_image", c.iota_image},
          {"psi_kernel", c.psi_kernel},
          {"psi_image", c.psi_image},
          {"theta_table", c.theta_table},
          {"theta_zero", c.theta_zero},
          {"proof_lifts", c.proof_lifts},
          {"checks",
           {{"iota_injective", c.iota_injective},
            {"iota_homomorphism", c.iota_homomorphism},
            {"psi_homomorphism", c.psi_homomorphism},
            {"lifts_closed", c.lifts_closed},
            {"ker_psi_eq_im_iota", c.ker_psi_eq_im_iota},
            {"im_psi_eq_theta_zero", c.im_psi_eq_theta_zero},
            {"theta_cocycle", c.theta_cocycle},
            {"proof_lifts_valid", c.proof_lifts_valid},
            {"surjective_if_h2_trivial", c.surjective_if_h2_trivial}}},
          {"valid", c.valid()}};
}

inline json action_to_json(const ActionReport& r) {
  return {{"by_automorphisms", r.by_automorphisms}, {"composition", r.composition},           {"identity", r.identity},
          {"coboundaries_preserved", r.coboundaries_preserved}, {"matches_transport", r.matches_transport}, {"ok", r.ok()}};
}

inline json orbit_to_json(const OrbitReport& r) {
  return {{"orbit", r.orbit},
          {"orbit_size", r.orbit.size()},
          {"stabiliser", r.stabiliser},
          {"stabiliser_size", r.stabiliser.size()},
          {"group_order", r.group_order},
          {"h2_order", r.h2_order},
          {"orbit_stabiliser", r.orbit_stabiliser},
          {"bound", r.bound},
          {"stabiliser_is_theta_zero", r.stabiliser_is_theta_zero},
          {"complement", r.complement},
          {"ok", r.ok()}};
}

inline json comparison_to_json(const ComparisonReport& r) {
  return {{"z1_included", r.z1_included},         {"aut_ae_included", r.aut_ae_included}, {"aut_x_included", r.aut_x_included},
          {"square_iota", r.square_iota},         {"square_psi", r.square_psi},           {"square_theta", r.square_theta},
          {"ok", r.ok()}};
}

}  // namespace cslab::io
