// The cslab command line. run() parses argv, executes one verb and writes a
// JSON report. Exit codes: 0 verified or computed, 1 a property fails (the
// report carries a witness), 2 invalid input, unknown verb or flag, or a size
// cap exceeded, 3 internal error.
#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cslab/io.hpp"
#include "cslab/oracle.hpp"

namespace cslab::cli {

using io::json;

enum ExitCode : int { kOk = 0, kFails = 1, kInvalid = 2, kInternal = 3 };

/// Default size caps. The |X||A| style caps yield to --max-order or
/// CSLAB_MAX_ORDER; the oracle caps do not.
struct Caps {
  std::size_t cohomology = 32;        // |X||A|
  std::size_t wells = 16;             // |X||A|
  std::size_t dynamical = 64;         // |X||S|
  std::size_t enumerate = 8;          // group order for enumerate lcs/brace
  std::size_t oracle_cochains = std::size_t{1} << 20;  // maps enumerated by an oracle
  std::size_t oracle_points = 8;      // |E| for permutation search
};

namespace detail {

inline void bound(std::size_t size, std::size_t cap, const std::string& what) {
  if (size > cap)
    throw SizeBoundError(what + ": size " + std::to_string(size) + " exceeds cap " + std::to_string(cap) + " (raise with --max-order)");
}

inline json base_report(const std::string& verb) { return {{"verb", verb}}; }

inline const char* pass_fail(bool ok) { return ok ? "pass" : "fail"; }

struct Instance {
  LinearCycleSet x;
  FinAbGroup a;
};

inline Instance instance(const std::string& xp, const std::string& ap) {
  return {io::lcs_from_json(io::read_file(xp)), io::group_from_json(io::read_file(ap))};
}

inline Cochain2 cochain(const Instance& in, const std::string& path) { return io::cochain_from_json(io::read_file(path), in.x.size(), in.a); }

inline LinearCycleSet trivial_on(const LinearCycleSet& x) {
  return {x.add, OpTable::generate(x.size(), [](Index, Index y) { return y; }), x.carrier};
}

inline bool is_trivial(const LinearCycleSet& x) {
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x.dot(p, q) != q) return false;
  return true;
}

inline json counts_to_json(const oracle::CohomologyCounts& c) {
  return {{"z2_order", c.z2}, {"b2_order", c.b2}, {"h2_invariant_factors", c.h2}};
}

inline bool counts_match(const oracle::CohomologyCounts& c, const SecondCohomology& h) {
  return c.z2 == h.z2().order() && c.b2 == h.b2().order() && c.h2 == h.group().invariant_factors();
}

/// A failing cocycle check as an exit-1 report; replay with verify_cocycle.
inline int cocycle_failure(json& report, const Verdict& v) {
  report["result"] = "fail";
  report["failed"] = "verify_cocycle";
  report["verdict"] = io::verdict_to_json(v);
  return kFails;
}

}  // namespace detail

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Finite linear cycle sets: verification, cohomology, extensions, Wells sequences", "cslab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "help for every verb");
    app.add_option("--max-order", max_order_, "raise the |X||A| size caps (prints a warning)")->check(CLI::PositiveNumber);

    auto out_opt = [&](CLI::App* s) { s->add_option("-o,--output", output_, "write the report to this file"); };
    auto xa = [&](CLI::App* s) {
      s->add_option("x", x_, "linear cycle set file")->required()->check(CLI::ExistingFile);
      s->add_option("a", a_, "coefficient group file")->required()->check(CLI::ExistingFile);
    };
    auto cocycle_opt = [&](CLI::App* s, bool required) {
      auto* o = s->add_option("cocycle", c_, "cochain file {f, g}")->check(CLI::ExistingFile);
      if (required) o->required();
    };

    auto* check = app.add_subcommand("check", "verify the axioms of a structure or extension file");
    check->add_option("file", file_, "structure file")->required()->check(CLI::ExistingFile);
    out_opt(check);

    auto* coh = app.add_subcommand("cohomology", "Z^2, B^2, H^2 of X with coefficients in A");
    xa(coh);
    coh->add_flag("--oracle", oracle_, "compare against exhaustive enumeration");
    coh->add_flag("--symmetric", symmetric_, "also H^2_sym of (X,+) and the map Lambda");
    out_opt(coh);

    auto* ext = app.add_subcommand("extend", "build the central extension of a cocycle");
    xa(ext);
    cocycle_opt(ext, true);
    out_opt(ext);

    auto* extr = app.add_subcommand("extract", "read the cocycle of an extension through its section");
    extr->add_option("file", file_, "extension file")->required()->check(CLI::ExistingFile);
    out_opt(extr);

    auto* wells = app.add_subcommand("wells", "Wells exact sequence certificate");
    xa(wells);
    cocycle_opt(wells, true);
    wells->add_flag("--group", group_, "the sequence for (E,+) and H^2_sym instead");
    out_opt(wells);

    auto* act = app.add_subcommand("act", "action of Aut(X) x Aut(A) on H^2, Theta and the orbit of a class");
    xa(act);
    cocycle_opt(act, false);
    act->add_flag("--group", group_, "act on H^2_sym of (X,+)");
    act->add_flag("--all-classes", all_classes_, "orbit report for every class");
    out_opt(act);

    auto* dyn = app.add_subcommand("dynamical", "verify a dynamical cocycle and build the extension");
    dyn->add_option("file", file_, "dynamical file")->required()->check(CLI::ExistingFile);
    out_opt(dyn);

    auto* en = app.add_subcommand("enumerate", "list all structures of a kind");
    en->add_option("kind", kind_, "lcs | brace | cycleset")->required()->check(CLI::IsMember({"lcs", "brace", "cycleset"}));
    en->add_option("arg", file_, "group file (lcs, brace) or n (cycleset)")->required();
    out_opt(en);

    auto* cmp = app.add_subcommand("compare-wells", "comparison diagram between the LCS and group sequences");
    xa(cmp);
    cocycle_opt(cmp, true);
    out_opt(cmp);

    auto* orc = app.add_subcommand("oracle", "recompute by brute force and diff against the pipeline");
    orc->require_subcommand(1);
    auto* o_coh = orc->add_subcommand("cohomology", "all cochain pairs");
    xa(o_coh);
    o_coh->add_flag("--symmetric", symmetric_, "symmetric group cohomology of (X,+)");
    out_opt(o_coh);
    auto* o_aut = orc->add_subcommand("aut", "Aut_A(E) against all bijections of E");
    xa(o_aut);
    cocycle_opt(o_aut, true);
    out_opt(o_aut);
    auto* o_cob = orc->add_subcommand("coboundary", "coboundary test against all lambda");
    xa(o_cob);
    cocycle_opt(o_cob, true);
    out_opt(o_cob);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      if (code == 0) return kOk;
      err_ << app.help();
      return kInvalid;
    }

    std::string verb;
    for (auto* s : app.get_subcommands()) verb = s->get_name();
    if (*orc)
      for (auto* s : orc->get_subcommands()) verb += " " + s->get_name();

    json report = detail::base_report(verb);
    int code = kInternal;
    try {
      apply_caps();
      if (*check) code = do_check(report);
      else if (*coh) code = do_cohomology(report);
      else if (*ext) code = do_extend(report);
      else if (*extr) code = do_extract(report);
      else if (*wells) code = do_wells(report);
      else if (*act) code = do_act(report);
      else if (*dyn) code = do_dynamical(report);
      else if (*en) code = do_enumerate(report);
      else if (*cmp) code = do_compare(report);
      else if (*o_coh) code = do_oracle_cohomology(report);
      else if (*o_aut) code = do_oracle_aut(report);
      else if (*o_cob) code = do_oracle_coboundary(report);
    } catch (const io::InputError& e) {
      code = error(report, "invalid-input", e.what());
      if (e.verdict()) report["verdict"] = io::verdict_to_json(*e.verdict());
    } catch (const VerificationError& e) {
      code = error(report, "invalid-input", e.what());
      report["verdict"] = io::verdict_to_json(e.verdict());
    } catch (const InternalError& e) {
      code = error(report, "internal-error", e.what(), kInternal);
    } catch (const std::length_error& e) {
      code = error(report, "cap-exceeded", e.what());
    } catch (const std::invalid_argument& e) {
      code = error(report, "invalid-input", e.what());
    } catch (const std::domain_error& e) {
      code = error(report, "invalid-input", e.what());
    } catch (const json::exception& e) {
      code = error(report, "invalid-input", e.what());
    } catch (const std::exception& e) {
      code = error(report, "internal-error", e.what(), kInternal);
    }
    emit(report);
    return code;
  }

  int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"cslab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::optional<std::size_t> max_order_;
  std::string output_, x_, a_, c_, file_, kind_;
  bool oracle_ = false, symmetric_ = false, group_ = false, all_classes_ = false;
  Caps caps_;

  void apply_caps() {
    std::optional<std::size_t> m = max_order_;
    if (!m) {
      if (const char* env = std::getenv("CSLAB_MAX_ORDER"); env && *env) {
        std::size_t used = 0;
        long long v = 0;
        try {
          v = std::stoll(env, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != std::string(env).size() || v < 1) throw io::InputError("CSLAB_MAX_ORDER must be a positive integer");
        m = static_cast<std::size_t>(v);
      }
    }
    if (!m) return;
    err_ << "warning: size caps overridden to " << *m << "; large instances can take very long\n";
    caps_.cohomology = caps_.wells = caps_.dynamical = caps_.enumerate = *m;
  }

  int error(json& report, const std::string& kind, const std::string& what, int code = kInvalid) {
    report["result"] = kind;
    report["error"] = what;
    err_ << "cslab: " << kind << ": " << what << "\n";
    return code;
  }

  void emit(const json& report) {
    if (!output_.empty()) {
      try {
        io::write_file(output_, report);
        return;
      } catch (const io::InputError& e) {
        err_ << "cslab: " << e.what() << "\n";
      }
    }
    out_ << io::dump(report);
  }

  WellsOptions wells_options() const {
    WellsOptions o;
    o.max_order = caps_.wells;
    return o;
  }

  // ---------------------------------------------------------------- check

  int do_check(json& report) {
    const json j = io::read_file(file_);
    if (j.is_object() && j.value("kind", "") == "extension") return check_extension(report, j);
    const io::RawStructure s = io::structure_from_json(j);
    report["kind"] = s.kind;
    report["size"] = s.size();
    Verdict v;
    if (s.kind == "lcs" || s.kind == "brace") {
      AdditiveTable add;
      v = io::additive_part(s, add);
      if (v && s.kind == "lcs") {
        v = verify_linear_cycle_set(add, s.table("dot"));
        if (v) {
          const LinearCycleSet l{add, s.table("dot"), s.group};
          report["brace_round_trip"] = brace_to_lcs(lcs_to_brace(l)) == l;
        }
      } else if (v) {
        v = verify_brace(add, s.table("circ"));
        if (v) report["lcs"] = io::lcs_to_json(brace_to_lcs(Brace{add, s.table("circ"), s.group}));
      }
    } else if (s.kind == "cycleset") {
      v = verify_cycle_set(s.table("dot"));
      if (v) report["nondegenerate"] = verify_nondegenerate(s.table("dot")).ok;
    } else if (s.kind == "rack") {
      v = verify_rack(s.table("star"));
      if (v) {
        const auto conv = abelian_rack_to_cycle_set(Rack{s.table("star")});
        report["abelian"] = io::verdict_to_json(conv.verdict);
      }
    } else {
      const BiGroupoid b{s.table("table1"), s.table("table2")};
      const auto e = bigroupoid_ybe_equivalence(b);
      const auto braid = verify_braid(bigroupoid_map(b));
      v = e.braid;
      report["conditions"] = io::verdict_to_json(e.conditions);
      report["agree"] = e.agree();
      report["left_nondegenerate"] = braid.left_nondegenerate;
      report["right_nondegenerate"] = braid.right_nondegenerate;
    }
    report["result"] = detail::pass_fail(v.ok);
    report["verdict"] = io::verdict_to_json(v);
    return v ? kOk : kFails;
  }

  /// Canonicalised extension, or an exit-1 report with the first failure.
  std::optional<CanonicalExtension> load_extension(json& report, const json& j) {
    const io::RawExtension r = io::extension_from_json(j);
    detail::bound(r.plus.size(), caps_.cohomology, "extension");
    AdditiveTable add;
    Verdict v = verify_abelian_group(r.plus, &add);
    LinearCycleSet e{std::move(add), r.dot, std::nullopt};
    if (v) v = verify_linear_cycle_set(e);
    if (!v) {
      report["result"] = "fail";
      report["failed"] = "verify_linear_cycle_set";
      report["verdict"] = io::verdict_to_json(v);
      return std::nullopt;
    }
    std::vector<Index> s;
    if (r.section) {
      s = *r.section;
    } else {
      // the first preimage of each x
      s.assign(r.base.size(), static_cast<Index>(r.plus.size()));
      for (std::size_t p = r.plus.size(); p-- > 0;) s[r.pi[p]] = static_cast<Index>(p);
      for (auto v2 : s)
        if (v2 >= r.plus.size()) throw io::InputError("pi is not onto");
    }
    try {
      return canonicalise_extension(r.base, r.kernel, e, r.i, r.pi, s);
    } catch (const VerificationError& err) {
      report["result"] = "fail";
      report["failed"] = "canonicalise_extension";
      report["verdict"] = io::verdict_to_json(err.verdict());
      return std::nullopt;
    }
  }

  int check_extension(json& report, const json& j) {
    report["kind"] = "extension";
    const auto c = load_extension(report, j);
    if (!c) return kFails;
    report["result"] = "pass";
    report["verdict"] = io::verdict_to_json(Verdict::pass());
    return kOk;
  }

  // ----------------------------------------------------------- cohomology

  int do_cohomology(json& report) {
    const auto in = detail::instance(x_, a_);
    detail::bound(in.x.size() * in.a.order(), caps_.cohomology, "cohomology");
    const SecondCohomology h(in.x, in.a);
    report["result"] = "computed";
    report["cohomology"] = io::cohomology_to_json(h);
    bool agree = true;
    if (oracle_) {
      const auto c = oracle::cohomology(in.x, in.a, false, caps_.oracle_cochains);
      report["oracle"] = detail::counts_to_json(c);
      report["oracle"]["agreement"] = detail::counts_match(c, h);
      agree = agree && detail::counts_match(c, h);
    }
    if (symmetric_) {
      const SecondCohomology sym(detail::trivial_on(in.x), in.a, true);
      const LambdaMap lam(h, sym);
      const auto lr = lambda_report(lam);
      report["symmetric"] = io::cohomology_to_json(sym);
      report["lambda"] = {{"kernel_order", lr.kernel_order},
                          {"kernel_invariant_factors", lr.kernel_factors},
                          {"image_order", lr.image_order},
                          {"image_invariant_factors", lr.image_factors}};
      if (detail::is_trivial(in.x) && in.x.carrier) {
        const auto d = trivial_decomposition(in.x, in.a);
        report["decomposition"] = {{"h2_order", d.h2_order},         {"bilinear_order", d.bilin_order}, {"h2sym_order", d.h2sym_order},
                                   {"homomorphism", d.homomorphism}, {"injective", d.injective},        {"surjective", d.surjective},
                                   {"lambda_is_projection", d.lambda_is_projection}, {"certified", d.certified()}};
        agree = agree && d.certified();
      }
      if (oracle_) {
        const auto c = oracle::cohomology(in.x, in.a, true, caps_.oracle_cochains);
        report["symmetric_oracle"] = detail::counts_to_json(c);
        report["symmetric_oracle"]["agreement"] = detail::counts_match(c, sym);
        agree = agree && detail::counts_match(c, sym);
      }
    }
    if (!agree) report["result"] = "fail";
    return agree ? kOk : kFails;
  }

  // ----------------------------------------------------- extend / extract

  int do_extend(json& report) {
    const auto in = detail::instance(x_, a_);
    detail::bound(in.x.size() * in.a.order(), caps_.cohomology, "extend");
    const Cochain2 c = detail::cochain(in, c_);
    if (auto v = verify_cocycle(in.x, in.a, c, true); !v) return detail::cocycle_failure(report, v);
    const auto e = build_extension(in.x, in.a, c);
    const SecondCohomology h(in.x, in.a);
    report["result"] = "pass";
    report["class"] = h.reduce(c);
    report["h2_invariant_factors"] = h.group().invariant_factors();
    report["extension"] = io::extension_to_json(e);
    return kOk;
  }

  int do_extract(json& report) {
    const json j = io::read_file(file_);
    // an extend report holds the extension under "extension"
    const json& ej = (j.is_object() && j.contains("extension")) ? j["extension"] : j;
    const auto c = load_extension(report, ej);
    if (!c) return kFails;
    const auto ex = extract_cocycle(c->ext, c->section);
    report["result"] = "computed";
    report["normalised"] = ex.normalised;
    report["cocycle"] = io::cochain_to_json(ex.cocycle, c->ext.kernel);
    if (ex.normalised) {
      const SecondCohomology h(c->ext.base, c->ext.kernel);
      report["class"] = h.reduce(ex.cocycle);
      report["h2_invariant_factors"] = h.group().invariant_factors();
    } else {
      report["note"] = "s(0) != 0, so the pair is not normalised and no class is reported";
    }
    return kOk;
  }

  // ---------------------------------------------------------------- Wells

  /// Instance, cocycle and extension for the Wells verbs; nullopt after an exit-1 report.
  struct WellsInput {
    detail::Instance in;
    CentralExtensionLCS e;
  };

  std::optional<WellsInput> wells_input(json& report) {
    auto in = detail::instance(x_, a_);
    detail::bound(in.x.size() * in.a.order(), caps_.wells, "Wells");
    const Cochain2 c = detail::cochain(in, c_);
    if (auto v = verify_cocycle(in.x, in.a, c, true); !v) {
      detail::cocycle_failure(report, v);
      return std::nullopt;
    }
    auto e = build_extension(in.x, in.a, c);
    return WellsInput{std::move(in), std::move(e)};
  }

  int do_wells(json& report) {
    const auto w = wells_input(report);
    if (!w) return kFails;
    const WellsContext ctx(w->in.x, w->in.a, group_, wells_options());
    const auto cert = verify_wells(ctx, w->e);
    report["result"] = detail::pass_fail(cert.valid());
    report["certificate"] = io::certificate_to_json(cert);
    return cert.valid() ? kOk : kFails;
  }

  int do_act(json& report) {
    const auto in = detail::instance(x_, a_);
    detail::bound(in.x.size() * in.a.order(), caps_.wells, "act");
    const WellsContext ctx(in.x, in.a, group_, wells_options());
    const auto& h2 = ctx.h2();
    Element base = h2.group().zero();
    if (!c_.empty()) {
      const Cochain2 c = detail::cochain(detail::Instance{in.x, in.a}, c_);
      if (auto v = verify_cocycle(ctx.cycle_set(), in.a, h2.space().restrict(c), true); !v) return detail::cocycle_failure(report, v);
      base = h2.reduce(h2.space().restrict(c));
    }
    const auto action = verify_action(ctx);
    const auto tc = verify_theta_cocycle(ctx, base);
    const auto orbit = orbit_bound_report(ctx, base);
    json pairs = json::array(), theta = json::array();
    for (std::size_t p = 0; p < ctx.pairs().size(); ++p) {
      pairs.push_back(io::pair_to_json(ctx.pairs().at(p)));
      theta.push_back(ctx.theta(base, p));
    }
    bool ok = action.ok() && tc.ok && orbit.ok();
    report["kind"] = h2.kind();
    report["h2_invariant_factors"] = h2.group().invariant_factors();
    report["base"] = base;
    report["pairs"] = pairs;
    report["theta"] = theta;
    report["action"] = io::action_to_json(action);
    report["theta_cocycle"] = io::verdict_to_json(tc);
    report["orbit"] = io::orbit_to_json(orbit);
    if (all_classes_) {
      json all = json::array();
      for (const auto& cls : h2.classes()) {
        const auto r = orbit_bound_report(ctx, cls);
        ok = ok && r.ok();
        all.push_back({{"class", cls}, {"orbit_size", r.orbit.size()}, {"stabiliser_size", r.stabiliser.size()}, {"ok", r.ok()}});
      }
      report["classes"] = all;
    }
    report["result"] = detail::pass_fail(ok);
    return ok ? kOk : kFails;
  }

  int do_compare(json& report) {
    const auto w = wells_input(report);
    if (!w) return kFails;
    const WellsContext top(w->in.x, w->in.a, false, wells_options());
    const WellsContext bottom(w->in.x, w->in.a, true, wells_options());
    const auto r = comparison_diagram(top, bottom, w->e);
    report["result"] = detail::pass_fail(r.ok());
    report["diagram"] = io::comparison_to_json(r);
    return r.ok() ? kOk : kFails;
  }

  // ------------------------------------------------------------ dynamical

  int do_dynamical(json& report) {
    const json j = io::read_file(file_);
    DynamicalOptions opt;
    opt.max_order = caps_.dynamical;
    const json& xj = io::detail::field(j, "x");
    DynamicalVerdict v;
    if (j.contains("cocycle")) {
      const LinearCycleSet x = io::lcs_from_json(xj);
      const FinAbGroup a = io::group_from_json(io::detail::field(j, "coefficients"));
      const Cochain2 c = io::cochain_from_json(j["cocycle"], x.size(), a);
      const DynamicalPair pair = cocycle_to_dynamical(a, c);
      v = verify_dynamical_lcs(x, pair, opt);
      report["form"] = "cocycle";
      report["verify_cocycle"] = io::verdict_to_json(verify_cocycle(x, a, c, false));
      if (v && c.G(x.zero(), x.zero()) == 0) {
        const LinearCycleSet built = build_dynamical_extension(x, pair, opt);
        const auto e = build_extension(x, a, c);
        report["matches_extension"] = built.add.plus == e.e.add.plus && built.dot == e.e.dot;
        if (!report["matches_extension"].get<bool>()) v.product = Verdict::fail("specialisation", {}, "tables differ from the extension of the cocycle");
      }
      if (v) report["structure"] = io::lcs_to_json(build_dynamical_extension(x, pair, opt));
    } else {
      const io::RawStructure xs = io::structure_from_json(xj);
      const std::size_t n = xs.size();
      const DynamicalMap alpha = io::dynamical_from_json(io::detail::field(j, "alpha"), "alpha", n);
      if (xs.kind == "cycleset") {
        if (auto cv = verify_cycle_set(xs.table("dot")); !cv) throw io::InputError("x is not a cycle set", cv);
        v = verify_dynamical_cs(xs.table("dot"), alpha, opt);
        report["form"] = "cycle set";
        if (v) report["structure"] = io::cycle_set_to_json(build_dynamical_extension(xs.table("dot"), alpha, opt).dot);
      } else if (xs.kind == "lcs") {
        const LinearCycleSet x = io::lcs_from_json(xj);
        const DynamicalPair pair{alpha, io::dynamical_from_json(io::detail::field(j, "alpha_prime"), "alpha_prime", n)};
        v = verify_dynamical_lcs(x, pair, opt);
        report["form"] = "linear cycle set";
        if (v) report["structure"] = io::lcs_to_json(build_dynamical_extension(x, pair, opt));
      } else {
        throw io::InputError("x must be of kind cycleset or lcs");
      }
    }
    report["verdict"] = io::dynamical_verdict_to_json(v);
    report["result"] = detail::pass_fail(static_cast<bool>(v));
    return v ? kOk : kFails;
  }

  // ------------------------------------------------------------ enumerate

  int do_enumerate(json& report) {
    json list = json::array();
    report["kind"] = kind_;
    if (kind_ == "cycleset") {
      std::size_t used = 0;
      long long n = -1;
      try {
        n = std::stoll(file_, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != file_.size() || n < 0) throw io::InputError("cycleset enumeration takes n as a non-negative integer");
      for (const auto& t : enumerate_cycle_sets(static_cast<std::size_t>(n))) list.push_back(io::cycle_set_to_json(t));
    } else {
      const FinAbGroup g = io::group_from_json(io::read_file(file_));
      for (const auto& l : enumerate_lcs(g, caps_.enumerate)) list.push_back(kind_ == "lcs" ? io::lcs_to_json(l) : io::brace_to_json(lcs_to_brace(l)));
    }
    report["result"] = "computed";
    report["count"] = list.size();
    report["structures"] = list;
    return kOk;
  }

  // --------------------------------------------------------------- oracle

  int do_oracle_cohomology(json& report) {
    const auto in = detail::instance(x_, a_);
    const bool g_only = symmetric_;
    const SecondCohomology h(g_only ? detail::trivial_on(in.x) : in.x, in.a, g_only);
    const auto c = oracle::cohomology(in.x, in.a, g_only, caps_.oracle_cochains);
    const bool match = detail::counts_match(c, h);
    report["pipeline"] = {{"z2_order", h.z2().order()}, {"b2_order", h.b2().order()}, {"h2_invariant_factors", h.group().invariant_factors()}};
    report["oracle"] = detail::counts_to_json(c);
    report["match"] = match;
    report["result"] = detail::pass_fail(match);
    return match ? kOk : kFails;
  }

  int do_oracle_aut(json& report) {
    auto in = detail::instance(x_, a_);
    detail::bound(in.x.size() * in.a.order(), caps_.oracle_points, "oracle aut (permutation search)");
    const Cochain2 c = detail::cochain(in, c_);
    if (auto v = verify_cocycle(in.x, in.a, c, true); !v) return detail::cocycle_failure(report, v);
    const auto e = build_extension(in.x, in.a, c);
    std::set<Permutation> fast;
    for (const auto& l : enumerate_aut_A_E(e, wells_options())) fast.insert(lift_table(e, l));
    std::vector<Index> block;
    for (std::size_t a = 0; a < e.m(); ++a) block.push_back(e.i(a));
    const auto brute = oracle::table_automorphisms({&e.e.add.plus, &e.e.dot}, block, caps_.oracle_points);
    const bool match = fast == std::set<Permutation>(brute.begin(), brute.end());
    report["pipeline_order"] = fast.size();
    report["oracle_order"] = brute.size();
    report["automorphisms"] = std::vector<Permutation>(fast.begin(), fast.end());
    report["match"] = match;
    report["result"] = detail::pass_fail(match);
    return match ? kOk : kFails;
  }

  int do_oracle_coboundary(json& report) {
    const auto in = detail::instance(x_, a_);
    const Cochain2 c = detail::cochain(in, c_);
    const auto w = coboundary_witness(in.x, in.a, c);
    const bool brute = oracle::is_coboundary(in.x, in.a, c.f, c.g, false, caps_.oracle_cochains);
    bool match = w.has_value() == brute;
    if (w) {
      report["lambda"] = *w;
      match = match && coboundary(in.x, in.a, *w) == c;
    }
    report["pipeline_coboundary"] = w.has_value();
    report["oracle_coboundary"] = brute;
    report["match"] = match;
    report["result"] = detail::pass_fail(match);
    return match ? kOk : kFails;
  }
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(argc, argv);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) { return Runner(out, err).run(args); }

}  // namespace cslab::cli
