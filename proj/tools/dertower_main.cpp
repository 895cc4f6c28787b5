#include <CLI11.hpp>
#include <iostream>

#include "dertower/expr.hpp"
#include "dertower/report.hpp"

using namespace dertower;

namespace {

struct Options {
  bool json = false;
  bool timings = false;
  int jobs = 0;
  std::string cache_dir;
  Budget budget;
};

void emit(const Options& opt, const Json& record, const std::string& text) {
  if (opt.json)
    std::cout << record.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

Cache make_cache(const Options& opt) {
  if (!opt.cache_dir.empty()) return Cache(opt.cache_dir);
  return Cache::from_env();
}

std::string ranks_line(const std::map<int, Subspace>& by_degree) {
  std::string s;
  for (const auto& [k, S] : by_degree) s += (s.empty() ? "" : " ") + std::to_string(S.rank());
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dertower: exact computations in the derivation algebras of free nilpotent Lie "
               "algebras (bases, brackets, invariants, property-T verdicts, characteristic "
               "ideal chains, automorphism-tower height bounds)"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON output");
  app.add_flag("--timings", opt.timings, "include wall-clock timings in JSON traces");
  app.add_option("--jobs", opt.jobs, "worker threads for parallel kernels");
  app.add_option("--cache-dir", opt.cache_dir,
                 "cache directory (default: $" + std::string(kCacheEnvVar) + ")");
  app.add_option("--max-dim", opt.budget.max_dim, "largest ambient dimension to echelonize")
      ->capture_default_str();
  app.add_option("--max-bits", opt.budget.max_bits, "per-coefficient bit budget")
      ->capture_default_str();
  app.add_option("--timeout-s", opt.budget.timeout_s, "wall-clock budget in seconds (0 = none)")
      ->capture_default_str();
  app.set_version_flag("--version", std::string(kToolVersion));

  int n = 2, d = 0, m = 0, max_degree = 0;
  bool glz = false;
  std::string variant = "sl", expr_a, expr_b, cache_action;

  auto* cmd_basis = app.add_subcommand("basis", "Lyndon basis and Witt dimensions");
  cmd_basis->add_option("-n", n, "number of generators")->required();
  cmd_basis->add_option("-m", m, "single degree");
  cmd_basis->add_option("-d", d, "list all degrees up to d");

  auto* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two elements");
  cmd_bracket->add_option("-n", n)->required();
  cmd_bracket->add_option("-d", d, "nilpotency class (0 = free)");
  cmd_bracket->add_option("a", expr_a, "first element, e.g. '[x1,x2]'")->required();
  cmd_bracket->add_option("b", expr_b, "second element")->required();

  auto* cmd_ad = app.add_subcommand("ad", "AD of an associative polynomial");
  cmd_ad->add_option("-n", n)->required();
  cmd_ad->add_option("-d", d, "nilpotency class (0 = free)");
  cmd_ad->add_option("poly", expr_a, "associative polynomial, e.g. '[x1,x2]*x1'")->required();

  auto* cmd_db = app.add_subcommand("derive-bracket", "bracket of two derivations");
  cmd_db->add_option("-n", n)->required();
  cmd_db->add_option("-d", d, "nilpotency class")->required();
  cmd_db->add_option("D1", expr_a, "e.g. 'AD(x1^2)' or 'del(1,[x2,x3])'")->required();
  cmd_db->add_option("D2", expr_b)->required();

  auto* cmd_inv = app.add_subcommand("invariants", "sl (or GL_n(Z)) invariants of UL^(m)");
  cmd_inv->add_option("-n", n)->required();
  cmd_inv->add_option("-d", d)->required();
  cmd_inv->add_option("-m", m, "degree")->required();
  cmd_inv->add_flag("--glz", glz, "GL_n(Z)-invariants instead of sl");

  auto* cmd_ugen = app.add_subcommand("u-gen", "generator space UL^(m) mod [UL,UL]");
  cmd_ugen->add_option("-n", n)->required();
  cmd_ugen->add_option("-d", d)->required();
  cmd_ugen->add_option("-m", m, "degree")->required();

  auto* cmd_hscan = app.add_subcommand("h-scan", "scan for sl-invariant generators");
  cmd_hscan->add_option("-n", n)->required();
  cmd_hscan->add_option("--max", max_degree, "largest degree to scan")->required();

  auto* cmd_t = app.add_subcommand("property-t", "Kazhdan property T verdict for Aut");
  cmd_t->add_option("-n", n)->required();
  cmd_t->add_option("-d", d)->required();

  auto* cmd_center = app.add_subcommand("center", "center of Aut: 2n | d-1 criterion");
  cmd_center->add_option("-n", n)->required();
  cmd_center->add_option("-d", d)->required();

  auto* cmd_chain = app.add_subcommand("ul-chain", "characteristic ideal chain UL_k");
  cmd_chain->add_option("-n", n)->required();
  cmd_chain->add_option("-d", d)->required();
  cmd_chain->add_option("--variant", variant, "sl | glz")->check(CLI::IsMember({"sl", "glz"}));

  auto* cmd_pqr = app.add_subcommand("pqr", "the (p,q,r) center/generator ranks");
  cmd_pqr->add_option("-n", n)->required();
  cmd_pqr->add_option("-d", d)->required();

  auto* cmd_tower = app.add_subcommand("tower", "automorphism tower height report");
  cmd_tower->add_option("-n", n)->required();
  cmd_tower->add_option("-d", d)->required();

  auto* cmd_cache = app.add_subcommand("cache", "cache maintenance");
  cmd_cache->add_option("action", cache_action, "verify | clear | stats")
      ->required()
      ->check(CLI::IsMember({"verify", "clear", "stats"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  set_jobs(opt.jobs);
  Cache cache = make_cache(opt);
  Cache* cp = cache.enabled() ? &cache : nullptr;

  try {
    if (*cmd_basis) {
      if (m <= 0 && d <= 0) throw CLI::ValidationError("basis", "need -m or -d");
      LyndonTable T(n);
      int lo = m > 0 ? m : 1, hi = m > 0 ? m : d;
      Json result = Json::array();
      std::string text;
      for (int deg = lo; deg <= hi; ++deg) {
        Json jb = json_basis(T, n, deg);
        text += "degree " + std::to_string(deg) + " (dim " + witt_dim(n, deg).get_str() + "):";
        for (int r = 0; r < T.count(deg); ++r) text += " " + word_str(T.word(T.gid(deg, r)));
        if (deg < hi) text += "\n";
        jb["degree"] = deg;
        result.push_back(std::move(jb));
      }
      Json rec = record_envelope("basis", n, d, Json{{"m", m}, {"d", d}});
      rec["result"] = std::move(result);
      emit(opt, rec, text);
      return 0;
    }

    if (*cmd_bracket) {
      LyndonTable T(n);
      LieElt a = parse_lie(T, expr_a, d > 0 ? d : kUnbounded);
      LieElt b = parse_lie(T, expr_b, d > 0 ? d : kUnbounded);
      LieElt c = lie_bracket(T, a, b, d > 0 ? d : kUnbounded);
      Json rec = record_envelope("bracket", n, d, Json{{"a", expr_a}, {"b", expr_b}});
      rec["result"] = json_lie(T, c);
      emit(opt, rec, lie_str(T, c));
      return 0;
    }

    if (*cmd_ad) {
      LyndonTable T(n);
      AssocElt h = parse_assoc(n, expr_a, d > 0 ? d : kUnbounded);
      Derivation D = AD(T, h, d > 0 ? d : kUnbounded);
      Json rec = record_envelope("ad", n, d, Json{{"h", expr_a}});
      rec["result"] = json_deriv(T, D);
      emit(opt, rec, deriv_str(T, D));
      return 0;
    }

    if (*cmd_db) {
      LyndonTable T(n);
      Derivation A = parse_deriv(T, expr_a, d);
      Derivation B = parse_deriv(T, expr_b, d);
      Derivation C = deriv_bracket(T, A, B, d);
      Json rec = record_envelope("derive-bracket", n, d, Json{{"D1", expr_a}, {"D2", expr_b}});
      rec["result"] = json_deriv(T, C);
      emit(opt, rec, deriv_str(T, C));
      return 0;
    }

    if (*cmd_inv) {
      if (m < 1 || m > d - 1) throw CLI::ValidationError("invariants", "need 1 <= m <= d-1");
      LyndonTable T(n);
      ULComponent M(T, m);
      Subspace inv = glz ? gl_z_invariants(M) : sl_invariants(M);
      Json rec = record_envelope("invariants", n, d, Json{{"m", m}, {"glz", glz}});
      rec["result"] = json_invariants(T, d, m, inv, glz);
      emit(opt, rec,
           (glz ? std::string("GL_n(Z)") : std::string("sl")) + "-invariants of UL(" +
               std::to_string(n) + "," + std::to_string(d) + ")^(" + std::to_string(m) +
               "): rank " + std::to_string(inv.rank()) + " of " + std::to_string(inv.ambient));
      return 0;
    }

    if (*cmd_ugen) {
      LyndonTable T(n);
      auto reps = u_gen_component(T, n, d, m, cp);
      long comm = m >= 2 ? commutator_component(T, n, d, m, cp).rank() : 0;
      Json rec = record_envelope("u-gen", n, d, Json{{"m", m}});
      rec["result"] = json_ugen(m, ul_dim(T, m), comm, reps.size());
      Json basis = Json::array();
      for (const auto& r : reps) basis.push_back(json_witness(T, r, m));
      rec["result"]["generators"] = std::move(basis);
      emit(opt, rec,
           "U_gen(" + std::to_string(n) + "," + std::to_string(d) + ")^(" + std::to_string(m) +
               "): " + std::to_string(reps.size()) + " generators (ambient " +
               std::to_string(ul_dim(T, m)) + ", commutator rank " + std::to_string(comm) + ")");
      return 0;
    }

    if (*cmd_hscan) {
      LyndonTable T(n);
      HScanResult r = h_scan(T, n, max_degree, opt.budget, cp);
      Json rec = record_envelope("h-scan", n, 0, Json{{"max", max_degree}});
      rec["result"] = json_hscan(T, r, opt.timings);
      std::string text = "h-scan n=" + std::to_string(n) + " degrees 2.." +
                         std::to_string(r.scanned_max) + ": " +
                         (r.found_degree
                              ? "invariant generator found in degree " +
                                    std::to_string(*r.found_degree)
                              : "no sl-invariant generator") +
                         (r.budget_exceeded ? " [budget exhausted: " + r.budget_reason + "]" : "");
      emit(opt, rec, text);
      return r.budget_exceeded ? 3 : 0;
    }

    if (*cmd_t) {
      TReport r = property_t_verdict(n, d, opt.budget, cp);
      Json rec = record_envelope("property-t", n, d, Json::object());
      rec["result"] = json_property_t(r);
      if (r.scan.witness && r.scan.found_degree) {
        LyndonTable T(n);
        rec["result"]["witness"] = json_witness(T, *r.scan.witness, *r.scan.found_degree);
      }
      emit(opt, rec,
           "Aut of the free nilpotent group on " + std::to_string(n) + " generators of class " +
               std::to_string(d) + ": " + verdict_str(r.verdict) + " (" + r.reason + ")");
      return r.verdict == TVerdict::Unknown ? 3 : 0;
    }

    if (*cmd_center) {
      CenterReport r = center_nontrivial(n, d, opt.budget);
      Json rec = record_envelope("center", n, d, Json::object());
      rec["result"] = json_center(r);
      emit(opt, rec,
           "center of Aut is " + std::string(r.nontrivial ? "nontrivial" : "trivial") +
               " (2n | d-1 " + (r.nontrivial ? "holds" : "fails") + ")" +
               (r.computed_check ? ", invariant computation agrees" : ""));
      return 0;
    }

    if (*cmd_chain) {
      LyndonTable T(n);
      IdealChain c =
          ul_chain(T, n, d, variant == "sl" ? ChainVariant::Sl : ChainVariant::GlZ, opt.budget, cp);
      Json rec = record_envelope("ul-chain", n, d, Json{{"variant", variant}});
      rec["result"] = json_chain(c);
      std::string text = "UL_k chain (" + variant + "): stabilization index " +
                         std::to_string(c.stabilization_index);
      for (std::size_t k = 0; k < c.members.size(); ++k)
        text += "\n  UL_" + std::to_string(k) + " ranks: " + ranks_line(c.members[k].by_degree);
      emit(opt, rec, text);
      return 0;
    }

    if (*cmd_pqr) {
      LyndonTable T(n);
      PQR v = pqr(T, n, d, cp);
      Json rec = record_envelope("pqr", n, d, Json::object());
      rec["result"] = json_pqr(v);
      emit(opt, rec,
           "(p,q,r) = (" + std::to_string(v.p) + "," + std::to_string(v.q) + "," +
               std::to_string(v.r) + ")");
      return 0;
    }

    if (*cmd_tower) {
      TowerReport r = height_report(n, d, opt.budget, cp);
      LyndonTable T(n);
      Json rec = record_envelope("tower", n, d, Json::object());
      rec["result"] = json_tower(T, r, opt.timings);
      std::string text = "tower(" + std::to_string(n) + "," + std::to_string(d) +
                         "): case " + tower_case_str(r.case_tag) + ", height bound " +
                         std::to_string(r.bound_floor) + " (exact " +
                         rat_str(r.bound_rational) + ", h >= " + std::to_string(r.h_lower) + ")";
      if (r.pqr_data)
        text += ", (p,q,r) = (" + std::to_string(r.pqr_data->p) + "," +
                std::to_string(r.pqr_data->q) + "," + std::to_string(r.pqr_data->r) + ")";
      emit(opt, rec, text);
      return 0;
    }

    if (*cmd_cache) {
      Json rec = record_envelope("cache", 0, 0, Json{{"action", cache_action}});
      if (!cache.enabled()) {
        rec["result"] = {{"enabled", false}};
        emit(opt, rec, "cache disabled (set --cache-dir or $" + std::string(kCacheEnvVar) + ")");
        return cache_action == "verify" ? 0 : 0;
      }
      if (cache_action == "verify") {
        auto res = cache.verify();
        rec["result"] = {{"enabled", true}, {"checked", res.checked}, {"bad", res.bad}};
        emit(opt, rec,
             "cache verify: " + std::to_string(res.checked) + " entries, " +
                 std::to_string(res.bad.size()) + " bad");
        return res.bad.empty() ? 0 : 4;
      }
      if (cache_action == "clear") {
        int removed = cache.clear();
        rec["result"] = {{"enabled", true}, {"removed", removed}};
        emit(opt, rec, "cache clear: removed " + std::to_string(removed) + " entries");
        return 0;
      }
      auto res = cache.verify();
      rec["result"] = {{"enabled", true}, {"entries", res.checked}, {"root", cache.root()}};
      emit(opt, rec,
           "cache at " + cache.root() + ": " + std::to_string(res.checked) + " entries");
      return 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalInvariantViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
