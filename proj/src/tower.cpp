#include "dertower/tower.hpp"

#include <sstream>

namespace dertower {

long GradedFamily::total_rank() const {
  long total = 0;
  for (const auto& [k, S] : by_degree) total += S.rank();
  return total;
}

const Subspace& GradedFamily::at(int k) const {
  static const Subspace empty{};
  auto it = by_degree.find(k);
  return it == by_degree.end() ? empty : it->second;
}

bool GradedFamily::equals(const GradedFamily& o) const {
  if (n != o.n || d != o.d) return false;
  for (const auto& [k, S] : by_degree)
    if (!(S == o.at(k))) return false;
  for (const auto& [k, S] : o.by_degree)
    if (!(S == at(k))) return false;
  return true;
}

namespace {

// span of [rows(A_i), rows(B_j)] over i+j = m, inside UL^{(m)}
std::vector<SparseVec> bracket_products(LyndonTable& T, const GradedFamily& A,
                                        const GradedFamily& B, int m) {
  std::vector<SparseVec> out;
  for (int i = 1; i < m; ++i) {
    int j = m - i;
    const Subspace& Ai = A.at(i);
    const Subspace& Bj = B.at(j);
    if (Ai.rank() == 0 || Bj.rank() == 0) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < Ai.rank(); ++a)
      for (int b = 0; b < Bj.rank(); ++b) pairs.emplace_back(a, b);
    std::size_t off = out.size();
    out.resize(off + pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < static_cast<int>(pairs.size()); ++t) {
      Derivation Da = devectorize(T, Ai.rows[pairs[t].first], i);
      Derivation Db = devectorize(T, Bj.rows[pairs[t].second], j);
      out[off + t] = vectorize(T, deriv_bracket(T, Da, Db, kUnbounded), m);
    }
  }
  return out;
}

GradedFamily empty_family(LyndonTable& T, int n, int d, const std::string& name) {
  GradedFamily F;
  F.n = n;
  F.d = d;
  F.name = name;
  for (int k = 1; k <= d - 1; ++k) F.by_degree[k] = Subspace{ul_dim(T, k), {}, {}};
  return F;
}

}  // namespace

IdealChain ul_chain(LyndonTable& T, int n, int d, ChainVariant variant, const Budget& budget,
                    Cache* cache) {
  if (n < 2 || d < 2) throw std::invalid_argument("ul_chain: need n >= 2, d >= 2");
  BudgetGuard guard(budget);
  IdealChain chain;
  chain.n = n;
  chain.d = d;
  chain.variant = variant;
  chain.zero_part = empty_family(T, n, d, "UL^[0]");
  chain.plus_part = empty_family(T, n, d, "UL^+");

  for (int k = 1; k <= d - 1; ++k) {
    guard.check_dim(ul_dim(T, k));
    ULComponent M(T, k);
    Subspace inv = sl_invariants(M);
    Subspace plus = sl_plus_part(M);
    if (variant == ChainVariant::GlZ && inv.rank() > 0) {
      // GL_n(Z)-trivial part keeps only even-parity invariants; odd ones move
      // to the complement
      Weight w = M.weight(inv.rows.front().lead());
      if (w.front() % 2 != 0) {
        std::vector<SparseVec> rows = plus.rows;
        rows.insert(rows.end(), inv.rows.begin(), inv.rows.end());
        plus = span(rows, M.dim());
        inv = Subspace{M.dim(), {}, {}};
      }
    }
    if (inv.rank() + plus.rank() != M.dim())
      throw InternalInvariantViolation("ul_chain: trivial/nontrivial split does not fill UL");
    chain.zero_part.by_degree[k] = std::move(inv);
    chain.plus_part.by_degree[k] = std::move(plus);
  }

  // UL_infinity: ideal generated by [UL^+, UL^+]; ascending degree pass
  chain.ul_infinity = empty_family(T, n, d, "UL_inf");
  for (int m = 2; m <= d - 1; ++m) {
    guard.check_time();
    std::vector<SparseVec> gens = bracket_products(T, chain.plus_part, chain.plus_part, m);
    // ideal closure: brackets of lower UL_inf slices with the whole of UL
    GradedFamily full = empty_family(T, n, d, "UL");
    for (int k = 1; k < m; ++k) full.by_degree[k] = full_space(ul_dim(T, k));
    std::vector<SparseVec> more = bracket_products(T, chain.ul_infinity, full, m);
    gens.insert(gens.end(), more.begin(), more.end());
    chain.ul_infinity.by_degree[m] = span(gens, ul_dim(T, m));
  }

  // UL^+_(k) and the members UL_k = UL_inf + UL^+_(k)
  GradedFamily P = chain.plus_part;
  P.name = "UL^+_(0)";
  int cap = d + 2;
  for (int k = 0; k <= cap; ++k) {
    GradedFamily member = empty_family(T, n, d, "UL_" + std::to_string(k));
    for (int m = 1; m <= d - 1; ++m) {
      std::vector<SparseVec> rows = chain.ul_infinity.at(m).rows;
      const auto& pr = P.at(m).rows;
      rows.insert(rows.end(), pr.begin(), pr.end());
      member.by_degree[m] = span(rows, ul_dim(T, m));
    }
    if (!chain.members.empty()) {
      // descent check
      const GradedFamily& prev = chain.members.back();
      for (int m = 1; m <= d - 1; ++m)
        if (!subspace_leq(member.at(m), prev.at(m)))
          throw InternalInvariantViolation("ul_chain: chain is not descending");
      if (prev.equals(member)) {
        chain.stabilization_index = static_cast<int>(chain.members.size()) - 1;
        break;
      }
    }
    chain.members.push_back(std::move(member));
    if (k == cap)
      throw InternalInvariantViolation("ul_chain: chain failed to stabilize within bound");
    // next P: [P, UL^[0]]
    GradedFamily Pn = empty_family(T, n, d, "UL^+_(" + std::to_string(k + 1) + ")");
    for (int m = 2; m <= d - 1; ++m)
      Pn.by_degree[m] = span(bracket_products(T, P, chain.zero_part, m), ul_dim(T, m));
    P = std::move(Pn);
  }

  for (const auto& member : chain.members) chain.center_slices.push_back(member.at(d - 1));
  return chain;
}

PQR pqr(LyndonTable& T, int n, int d, Cache* cache) {
  if (n < 2 || d < 2) throw std::invalid_argument("pqr: need n >= 2, d >= 2");
  PQR out;
  ULComponent Mc(T, d - 1);
  Subspace cen_inv = sl_invariants(Mc);
  Subspace comm_top = d - 1 >= 2 ? commutator_component(T, d - 1, cache)
                                 : Subspace{ul_dim(T, d - 1), {}, {}};
  out.q = intersect(cen_inv, comm_top).rank();
  out.r = cen_inv.rank() - out.q;
  // p: trivial part of UL / (UL^+ + Cen + [UL,UL]); the center kills the top
  // degree, so only degrees < d-1 contribute
  for (int m = 1; m <= d - 2; ++m) {
    ULComponent M(T, m);
    std::vector<SparseVec> rows = sl_plus_part(M).rows;
    if (m >= 2) {
      Subspace comm = commutator_component(T, m, cache);
      rows.insert(rows.end(), comm.rows.begin(), comm.rows.end());
    }
    out.p += M.dim() - span(rows, M.dim()).rank();
  }
  return out;
}

std::map<std::vector<int>, std::pair<long, long>> w_dims(LyndonTable& T, const IdealChain& chain,
                                                         int k) {
  std::map<std::vector<int>, std::pair<long, long>> out;
  const int d = chain.d;
  const int K = static_cast<int>(chain.members.size());
  auto member = [&](int i) -> const GradedFamily& {
    return chain.members[std::min(i, K - 1)];
  };
  // multiplicities of U_gen,k = UL_k / UL_{k+1}, aggregated by sl type
  std::map<std::vector<int>, long> mult_ugen;
  for (int m = 1; m <= d - 1; ++m) {
    ULComponent M(T, m);
    auto a = isotypic_in(M, member(k).at(m)).by_partition();
    auto b = isotypic_in(M, member(k + 1).at(m)).by_partition();
    for (const auto& [lam, ma] : a) {
      long diff = ma - (b.count(lam) ? b.at(lam) : 0);
      if (diff != 0) mult_ugen[lam] += diff;
    }
  }
  // multiplicities of CUL_k and CUL_{k+1} (degree d-1 slices)
  ULComponent Mc(T, d - 1);
  auto cul_k = isotypic_in(Mc, member(k).at(d - 1)).by_partition();
  auto cul_k1 = isotypic_in(Mc, member(k + 1).at(d - 1)).by_partition();
  for (const auto& [lam, mu] : mult_ugen) {
    auto it = cul_k.find(lam);
    if (it == cul_k.end() || mu <= 0) continue;
    long w = mu * it->second;
    if (w == 0) continue;
    long cu_gen = it->second - (cul_k1.count(lam) ? cul_k1.at(lam) : 0);
    long r = w - (cu_gen > 0 ? 1 : 0);
    out[lam] = {w, r};
  }
  return out;
}

namespace {

// inner derivations ad(L^{(k)}) as a graded family over degrees 1..d-1
GradedFamily inner_family(LyndonTable& T, int n, int d) {
  GradedFamily F;
  F.n = n;
  F.d = d;
  F.name = "I_L";
  for (int k = 1; k <= d - 1; ++k) {
    std::vector<SparseVec> rows;
    T.ensure_degree(k);
    for (int r = 0; r < T.count(k); ++r)
      rows.push_back(vectorize(T, ad_inner(T, lie_basis(T.gid(k, r)), d), k));
    F.by_degree[k] = span(rows, ul_dim(T, k));
  }
  return F;
}

// {v in UL^{(a)} : [v, u] in target^{(a+deg u)} for all u in the given family
// slices}, where family provides per-degree row bases of the test elements
Subspace centralizer_slice(LyndonTable& T, int d, int a,
                           const std::vector<std::pair<int, std::vector<SparseVec>>>& tests,
                           const GradedFamily& target_mod) {
  const int dim_a = ul_dim(T, a);
  std::map<std::pair<int, int>, SparseVec> rows;  // (test index, out coord) -> row
  int test_idx = 0;
  for (const auto& [b, testers] : tests) {
    if (a + b > d - 1) {
      test_idx += static_cast<int>(testers.size());
      continue;
    }
    const Subspace& mod_out = target_mod.at(a + b);
    for (const auto& u : testers) {
      Derivation Du = devectorize(T, u, b);
      for (int col = 0; col < dim_a; ++col) {
        Derivation Dc = ul_basis_deriv(T, a, col);
        SparseVec img = vectorize(T, deriv_bracket(T, Dc, Du, kUnbounded), a + b);
        img = reduce(mod_out, std::move(img));
        for (const auto& [idx, c] : img.e) rows[{test_idx, idx}].push(col, c);
      }
      ++test_idx;
    }
  }
  std::vector<SparseVec> mat;
  mat.reserve(rows.size());
  for (auto& [key, r] : rows) mat.push_back(std::move(r));
  return kernel(mat, dim_a);
}

}  // namespace

SSpaceReport s_space(LyndonTable& T, int n, int d, const Budget& budget) {
  if (n < 2 || d < 2) throw std::invalid_argument("s_space: need n >= 2, d >= 2");
  SSpaceReport rep;
  rep.n = n;
  rep.d = d;
  if (n >= 3 || d < 3) {
    rep.dim = 0;
  } else {
    // n = 2: dim (UL^{(d-2)} + I_L)/I_L; ad is injective below the top degree
    rep.dim = ul_dim(T, d - 2) - witt_dim(2, d - 2).get_si();
  }

  Int total = 0;
  for (int k = 1; k <= d - 1; ++k) total += ul_dim(T, k);
  if (budget.max_dim > 0 && total > budget.max_dim / 8) return rep;  // closed form only

  BudgetGuard guard(budget);
  GradedFamily inner = inner_family(T, n, d);

  // all of UL as test elements
  std::vector<std::pair<int, std::vector<SparseVec>>> all_tests;
  for (int b = 1; b <= d - 1; ++b) {
    std::vector<SparseVec> units;
    for (int c = 0; c < ul_dim(T, b); ++c) units.push_back(svec_unit(c));
    all_tests.emplace_back(b, std::move(units));
  }
  long c_dim = 0, base_dim = 0;
  for (int a = 1; a <= d - 1; ++a) {
    guard.check_time();
    Subspace Ca = centralizer_slice(T, d, a, all_tests, inner);
    c_dim += Ca.rank();
    // (Cen + I_L) slice: whole component at the top degree, I_L elsewhere
    base_dim += (a == d - 1) ? ul_dim(T, a) : inner.at(a).rank();
  }
  rep.computed_dim = c_dim - base_dim;
  rep.verified = true;
  if (rep.computed_dim != rep.dim)
    throw InternalInvariantViolation("s_space: computed dimension disagrees with closed form");

  // centralizer of the sl-module generated by AD(x1^2), modulo inner
  // derivations: must equal UL^{(d-2)} + UL^{(d-1)} + I_L
  if (d >= 4) {
    ULComponent M2(T, 2);
    SparseVec adx2 = vectorize(T, AD(T, assoc_pow(assoc_gen(n, 1), 2, kUnbounded), d), 2);
    EchelonBuilder mod(ul_dim(T, 2));
    mod.insert(adx2);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<SparseVec> batch;
      for (const auto& r : mod.to_subspace().rows)
        for (int i = 1; i < n; ++i) {
          batch.push_back(raise_op(M2, i, r));
          batch.push_back(lower_op(M2, i, r));
        }
      if (mod.insert_batch(std::move(batch)) > 0) grew = true;
    }
    std::vector<std::pair<int, std::vector<SparseVec>>> m_tests;
    m_tests.emplace_back(2, mod.to_subspace().rows);
    bool ok = true;
    for (int a = 1; a <= d - 1 && ok; ++a) {
      Subspace Ca = centralizer_slice(T, d, a, m_tests, inner);
      long expect = (a >= d - 2) ? ul_dim(T, a) : inner.at(a).rank();
      if (Ca.rank() != expect) ok = false;
    }
    if (!ok)
      throw InternalInvariantViolation(
          "s_space: centralizer of the AD(x1^2) module has unexpected dimension");
    rep.adx2_lemma_checked = true;
  }
  return rep;
}

CGammaCase cgamma_case(const PQR& v) {
  CGammaCase c;
  c.note = "l_i are the ranks of the abelianizations of the N-factors; symbolic, l_i >= 2";
  auto stage = [&](const std::string& s) { c.stages.push_back(s); };
  const long p = v.p, q = v.q, r = v.r;
  if ((p == 0 && r == 0) || (q == 0 && r == 0)) {
    c.case_id = 1;
    c.condition = "p=r=0 or q=r=0";
    stage("trivial");
    c.stabilize_step = 2;
  } else if (r == 0 && p == 1 && q == 1) {
    c.case_id = 2;
    c.condition = "r=0, p=q=1";
    stage("Z");
    stage("Z^{l2}");
    stage("GL_{l2}(Z) x| Z^{l2*l3}");
    stage("GL_{l2}(Z) x| Z^{l2*l3} |x GL_{l3}(Z)");
    c.stabilize_step = 5;
  } else if (r == 0) {
    c.case_id = 3;
    c.condition = "r=0, p*q>1";
    stage("Z^{p*q}");
    stage("GL_{p*q}(Z) x| Z^{p*q*l2}");
    stage("GL_{p*q}(Z) x| Z^{p*q*l2} |x GL_{l2}(Z)");
    c.stabilize_step = 4;
  } else if (r == 1 && p == 0 && q == 0) {
    c.case_id = 4;
    c.condition = "r=1, p=q=0";
    stage("trivial or F_2");
    stage("F_2^{s2} branch when nontrivial");
    c.stabilize_step = 5;
  } else if (r == 1 && (p == 0 || q == 0)) {
    c.case_id = 5;
    c.condition = "r=1, exactly one of p,q zero";
    stage("Z^p or F_2 x| Z^p");
    stage("GL_p(Z) x| Z^p branch");
    c.stabilize_step = 5;
  } else if (r == 1 && p == 1 && q == 1) {
    c.case_id = 6;
    c.condition = "r=1, p=q=1";
    stage("nilpotent of class 2 on two generators (or its F_2 extension)");
    stage("GL_2(Z) x| (Z^2 x Z^{l2})");
    stage("(GL_2(Z) x GL_{l2}(Z)) x| (Z^2 x Z^{l2})");
    c.stabilize_step = 4;
  } else if (r == 1) {
    c.case_id = 7;
    c.condition = "r=1, p>1 or q>1";
    stage("class-2 nilpotent with abelianization Z^{p+q}, center Z^{pq} (or F_2 ext)");
    stage("(GL_p(Z) x GL_q(Z) x GL_{l2}(Z)) x| (Z^p x Z^q x Z^{pq*l2})");
    c.stabilize_step = 3;
  } else if (p == 0 && q == 0) {
    c.case_id = 8;
    c.condition = "r>=2, p=q=0";
    stage("SL_r(Z) or GL_r(Z); PSL_r/PGL_r onward");
    c.stabilize_step = 2;
  } else if (p == 0 || q == 0) {
    c.case_id = 9;
    c.condition = "r>=2, exactly one of p,q zero";
    stage("SL_r(Z) x| Z^{rp} or GL_r(Z) x| Z^{rp}");
    stage("(GL_r(Z) x GL_p(Z)) x| Z^{rp}");
    c.stabilize_step = 3;
  } else {
    c.case_id = 10;
    c.condition = "r>=2, p,q>=1";
    stage("class-2 nilpotent with abelianization Z^{r(p+q)}, center Z^{pq}, extended by SL_r/GL_r");
    stage("(GL_r(Z) x GL_p(Z) x GL_q(Z)) x| (Z^{rp} x Z^{rq} x Z^{pq*l2})");
    c.stabilize_step = 3;
  }
  return c;
}

TowerReport height_report(int n, int d, const Budget& budget, Cache* cache) {
  if (n < 2 || d < 1) throw std::invalid_argument("height_report: need n >= 2, d >= 1");
  TowerReport rep;
  rep.n = n;
  rep.d = d;
  rep.center_nontrivial = ((d - 1) % (2 * n)) == 0;
  rep.case_tag = !rep.center_nontrivial
                     ? TowerCase::NoCenter
                     : (n == 2 ? TowerCase::TwoGeneratorSpecial : TowerCase::Center);

  // certified lower bound on h(n): the generation theorem gives n(n-1); a
  // scan over degrees < d can only sharpen it (or find h(n) exactly)
  rep.h_lower = n * (n - 1);
  rep.h_info.n = n;
  if (d > rep.h_lower || n == 2) {
    LyndonTable T(n);
    rep.h_info = h_scan(T, n, d - 1, budget, cache);
    rep.h_exact = rep.h_info.found();
    rep.h_lower = std::max(rep.h_lower, rep.h_info.certified_h_lower());
    if (rep.h_info.found()) rep.h_lower = *rep.h_info.found_degree;
    if (rep.h_info.budget_exceeded)
      rep.caveats.push_back("h(n) bound from a partial scan (" + rep.h_info.budget_reason +
                            "); reported height is an upper bound");
  }

  Rat term = Rat(2) + Rat(d, rep.h_lower);
  term.canonicalize();
  switch (rep.case_tag) {
    case TowerCase::NoCenter:
      rep.bound_rational = term;
      rep.caveats.push_back(
          "the tower height may be one step below this bound when the final generator and "
          "center types coincide in a single simple module");
      break;
    case TowerCase::Center:
      rep.bound_rational = std::max(Rat(5), term);
      break;
    case TowerCase::TwoGeneratorSpecial:
      rep.bound_rational = std::max(Rat(6), term);
      break;
  }
  Int fl = rep.bound_rational.get_num() / rep.bound_rational.get_den();
  rep.bound_floor = fl.get_si();

  // attach (p,q,r) and the center-factor case when desk-scale
  Int top = n * witt_dim(n, d);
  if (d >= 2 && top <= 4000) {
    LyndonTable T(n);
    rep.pqr_data = pqr(T, n, d, cache);
    if (rep.center_nontrivial) rep.cgamma = cgamma_case(*rep.pqr_data);
  }
  return rep;
}

const char* tower_case_str(TowerCase c) {
  switch (c) {
    case TowerCase::NoCenter:
      return "no-center";
    case TowerCase::Center:
      return "center";
    case TowerCase::TwoGeneratorSpecial:
      return "two-generator-special";
  }
  return "no-center";
}

}  // namespace dertower
