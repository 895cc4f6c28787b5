#include "dertower/rep.hpp"

#include <algorithm>
#include <cassert>

namespace dertower {

SparseVec GlModule::act_vec(int p, int q, const SparseVec& v) {
  SparseVec out;
  for (const auto& [col, c] : v.e) svec_axpy(out, c, act(p, q, col));
  return out;
}

ULComponent::ULComponent(LyndonTable& T, int k) : T_(T), k_(k), wact_(T) {
  T_.ensure_degree(k + 1);
  words_ = T_.count(k + 1);
  base_ = T_.gid_base(k + 1);
  dim_ = T_.n() * words_;
}

std::vector<int> ULComponent::weight(int col) const {
  int j = col / words_, r = col % words_;
  std::vector<int> w = word_mdeg(T_.word(base_ + r), T_.n());
  w[j] -= 1;
  return w;
}

SparseVec ULComponent::act(int p, int q, int col) {
  auto key = std::make_tuple(p, q, col);
  {
    std::lock_guard lk(mtx_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // [e_pq, del_j(b_w)] = del_j(e_pq . b_w) - [j == p] del_q(b_w)
  int j = col / words_, r = col % words_;
  LieElt moved = wact_.act(p, q, base_ + r);
  SparseVec out;
  for (const auto& [g, c] : moved.t) out.e.emplace_back(j * words_ + (g - base_), c);
  std::sort(out.e.begin(), out.e.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (j == p - 1) {
    SparseVec corr = svec_unit((q - 1) * words_ + r);
    svec_axpy(out, Rat(-1), corr);
  }
  std::lock_guard lk(mtx_);
  return cache_.emplace(key, std::move(out)).first->second;
}

LieComponent::LieComponent(LyndonTable& T, int m) : T_(T), m_(m), wact_(T) {
  T_.ensure_degree(m);
  dim_ = T_.count(m);
  base_ = T_.gid_base(m);
}

std::vector<int> LieComponent::weight(int col) const {
  return word_mdeg(T_.word(base_ + col), T_.n());
}

SparseVec LieComponent::act(int p, int q, int col) {
  std::lock_guard lk(mtx_);
  LieElt moved = wact_.act(p, q, base_ + col);
  SparseVec out;
  for (const auto& [g, c] : moved.t) out.e.emplace_back(g - base_, c);
  std::sort(out.e.begin(), out.e.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

long IsotypicDecomposition::total_dim() const {
  Int total = 0;
  for (const auto& [key, m] : mult) total += m * weyl_dim(key.first, n);
  return total.get_si();
}

std::map<std::vector<int>, long> IsotypicDecomposition::by_partition() const {
  std::map<std::vector<int>, long> out;
  for (const auto& [key, m] : mult) out[key.first] += m;
  return out;
}

std::map<Weight, std::vector<int>> weight_cells(GlModule& M) {
  std::map<Weight, std::vector<int>> cells;
  for (int c = 0; c < M.dim(); ++c) cells[M.weight(c)].push_back(c);
  return cells;
}

std::map<Weight, Subspace> weight_split(GlModule& M) {
  std::map<Weight, Subspace> out;
  for (auto& [w, cols] : weight_cells(M)) {
    std::vector<SparseVec> units;
    units.reserve(cols.size());
    for (int c : cols) units.push_back(svec_unit(c));
    out[w] = span_serial(units, M.dim());
  }
  return out;
}

SparseVec raise_op(GlModule& M, int i, const SparseVec& v) { return M.act_vec(i, i + 1, v); }
SparseVec lower_op(GlModule& M, int i, const SparseVec& v) { return M.act_vec(i + 1, i, v); }

namespace {

// Kernel of all simple raising operators restricted to the span of the given
// (independent) vectors; returned in ambient coordinates.
Subspace raising_kernel_on(GlModule& M, const std::vector<SparseVec>& basis) {
  const int nb = static_cast<int>(basis.size());
  if (nb == 0) return Subspace{M.dim(), {}, {}};
  // images of the basis under each raising operator
  std::vector<std::vector<SparseVec>> img(M.n() - 1, std::vector<SparseVec>(nb));
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (int i = 1; i < M.n(); ++i)
    for (int b = 0; b < nb; ++b) img[i - 1][b] = raise_op(M, i, basis[b]);
  // rows of the stacked operator matrix, as functionals on the coefficient
  // space of `basis`
  std::map<std::pair<int, int>, SparseVec> rows;  // (op, ambient idx) -> row
  for (int i = 0; i < M.n() - 1; ++i)
    for (int b = 0; b < nb; ++b)
      for (const auto& [idx, c] : img[i][b].e) rows[{i, idx}].push(b, c);
  std::vector<SparseVec> mat;
  mat.reserve(rows.size());
  for (auto& [k, r] : rows) {
    std::sort(r.e.begin(), r.e.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    mat.push_back(std::move(r));
  }
  Subspace K = kernel(mat, nb);
  // back to ambient coordinates
  std::vector<SparseVec> amb;
  for (const auto& kr : K.rows) {
    SparseVec v;
    for (const auto& [b, c] : kr.e) svec_axpy(v, c, basis[b]);
    amb.push_back(std::move(v));
  }
  return span(amb, M.dim());
}

void verify_lowering_kill(GlModule& M, const Subspace& S) {
  for (const auto& r : S.rows)
    for (int i = 1; i < M.n(); ++i)
      if (!lower_op(M, i, r).empty())
        throw InternalInvariantViolation(
            "sl_invariants: raising kernel not killed by lowering operators");
}

bool constant_weight(const Weight& w) {
  for (int c : w)
    if (c != w.front()) return false;
  return true;
}

}  // namespace

Subspace sl_invariants(GlModule& M) {
  std::vector<SparseVec> basis;
  for (int c = 0; c < M.dim(); ++c)
    if (constant_weight(M.weight(c))) basis.push_back(svec_unit(c));
  Subspace inv = raising_kernel_on(M, basis);
  verify_lowering_kill(M, inv);
  return inv;
}

Subspace sl_invariants_in(GlModule& M, const Subspace& S) {
  std::vector<SparseVec> basis;
  for (const auto& r : S.rows) {
    bool cw = true;
    Weight w0;
    for (const auto& [idx, c] : r.e) {
      Weight w = M.weight(idx);
      if (w0.empty()) w0 = w;
      if (w != w0) {
        // not weight-homogeneous: fall back to intersecting with the
        // constant-weight coordinate subspace
        cw = false;
        break;
      }
    }
    if (!cw) {
      std::vector<SparseVec> units;
      for (int c = 0; c < M.dim(); ++c)
        if (constant_weight(M.weight(c))) units.push_back(svec_unit(c));
      Subspace cell = span(units, M.dim());
      Subspace SC = intersect(S, cell);
      Subspace inv = raising_kernel_on(M, SC.rows);
      verify_lowering_kill(M, inv);
      return inv;
    }
  }
  std::vector<SparseVec> cw_rows;
  for (const auto& r : S.rows)
    if (!r.empty() && constant_weight(M.weight(r.lead()))) cw_rows.push_back(r);
  Subspace inv = raising_kernel_on(M, cw_rows);
  verify_lowering_kill(M, inv);
  return inv;
}

Subspace gl_z_invariants(GlModule& M) {
  Subspace inv = sl_invariants(M);
  if (inv.rank() == 0) return inv;
  Weight w = M.weight(inv.rows.front().lead());
  return (w.front() % 2 == 0) ? inv : Subspace{M.dim(), {}, {}};
}

namespace {

IsotypicDecomposition isotypic_impl(GlModule& M, const std::vector<SparseVec>* sub_rows) {
  IsotypicDecomposition dec;
  dec.n = M.n();
  // group basis vectors by weight
  std::map<Weight, std::vector<SparseVec>> cells;
  Subspace S;
  if (sub_rows) {
    for (const auto& r : *sub_rows) {
      if (r.empty()) continue;
      Weight w = M.weight(r.lead());
      for (const auto& [idx, c] : r.e)
        if (M.weight(idx) != w)
          throw std::invalid_argument("isotypic: subspace is not weight graded");
      cells[w].push_back(r);
    }
    S = span(*sub_rows, M.dim());
  } else {
    for (int c = 0; c < M.dim(); ++c) cells[M.weight(c)].push_back(svec_unit(c));
  }
  for (auto& [w, basis] : cells) {
    bool dominant = true;
    for (std::size_t i = 1; i < w.size(); ++i)
      if (w[i - 1] < w[i]) dominant = false;
    if (!dominant) continue;
    Subspace hw = raising_kernel_on(M, basis);
    if (sub_rows) {
      // closure check: highest weight vectors must generate inside the span
      for (const auto& r : hw.rows)
        for (int i = 1; i < M.n(); ++i)
          if (!contains(S, lower_op(M, i, r)))
            throw std::invalid_argument("isotypic: subspace is not closed under the gl action");
    }
    if (hw.rank() == 0) continue;
    int twist = w.back();
    std::vector<int> lambda(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) lambda[i] = w[i] - twist;
    while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
    dec.mult[{lambda, twist}] += hw.rank();
  }
  return dec;
}

}  // namespace

IsotypicDecomposition isotypic(GlModule& M) { return isotypic_impl(M, nullptr); }

IsotypicDecomposition isotypic_in(GlModule& M, const Subspace& S) {
  return isotypic_impl(M, &S.rows);
}

long hom_sl_dim(const IsotypicDecomposition& A, const IsotypicDecomposition& B) {
  auto a = A.by_partition();
  auto b = B.by_partition();
  long total = 0;
  for (const auto& [lam, ma] : a) {
    auto it = b.find(lam);
    if (it != b.end()) total += ma * it->second;
  }
  return total;
}

Int weyl_dim(const std::vector<int>& lambda, int nn) {
  std::vector<int> lam(lambda);
  lam.resize(nn, 0);
  Int num = 1, den = 1;
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j) {
      num *= lam[i] - lam[j] + j - i;
      den *= j - i;
    }
  return num / den;
}

Subspace sl_plus_part(GlModule& M) {
  std::vector<SparseVec> gens;
  for (int p = 1; p <= M.n(); ++p)
    for (int q = 1; q <= M.n(); ++q) {
      if (p == q) continue;
      for (int c = 0; c < M.dim(); ++c) {
        SparseVec v = M.act(p, q, c);
        if (!v.empty()) gens.push_back(std::move(v));
      }
    }
  // traceless diagonal part: h_i = e_ii - e_{i+1,i+1}
  for (int i = 1; i < M.n(); ++i)
    for (int c = 0; c < M.dim(); ++c) {
      SparseVec v = svec_sub(M.act(i, i, c), M.act(i + 1, i + 1, c));
      if (!v.empty()) gens.push_back(std::move(v));
    }
  return span(gens, M.dim());
}

}  // namespace dertower
