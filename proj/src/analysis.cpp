#include "dertower/analysis.hpp"

#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dertower {

namespace {
double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
}  // namespace

BudgetGuard::BudgetGuard(const Budget& b) : b_(b), t0_(now_s()) {}

void BudgetGuard::check_dim(long dim) const {
  if (b_.max_dim > 0 && dim > b_.max_dim)
    throw BudgetExceeded("ambient dimension " + std::to_string(dim) + " exceeds --max-dim " +
                         std::to_string(b_.max_dim));
  check_time();
}

void BudgetGuard::check_vec(const SparseVec& v) const {
  if (b_.max_bits > 0 && static_cast<long>(svec_max_bits(v)) > b_.max_bits)
    throw BudgetExceeded("coefficient size exceeds --max-bits");
}

void BudgetGuard::check_time() const {
  if (b_.timeout_s > 0 && now_s() - t0_ > b_.timeout_s)
    throw BudgetExceeded("timeout of " + std::to_string(b_.timeout_s) + "s exceeded");
}

void set_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

namespace {

// All (i, j) degree pairs with i <= j, i + j = m, i, j >= 1.
std::vector<std::pair<int, int>> degree_pairs(int m) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; 2 * i <= m; ++i) out.emplace_back(i, m - i);
  return out;
}

// Bracket of two vectorized UL basis elements, as a vector in UL^{(i+j)}.
SparseVec basis_pair_bracket(LyndonTable& T, int i, int cola, int j, int colb) {
  Derivation A = ul_basis_deriv(T, i, cola);
  Derivation B = ul_basis_deriv(T, j, colb);
  Derivation C = deriv_bracket(T, A, B, kUnbounded);
  return vectorize(T, C, i + j);
}

}  // namespace

Subspace commutator_component(LyndonTable& T, int m, Cache* cache) {
  CacheKey key{T.n(), 0, "comm", m};
  if (cache && cache->enabled()) {
    if (auto payload = cache->get(key)) {
      ByteReader r(*payload);
      Subspace S = r.subspace();
      if (r.ok() && S.ambient == ul_dim(T, m)) return S;
    }
  }
  EchelonBuilder b(ul_dim(T, m));
  for (auto [i, j] : degree_pairs(m)) {
    const int di = ul_dim(T, i), dj = ul_dim(T, j);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < di; ++a)
      for (int c = (i == j ? a + 1 : 0); c < dj; ++c) pairs.emplace_back(a, c);
    const int np = static_cast<int>(pairs.size());
    constexpr int kChunk = 512;
    for (int lo = 0; lo < np; lo += kChunk) {
      int hi = std::min(np, lo + kChunk);
      std::vector<SparseVec> batch(hi - lo);
#pragma omp parallel for schedule(dynamic)
      for (int t = lo; t < hi; ++t)
        batch[t - lo] = basis_pair_bracket(T, i, pairs[t].first, j, pairs[t].second);
      b.insert_batch(std::move(batch));
    }
  }
  Subspace S = b.to_subspace();
  if (cache && cache->enabled()) {
    ByteWriter w;
    w.subspace(S);
    cache->put(key, w.take());
  }
  return S;
}

Subspace commutator_component(LyndonTable& T, int n, int d, int m, Cache* cache) {
  if (n != T.n()) throw std::invalid_argument("commutator_component: table mismatch");
  if (m < 2 || m > d - 1)
    throw std::invalid_argument("commutator_component: need 2 <= m <= d-1");
  return commutator_component(T, m, cache);
}

std::vector<SparseVec> u_gen_component(LyndonTable& T, int n, int d, int m, Cache* cache) {
  if (m < 1 || m > d - 1) throw std::invalid_argument("u_gen_component: need 1 <= m <= d-1");
  if (m == 1) {
    std::vector<SparseVec> all;
    for (int c = 0; c < ul_dim(T, 1); ++c) all.push_back(svec_unit(c));
    return all;
  }
  Subspace comm = commutator_component(T, n, d, m, cache);
  return quotient_reps(full_space(ul_dim(T, m)), comm);
}

namespace {

// Decides whether every sl-invariant of UL^{(m)} lies in the commutator
// component. Everything happens inside the constant-weight cell (brackets are
// weight additive). Containment is certified through the dual pairing: for
// the sl-submodule C spanned by the brackets, an invariant v lies in C iff
// every sl-invariant functional that annihilates the bracket generators also
// annihilates v (invariant functionals kill all nontrivial isotypics, and the
// pairing between invariant vectors and invariant functionals is perfect).
// This avoids echelonizing the bracket span; the pairing matrix has at most
// rank = #invariants, with early exit once it fills up.
struct CellScan {
  long invariant_rank = 0;
  bool all_contained = true;
  SparseVec witness;  // ambient UL^{(m)} coordinates, set when !all_contained
};

struct ConstantWeightCell {
  std::vector<int> cols;          // ambient columns of the cell
  std::vector<int> col_to_local;  // ambient -> local, -1 outside

  SparseVec to_local(const SparseVec& v) const {
    SparseVec loc;
    for (const auto& [idx, c] : v.e) {
      if (col_to_local[idx] < 0)
        throw InternalInvariantViolation("cell scan: vector leaves the weight cell");
      loc.e.emplace_back(col_to_local[idx], c);
    }
    return loc;
  }
};

ConstantWeightCell constant_weight_cell(GlModule& M) {
  ConstantWeightCell cell;
  cell.col_to_local.assign(M.dim(), -1);
  for (int c = 0; c < M.dim(); ++c) {
    Weight w = M.weight(c);
    bool cw = true;
    for (int x : w)
      if (x != w.front()) cw = false;
    if (cw) {
      cell.col_to_local[c] = static_cast<int>(cell.cols.size());
      cell.cols.push_back(c);
    }
  }
  return cell;
}

// Invariant functionals on the constant-weight cell, in cell-local
// coordinates: the joint kernel of the transposed raising actions, verified
// against the lowering actions.
Subspace dual_invariants_local(ULComponent& M, const ConstantWeightCell& cell,
                               const std::map<Weight, std::vector<int>>& cells_m,
                               const Weight& mu) {
  const int n = M.n();
  const int local_dim = static_cast<int>(cell.cols.size());
  std::vector<SparseVec> rows;
  for (int i = 1; i < n; ++i) {
    Weight adj = mu;  // raising e_i maps weight mu - alpha_i into the cell
    adj[i - 1] -= 1;
    adj[i] += 1;
    auto it = cells_m.find(adj);
    if (it == cells_m.end()) continue;
    for (int b : it->second) rows.push_back(cell.to_local(M.act(i, i + 1, b)));
  }
  Subspace K = kernel(rows, local_dim);
  // lowering check: f_i maps weight mu + alpha_i into the cell
  for (int i = 1; i < n; ++i) {
    Weight adj = mu;
    adj[i - 1] += 1;
    adj[i] -= 1;
    auto it = cells_m.find(adj);
    if (it == cells_m.end()) continue;
    for (int b : it->second) {
      SparseVec img = cell.to_local(M.act(i + 1, i, b));
      for (const auto& phi : K.rows)
        if (!is_zero(svec_dot(phi, img)))
          throw InternalInvariantViolation(
              "dual invariants: raising kernel not killed by lowering operators");
    }
  }
  return K;
}

CellScan scan_degree(LyndonTable& T, int m, const BudgetGuard& guard) {
  const int n = T.n();
  CellScan out;
  ULComponent M(T, m);
  guard.check_dim(M.dim());
  ConstantWeightCell cell = constant_weight_cell(M);
  auto cells_m = weight_cells(M);
  Weight mu(n, m / n);

  Subspace duals = dual_invariants_local(M, cell, cells_m, mu);
  out.invariant_rank = duals.rank();
  if (duals.rank() == 0) return out;
  const int t = duals.rank();

  // weight cells of every lower component, for pair pruning
  std::vector<std::unique_ptr<ULComponent>> comps(m);
  std::vector<std::map<Weight, std::vector<int>>> cells(m);
  for (int i = 1; i < m; ++i) {
    comps[i] = std::make_unique<ULComponent>(T, i);
    cells[i] = weight_cells(*comps[i]);
  }

  // rows of the pairing matrix <phi_s, bracket>; rank t means the invariant
  // functionals separate nothing from C, i.e. all invariants are contained
  EchelonBuilder pairing(t);
  bool saturated = false;
  for (auto [i, j] : degree_pairs(m)) {
    if (saturated) break;
    for (const auto& [wa, colsa] : cells[i]) {
      if (saturated) break;
      Weight need(n);
      for (int s = 0; s < n; ++s) need[s] = mu[s] - wa[s];
      auto itb = cells[j].find(need);
      if (itb == cells[j].end()) continue;
      std::vector<std::pair<int, int>> pairs;
      for (int a : colsa)
        for (int c : itb->second) {
          if (i == j && c <= a) continue;
          pairs.emplace_back(a, c);
        }
      const int np = static_cast<int>(pairs.size());
      constexpr int kChunk = 1024;
      for (int lo = 0; lo < np && !saturated; lo += kChunk) {
        guard.check_time();
        int hi = std::min(np, lo + kChunk);
        std::vector<SparseVec> batch(hi - lo);
#pragma omp parallel for schedule(dynamic)
        for (int s = lo; s < hi; ++s) {
          SparseVec bp =
              cell.to_local(basis_pair_bracket(T, i, pairs[s].first, j, pairs[s].second));
          SparseVec row;
          for (int r = 0; r < t; ++r) row.push(r, svec_dot(duals.rows[r], bp));
          batch[s - lo] = std::move(row);
        }
        pairing.insert_batch(std::move(batch));
        saturated = pairing.rank() == t;
      }
    }
  }
  if (saturated) return out;  // all invariants lie in the commutator component

  // Some invariant functional annihilates C: invariants of the primal module
  // outside its kernel are genuine non-commutator generators.
  Subspace inv = sl_invariants(M);
  if (inv.rank() != t)
    throw InternalInvariantViolation("scan_degree: primal/dual invariant rank mismatch");
  Subspace ann = kernel(pairing.to_subspace().rows, t);  // lambda with sum lambda_s phi_s killing C
  for (const auto& w : inv.rows) {
    SparseVec wl = cell.to_local(w);
    for (const auto& lam : ann.rows) {
      Rat val(0);
      for (const auto& [s, c] : lam.e) val += c * svec_dot(duals.rows[s], wl);
      if (!is_zero(val)) {
        out.all_contained = false;
        out.witness = w;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

int HScanResult::certified_h_lower() const {
  if (found_degree) return *found_degree;
  return std::max(n * (n - 1), scanned_max + 1);
}

HScanResult h_scan(LyndonTable& T, int n, int max_degree, const Budget& budget, Cache* cache) {
  if (n != T.n()) throw std::invalid_argument("h_scan: table mismatch");
  HScanResult res;
  res.n = n;
  res.requested_max = max_degree;
  BudgetGuard guard(budget);
  for (int m = 2; m <= max_degree; ++m) {
    HScanDegree row;
    row.m = m;
    double t0 = now_s();
    if (m % n != 0) {
      // constant weight needs n | degree: no invariants at all
      res.scanned_max = m;
      row.ambient_dim = 0;
      res.trace.push_back(row);
      continue;
    }
    row.ambient_dim = ul_dim(T, m);
    CacheKey key{n, 0, "hscan", m};
    bool decided = false;
    if (cache && cache->enabled()) {
      if (auto payload = cache->get(key)) {
        ByteReader r(*payload);
        row.invariant_rank = r.i64();
        row.found = r.u32() != 0;
        SparseVec w = r.svec();
        if (r.ok()) {
          decided = true;
          if (row.found) {
            res.found_degree = m;
            res.witness = w;
          }
        }
      }
    }
    if (!decided) {
      CellScan scan;
      try {
        scan = scan_degree(T, m, guard);
      } catch (const BudgetExceeded& e) {
        res.budget_exceeded = true;
        res.budget_reason = e.what();
        row.seconds = now_s() - t0;
        res.trace.push_back(row);
        return res;
      }
      row.invariant_rank = scan.invariant_rank;
      row.found = !scan.all_contained;
      if (row.found) {
        res.found_degree = m;
        res.witness = scan.witness;
      }
      if (cache && cache->enabled()) {
        ByteWriter w;
        w.i64(row.invariant_rank);
        w.u32(row.found ? 1 : 0);
        w.svec(row.found ? scan.witness : SparseVec{});
        cache->put(key, w.take());
      }
    }
    row.seconds = now_s() - t0;
    res.trace.push_back(row);
    res.scanned_max = m;
    if (res.found_degree) break;
  }
  if (res.scanned_max == 0) res.scanned_max = 1;  // vacuous scan
  return res;
}

MaincomResult verify_maincom(LyndonTable& T, int n, int d) {
  if (n < 2) throw std::invalid_argument("verify_maincom: need n >= 2");
  if (d > n * (n - 1)) throw std::invalid_argument("verify_maincom: need d <= n(n-1)");
  const int maxk = d - 1;
  std::vector<EchelonBuilder> closure;
  closure.reserve(maxk + 1);
  for (int k = 0; k <= maxk; ++k) closure.emplace_back(k == 0 ? 1 : ul_dim(T, k));

  // seeds: AD(x1^k) and, for n >= 3, del(1, [x2, x3])
  for (int k = 1; k <= maxk; ++k) {
    AssocElt h = assoc_pow(assoc_gen(n, 1), k, kUnbounded);
    closure[k].insert(vectorize(T, AD(T, h, d), k));
  }
  if (n >= 3) {
    LieElt f = lie_bracket(T, lie_gen(T, 2), lie_gen(T, 3), d);
    closure[1].insert(vectorize(T, del(T, 1, f), 1));
  }

  std::vector<std::unique_ptr<ULComponent>> comps(maxk + 1);
  for (int k = 1; k <= maxk; ++k) comps[k] = std::make_unique<ULComponent>(T, k);

  auto rows_of = [&](int k) {
    return closure[k].to_subspace().rows;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // sl-module closure
    for (int k = 1; k <= maxk; ++k) {
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<SparseVec> rows = rows_of(k);
        std::vector<SparseVec> batch;
        for (const auto& r : rows)
          for (int i = 1; i < n; ++i) {
            batch.push_back(raise_op(*comps[k], i, r));
            batch.push_back(lower_op(*comps[k], i, r));
          }
        if (closure[k].insert_batch(std::move(batch)) > 0) grew = changed = true;
      }
    }
    // Lie bracket closure
    for (int m = 2; m <= maxk; ++m) {
      for (auto [i, j] : degree_pairs(m)) {
        std::vector<SparseVec> ri = rows_of(i), rj = rows_of(j);
        std::vector<SparseVec> batch;
        for (const auto& a : ri)
          for (const auto& b : rj) {
            Derivation A = devectorize(T, a, i), B = devectorize(T, b, j);
            batch.push_back(vectorize(T, deriv_bracket(T, A, B, kUnbounded), m));
          }
        if (closure[m].insert_batch(std::move(batch)) > 0) changed = true;
      }
    }
  }

  MaincomResult res;
  res.generated = true;
  for (int k = 1; k <= maxk; ++k) {
    MaincomTraceRow row;
    row.degree = k;
    row.closure_rank = closure[k].rank();
    row.full_dim = ul_dim(T, k);
    if (row.closure_rank != row.full_dim) res.generated = false;
    res.trace.push_back(row);
  }
  return res;
}

TReport property_t_verdict(int n, int d, const Budget& budget, Cache* cache) {
  if (n < 2 || d < 1) throw std::invalid_argument("property_t_verdict: need n >= 2, d >= 1");
  TReport rep;
  if (n == 2) {
    rep.verdict = TVerdict::NoT;
    rep.reason = "Aut of the rank-2 group surjects onto GL_2(Z), which is virtually free";
    rep.scanned_max = 0;
    return rep;
  }
  LyndonTable T(n);
  rep.scan = h_scan(T, n, d - 1, budget, cache);
  rep.scanned_max = rep.scan.scanned_max;
  rep.found_degree = rep.scan.found_degree;
  if (rep.scan.found_degree) {
    rep.verdict = TVerdict::NoT;
    rep.reason = "sl-invariant generator of degree " + std::to_string(*rep.scan.found_degree) +
                 " < d+1 exists (d > h(n))";
  } else if (rep.scan.budget_exceeded) {
    rep.verdict = TVerdict::Unknown;
    rep.reason = "budget exhausted: " + rep.scan.budget_reason + "; scanned degrees 2.." +
                 std::to_string(rep.scan.scanned_max);
  } else {
    rep.verdict = TVerdict::HasT;
    rep.reason = "no sl-invariant generator in degrees 2.." + std::to_string(d - 1) +
                 " (d <= h(n)) and n >= 3";
  }
  return rep;
}

CenterReport center_nontrivial(int n, int d, const Budget& budget) {
  if (n < 2 || d < 1) throw std::invalid_argument("center_nontrivial: need n >= 2, d >= 1");
  CenterReport rep;
  rep.n = n;
  rep.d = d;
  rep.nontrivial = ((d - 1) % (2 * n)) == 0;
  if (d >= 2) {
    Int dim = n * witt_dim(n, d);
    if (dim <= 60000 && (budget.max_dim <= 0 || dim <= budget.max_dim)) {
      LyndonTable T(n);
      ULComponent M(T, d - 1);
      Subspace inv = gl_z_invariants(M);
      rep.computed_check = true;
      rep.invariant_rank = inv.rank();
      if ((inv.rank() > 0) != rep.nontrivial)
        throw InternalInvariantViolation(
            "center_nontrivial: computed invariants disagree with the divisibility criterion");
    }
  } else {
    // d = 1: the center of GL_n(Z) is {+-1}; the closed form 2n | 0 agrees
    rep.computed_check = true;
    rep.invariant_rank = 1;
  }
  return rep;
}

const char* verdict_str(TVerdict v) {
  switch (v) {
    case TVerdict::HasT:
      return "HasT";
    case TVerdict::NoT:
      return "NoT";
    case TVerdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace dertower
