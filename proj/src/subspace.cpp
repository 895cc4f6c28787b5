#include "dertower/subspace.hpp"

#include <algorithm>
#include <cassert>

namespace dertower {

namespace {

void check_indices(const SparseVec& v, int ambient) {
  if (!v.empty() && (v.e.front().first < 0 || v.e.back().first >= ambient))
    throw DimensionMismatch("vector index out of ambient range");
}

// Eliminate the lead of `row` from v fraction-free: v := lead(row)*v - v[lead]*row,
// then strip content. Assumes both primitive integer rows.
void ff_eliminate(SparseVec& v, const SparseVec& row) {
  Rat c = svec_get(v, row.lead());
  if (is_zero(c)) return;
  svec_combine(v, row.lead_coeff(), -c, row);
  svec_primitive(v);
}

}  // namespace

SparseVec EchelonBuilder::residual(SparseVec v) const {
  check_indices(v, ambient_);
  svec_primitive(v);
  while (!v.empty()) {
    auto it = lead_to_row_.find(v.lead());
    if (it == lead_to_row_.end()) break;
    ff_eliminate(v, rows_[it->second]);
  }
  return v;
}

bool EchelonBuilder::insert(SparseVec v) {
  v = residual(std::move(v));
  if (v.empty()) return false;
  lead_to_row_[v.lead()] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

int EchelonBuilder::insert_batch(std::vector<SparseVec> batch) {
  const int nb = static_cast<int>(batch.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nb; ++i) batch[i] = residual(std::move(batch[i]));
  int grew = 0;
  for (auto& v : batch)
    if (insert(std::move(v))) ++grew;
  return grew;
}

Subspace EchelonBuilder::to_subspace() const {
  // Back-substitute into the unique RREF.
  std::vector<SparseVec> rows = rows_;
  std::sort(rows.begin(), rows.end(),
            [](const SparseVec& a, const SparseVec& b) { return a.lead() < b.lead(); });
  for (int i = static_cast<int>(rows.size()) - 1; i >= 0; --i) {
    Rat inv = 1 / rows[i].lead_coeff();
    svec_scale(rows[i], inv);
    for (int j = 0; j < i; ++j) {
      Rat c = svec_get(rows[j], rows[i].lead());
      if (!is_zero(c)) svec_axpy(rows[j], -c, rows[i]);
    }
  }
  Subspace S;
  S.ambient = ambient_;
  S.rows = std::move(rows);
  for (int i = 0; i < S.rank(); ++i) S.pivots[S.rows[i].lead()] = i;
  return S;
}

Subspace span_serial(std::span<const SparseVec> vectors, int ambient) {
  EchelonBuilder b(ambient);
  for (const auto& v : vectors) b.insert(v);
  return b.to_subspace();
}

Subspace span(std::span<const SparseVec> vectors, int ambient) {
  EchelonBuilder b(ambient);
  // Batched so the reductions run in parallel; the result is the same RREF.
  constexpr std::size_t kBatch = 256;
  std::vector<SparseVec> chunk;
  chunk.reserve(kBatch);
  for (const auto& v : vectors) {
    chunk.push_back(v);
    if (chunk.size() == kBatch) {
      b.insert_batch(std::move(chunk));
      chunk.clear();
    }
  }
  if (!chunk.empty()) b.insert_batch(std::move(chunk));
  return b.to_subspace();
}

Subspace span(const std::vector<SparseVec>& vectors, int ambient) {
  return span(std::span<const SparseVec>(vectors.data(), vectors.size()), ambient);
}
Subspace span_serial(const std::vector<SparseVec>& vectors, int ambient) {
  return span_serial(std::span<const SparseVec>(vectors.data(), vectors.size()), ambient);
}

SparseVec reduce(const Subspace& S, SparseVec v) {
  check_indices(v, S.ambient);
  while (!v.empty()) {
    auto it = S.pivots.find(v.lead());
    if (it == S.pivots.end()) break;
    svec_axpy(v, -v.lead_coeff(), S.rows[it->second]);
  }
  return v;
}

bool contains(const Subspace& S, const SparseVec& v) { return reduce(S, v).empty(); }

bool subspace_leq(const Subspace& small, const Subspace& big) {
  if (small.ambient != big.ambient) throw DimensionMismatch("ambient mismatch");
  for (const auto& r : small.rows)
    if (!contains(big, r)) return false;
  return true;
}

std::vector<SparseVec> quotient_reps(const Subspace& big, const Subspace& small) {
  if (big.ambient != small.ambient) throw DimensionMismatch("ambient mismatch");
  if (!subspace_leq(small, big))
    throw std::invalid_argument("quotient_reps: second argument is not contained in the first");
  EchelonBuilder b(big.ambient);
  for (const auto& r : small.rows) b.insert(r);
  std::vector<SparseVec> reps;
  for (const auto& r : big.rows)
    if (b.insert(r)) reps.push_back(r);
  assert(static_cast<int>(reps.size()) == big.rank() - small.rank());
  return reps;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw DimensionMismatch("ambient mismatch");
  std::vector<SparseVec> all = a.rows;
  all.insert(all.end(), b.rows.begin(), b.rows.end());
  return span(all, a.ambient);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw DimensionMismatch("ambient mismatch");
  const int n = a.ambient;
  // Zassenhaus: echelonize rows (r|r) for r in a and (r|0) for r in b; rows
  // with zero left block carry the intersection in the right block.
  std::vector<SparseVec> stacked;
  stacked.reserve(a.rows.size() + b.rows.size());
  for (const auto& r : a.rows) {
    SparseVec w = r;
    for (const auto& [i, c] : r.e) w.e.emplace_back(i + n, c);
    stacked.push_back(std::move(w));
  }
  for (const auto& r : b.rows) stacked.push_back(r);
  Subspace big = span(stacked, 2 * n);
  std::vector<SparseVec> inter;
  for (const auto& r : big.rows) {
    if (r.lead() >= n) {
      SparseVec w;
      for (const auto& [i, c] : r.e) w.e.emplace_back(i - n, c);
      inter.push_back(std::move(w));
    }
  }
  return span(inter, n);
}

Subspace kernel(std::span<const SparseVec> matrix_rows, int domain_dim) {
  Subspace R = span(matrix_rows, domain_dim);
  std::vector<char> is_pivot(domain_dim, 0);
  for (const auto& [col, row] : R.pivots) is_pivot[col] = 1;
  std::vector<SparseVec> basis;
  for (int j = 0; j < domain_dim; ++j) {
    if (is_pivot[j]) continue;
    SparseVec v;
    for (const auto& [col, row] : R.pivots) {
      Rat c = svec_get(R.rows[row], j);
      if (!is_zero(c)) v.e.emplace_back(col, -c);
    }
    v.e.emplace_back(j, Rat(1));
    std::sort(v.e.begin(), v.e.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    basis.push_back(std::move(v));
  }
  Subspace K = span(basis, domain_dim);
  assert(K.rank() == domain_dim - R.rank());
  return K;
}

Subspace kernel(const std::vector<SparseVec>& matrix_rows, int domain_dim) {
  return kernel(std::span<const SparseVec>(matrix_rows.data(), matrix_rows.size()), domain_dim);
}

Subspace full_space(int ambient) {
  std::vector<SparseVec> units;
  units.reserve(ambient);
  for (int i = 0; i < ambient; ++i) units.push_back(svec_unit(i));
  return span_serial(units, ambient);
}

}  // namespace dertower
