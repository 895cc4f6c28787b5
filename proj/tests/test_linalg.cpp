#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dertower/analysis.hpp"
#include "oracles.hpp"

using namespace dertower;

namespace {
std::vector<SparseVec> random_vecs(std::mt19937_64& rng, int count, int dim, int maxnnz) {
  std::vector<SparseVec> out;
  for (int i = 0; i < count; ++i) {
    std::map<int, Rat> m;
    int nnz = 1 + static_cast<int>(rng() % maxnnz);
    for (int t = 0; t < nnz; ++t) {
      long c = static_cast<long>(rng() % 11) - 5;
      if (c) m[static_cast<int>(rng() % dim)] += rat(c);
    }
    SparseVec v;
    for (auto& [idx, c] : m)
      if (!is_zero(c)) v.e.emplace_back(idx, c);
    out.push_back(std::move(v));
  }
  return out;
}
}  // namespace

TEST_CASE("span basics") {
  CHECK(span(std::vector<SparseVec>{}, 5).rank() == 0);
  std::vector<SparseVec> v{svec_unit(0), svec_unit(0)};
  svec_axpy(v[1], Rat(1), svec_unit(1));  // e0, e0+e1
  Subspace S = span(v, 2);
  CHECK(S.rank() == 2);
  CHECK(S == full_space(2));
  // degenerate ambient
  CHECK(span(std::vector<SparseVec>{}, 0).rank() == 0);
}

TEST_CASE("span is canonical and idempotent") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 30; ++t) {
    auto vecs = random_vecs(rng, 8, 10, 5);
    Subspace S = span(vecs, 10);
    CHECK(span(S.rows, 10) == S);
    CHECK(span_serial(vecs, 10) == S);
    CHECK(S.rank() == oracle::dense_rank(vecs, 10));
  }
}

TEST_CASE("span of UL(2,3) degree-1 brackets matches the dense oracle") {
  LyndonTable T(2);
  std::vector<SparseVec> brs;
  for (int a = 0; a < ul_dim(T, 1); ++a)
    for (int b = a + 1; b < ul_dim(T, 1); ++b) {
      Derivation A = ul_basis_deriv(T, 1, a), B = ul_basis_deriv(T, 1, b);
      brs.push_back(vectorize(T, deriv_bracket(T, A, B, 3), 2));
    }
  CHECK(span(brs, ul_dim(T, 2)).rank() == oracle::dense_rank(brs, ul_dim(T, 2)));
}

TEST_CASE("contains") {
  CHECK(contains(full_space(4), svec_unit(2)));
  CHECK_FALSE(contains(Subspace{3, {}, {}}, svec_unit(0)));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto vecs = random_vecs(rng, 5, 8, 4);
    Subspace S = span(vecs, 8);
    auto probe = random_vecs(rng, 3, 8, 4);
    for (const auto& v : probe) {
      bool lib = contains(S, v);
      bool ora = oracle::dense_member(vecs, v, 8);
      CHECK(lib == ora);
      // contains(S, v) iff rank(span(rows + v)) == rank(S)
      std::vector<SparseVec> ext = S.rows;
      ext.push_back(v);
      CHECK(lib == (span(ext, 8).rank() == S.rank()));
    }
  }
  CHECK_THROWS_AS(contains(full_space(3), svec_unit(5)), DimensionMismatch);
}

TEST_CASE("vectorized commutator component of UL(2,5) misses AD([x1,x2]^2)") {
  LyndonTable T(2);
  Subspace comm = commutator_component(T, 2, 5, 4, nullptr);
  AssocElt c = assoc_commutator(assoc_gen(2, 1), assoc_gen(2, 2), kUnbounded);
  Derivation W = AD(T, product(c, c, kUnbounded), 5);
  CHECK_FALSE(contains(comm, vectorize(T, W, 4)));
}

TEST_CASE("quotient representatives") {
  Subspace F = full_space(2);
  CHECK(quotient_reps(F, F).empty());
  CHECK(quotient_reps(F, Subspace{2, {}, {}}).size() == 2);

  LyndonTable T(3);
  Subspace comm = commutator_component(T, 3, 3, 2, nullptr);
  Subspace full = full_space(ul_dim(T, 2));
  auto reps = quotient_reps(full, comm);
  CHECK(static_cast<int>(reps.size()) == full.rank() - comm.rank());
  // deterministic
  CHECK(reps == quotient_reps(full, comm));
  // containment violation
  Subspace line = span(std::vector<SparseVec>{svec_unit(0)}, 2);
  Subspace other = span(std::vector<SparseVec>{svec_unit(1)}, 2);
  CHECK_THROWS_AS(quotient_reps(line, other), std::invalid_argument);
}

TEST_CASE("intersection") {
  std::mt19937_64 rng(99);
  Subspace F = full_space(5);
  auto vecs = random_vecs(rng, 3, 5, 3);
  Subspace S = span(vecs, 5);
  CHECK(intersect(S, F) == S);
  Subspace e0 = span(std::vector<SparseVec>{svec_unit(0)}, 2);
  Subspace e1 = span(std::vector<SparseVec>{svec_unit(1)}, 2);
  CHECK(intersect(e0, e1).rank() == 0);

  for (int t = 0; t < 20; ++t) {
    auto va = random_vecs(rng, 3, 6, 4);
    auto vb = random_vecs(rng, 3, 6, 4);
    Subspace A = span(va, 6), B = span(vb, 6);
    Subspace I = intersect(A, B);
    // double containment
    CHECK(subspace_leq(I, A));
    CHECK(subspace_leq(I, B));
    // equality with the joint-kernel oracle
    auto ora = oracle::dense_intersection(A.rows, B.rows, 6);
    CHECK(span(ora, 6) == I);
    // modular rank identity
    CHECK(sum(A, B).rank() + I.rank() == A.rank() + B.rank());
  }
  CHECK_THROWS_AS(intersect(full_space(2), full_space(3)), DimensionMismatch);
}

TEST_CASE("kernel") {
  CHECK(kernel(std::vector<SparseVec>{}, 4) == full_space(4));
  std::vector<SparseVec> idrows;
  for (int i = 0; i < 3; ++i) idrows.push_back(svec_unit(i));
  CHECK(kernel(idrows, 3).rank() == 0);

  std::mt19937_64 rng(31337);
  for (int t = 0; t < 15; ++t) {
    auto rows = random_vecs(rng, 8, 12, 6);
    Subspace K = kernel(rows, 12);
    CHECK(K.rank() == 12 - oracle::dense_rank(rows, 12));
    for (const auto& kv : K.rows)
      for (const auto& r : rows) CHECK(is_zero(svec_dot(r, kv)));
  }
}

TEST_CASE("parallel batch insertion equals serial insertion") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 10; ++t) {
    auto vecs = random_vecs(rng, 600, 64, 6);
    CHECK(span(vecs, 64) == span_serial(vecs, 64));
  }
}

TEST_CASE("exactness: no rounding anywhere") {
  // 1/3 + 1/3 + 1/3 must be exactly 1
  SparseVec v;
  v.e.emplace_back(0, rat(1, 3));
  SparseVec s;
  for (int i = 0; i < 3; ++i) svec_axpy(s, Rat(1), v);
  CHECK(svec_get(s, 0) == Rat(1));
  // large pivots reduce exactly
  std::vector<SparseVec> rows;
  SparseVec big;
  big.e.emplace_back(0, rat(1000000007));
  big.e.emplace_back(1, rat(998244353));
  rows.push_back(big);
  Subspace S = span(rows, 2);
  SparseVec probe = big;
  svec_scale(probe, rat(123456789, 1000003));
  CHECK(contains(S, probe));
}
