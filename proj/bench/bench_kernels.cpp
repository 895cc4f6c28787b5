// Compares the OpenMP kernels with their serial reference implementations on
// representative workloads and checks that both produce identical results.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include "dertower/analysis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dertower;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<SparseVec> random_rows(int rows, int dim, int nnz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SparseVec> out;
  out.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    SparseVec v;
    for (int t = 0; t < nnz; ++t) {
      long c = static_cast<long>(rng() % 19) - 9;
      if (c) v.e.emplace_back(static_cast<int>(rng() % dim), rat(c));
    }
    std::sort(v.e.begin(), v.e.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    v.e.erase(std::unique(v.e.begin(), v.e.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              v.e.end());
    out.push_back(std::move(v));
  }
  return out;
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
            << (parallel > 0 ? serial / parallel : 0.0) << "x, results "
            << (same ? "identical" : "DIFFER") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 0;
  if (argc > 1) jobs = std::atoi(argv[1]);
  set_jobs(jobs);
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif

  {  // echelon of a random sparse rational matrix
    auto rows = random_rows(3000, 1200, 24, 42);
    auto t0 = Clock::now();
    Subspace a = span_serial(rows, 1200);
    double ts = seconds(t0);
    t0 = Clock::now();
    Subspace b = span(rows, 1200);
    double tp = seconds(t0);
    report("sparse echelon 3000x1200", ts, tp, a == b);
  }

  {  // commutator component span: batched bracket generation + echelon
    LyndonTable T(3);
    const int m = 6;
    auto build = [&](bool batched) {
      std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;
      for (int i = 1; 2 * i <= m; ++i) {
        int j = m - i;
        for (int a = 0; a < ul_dim(T, i); ++a)
          for (int b = (i == j ? a + 1 : 0); b < ul_dim(T, j); ++b)
            pairs.push_back({{i, a}, {j, b}});
      }
      EchelonBuilder eb(ul_dim(T, m));
      if (batched) {
        constexpr int kChunk = 512;
        for (std::size_t lo = 0; lo < pairs.size(); lo += kChunk) {
          std::size_t hi = std::min(pairs.size(), lo + kChunk);
          std::vector<SparseVec> batch(hi - lo);
#pragma omp parallel for schedule(dynamic)
          for (int t = 0; t < static_cast<int>(hi - lo); ++t) {
            auto [pa, pb] = pairs[lo + t];
            Derivation A = ul_basis_deriv(T, pa.first, pa.second);
            Derivation B = ul_basis_deriv(T, pb.first, pb.second);
            batch[t] = vectorize(T, deriv_bracket(T, A, B, kUnbounded), m);
          }
          eb.insert_batch(std::move(batch));
        }
      } else {
        for (const auto& [pa, pb] : pairs) {
          Derivation A = ul_basis_deriv(T, pa.first, pa.second);
          Derivation B = ul_basis_deriv(T, pb.first, pb.second);
          eb.insert(vectorize(T, deriv_bracket(T, A, B, kUnbounded), m));
        }
      }
      return eb.to_subspace();
    };
    auto t0 = Clock::now();
    Subspace a = build(false);
    double ts = seconds(t0);
    t0 = Clock::now();
    Subspace b = build(true);
    double tp = seconds(t0);
    report("commutator span UL(3)^(6)", ts, tp, a == b);
  }

  {  // invariant scan (raising-operator kernels over weight cells)
    LyndonTable T(4);
    auto run = [&](int threads) {
      set_jobs(threads);
      auto t0 = Clock::now();
      ULComponent M(T, 6);
      Subspace inv = sl_invariants(M);
      double t = seconds(t0);
      return std::make_pair(t, inv);
    };
    auto [ts, a] = run(1);
    auto [tp, b] = run(jobs > 0 ? jobs : 0);
    report("sl-invariants UL(4)^(6)", ts, tp, a == b);
  }
  return 0;
}
