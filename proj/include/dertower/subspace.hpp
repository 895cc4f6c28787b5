#pragma once
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "dertower/sparsevec.hpp"

namespace dertower {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Row space in reduced row echelon form. Rows are sorted by pivot column,
// every pivot entry is 1 and pivot columns vanish in all other rows, so two
// equal subspaces compare equal entry for entry (RREF is unique).
struct Subspace {
  int ambient = 0;
  std::vector<SparseVec> rows;
  std::map<int, int> pivots;  // pivot column -> row index

  int rank() const { return static_cast<int>(rows.size()); }
  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && rows == o.rows;
  }
};

// Fraction-free forward echelon accumulator. Rows are kept primitive-integer
// and only forward-reduced (echelon, not RREF), which keeps coefficient
// growth down while supporting rank and membership queries. Convert with
// to_subspace() when the canonical form is needed.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(int ambient) : ambient_(ambient) {}

  int ambient() const { return ambient_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v against the current rows; the returned residual is zero iff v
  // lies in the current span.
  SparseVec residual(SparseVec v) const;
  bool member(const SparseVec& v) const { return residual(v).empty(); }

  // Inserts v if independent. Returns true when the rank grew.
  bool insert(SparseVec v);

  // Reduces a batch in parallel against the current rows, then inserts the
  // survivors serially. Same final span as inserting one by one.
  int insert_batch(std::vector<SparseVec> batch);

  Subspace to_subspace() const;

 private:
  int ambient_;
  std::vector<SparseVec> rows_;     // sorted by lead column
  std::map<int, int> lead_to_row_;  // lead column -> index into rows_
};

Subspace span(std::span<const SparseVec> vectors, int ambient);
Subspace span(const std::vector<SparseVec>& vectors, int ambient);
// Reference implementation: plain sequential insertion into an RREF. Always
// equal to span(); kept as the oracle for the parallel path.
Subspace span_serial(std::span<const SparseVec> vectors, int ambient);
Subspace span_serial(const std::vector<SparseVec>& vectors, int ambient);

// Residual of v after elimination against S (zero iff contained).
SparseVec reduce(const Subspace& S, SparseVec v);
bool contains(const Subspace& S, const SparseVec& v);
bool subspace_leq(const Subspace& small, const Subspace& big);

// Representatives completing small inside big; requires small <= big.
std::vector<SparseVec> quotient_reps(const Subspace& big, const Subspace& small);

Subspace intersect(const Subspace& a, const Subspace& b);

// Null space of the matrix with the given rows acting on Q^domain_dim.
Subspace kernel(std::span<const SparseVec> matrix_rows, int domain_dim);
Subspace kernel(const std::vector<SparseVec>& matrix_rows, int domain_dim);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace full_space(int ambient);

}  // namespace dertower
