#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "dertower/deriv.hpp"

namespace dertower {

// A finite-dimensional gl(V)-module with a distinguished weight basis: enough
// structure for weight splitting, invariants and isotypic decompositions.
class GlModule {
 public:
  virtual ~GlModule() = default;
  virtual int n() const = 0;
  virtual int dim() const = 0;
  virtual std::vector<int> weight(int col) const = 0;
  // Action of the matrix unit e_{p,q} (x_q -> x_p, 1-based) on basis vectors.
  virtual SparseVec act(int p, int q, int col) = 0;

  SparseVec act_vec(int p, int q, const SparseVec& v);
};

// The degree-k homogeneous component of UL over n letters, in the canonical
// (generator, Lyndon word) vectorization.
class ULComponent : public GlModule {
 public:
  ULComponent(LyndonTable& T, int k);
  int n() const override { return T_.n(); }
  int dim() const override { return dim_; }
  std::vector<int> weight(int col) const override;
  SparseVec act(int p, int q, int col) override;
  LyndonTable& table() { return T_; }
  int degree() const { return k_; }

 private:
  LyndonTable& T_;
  int k_, dim_, words_, base_;
  GlWordAction wact_;
  std::map<std::tuple<int, int, int>, SparseVec> cache_;
  std::mutex mtx_;
};

// The degree-m homogeneous component of the free Lie algebra.
class LieComponent : public GlModule {
 public:
  LieComponent(LyndonTable& T, int m);
  int n() const override { return T_.n(); }
  int dim() const override { return dim_; }
  std::vector<int> weight(int col) const override;
  SparseVec act(int p, int q, int col) override;

 private:
  LyndonTable& T_;
  int m_, dim_, base_;
  GlWordAction wact_;
  std::mutex mtx_;
};

using Weight = std::vector<int>;

// Partition label normalized modulo the determinant character: trailing
// component stripped to zero, the shift recorded as the twist.
struct IsotypicDecomposition {
  int n = 0;
  std::map<std::pair<std::vector<int>, int>, long> mult;  // (lambda, twist) -> m

  long total_dim() const;  // sum mult * weyl_dim
  // multiplicities aggregated over twists (sl-isomorphism classes)
  std::map<std::vector<int>, long> by_partition() const;
  bool operator==(const IsotypicDecomposition& o) const {
    return n == o.n && mult == o.mult;
  }
};

std::map<Weight, std::vector<int>> weight_cells(GlModule& M);
// Spec-level view: each weight cell as a coordinate subspace.
std::map<Weight, Subspace> weight_split(GlModule& M);

// Simple raising operator e_{i,i+1} applied to a vector, 1 <= i <= n-1.
SparseVec raise_op(GlModule& M, int i, const SparseVec& v);
SparseVec lower_op(GlModule& M, int i, const SparseVec& v);

// Maximal trivial sl-submodule: constant-weight vectors killed by the simple
// raising operators; the result is cross-checked against the lowering
// operators and an InternalInvariantViolation is thrown on mismatch.
Subspace sl_invariants(GlModule& M);
// Within a subspace S (must be weight graded and closed under the gl action).
Subspace sl_invariants_in(GlModule& M, const Subspace& S);

// sl-invariants that survive GL_n(Z): the common weight entry must be even.
Subspace gl_z_invariants(GlModule& M);

IsotypicDecomposition isotypic(GlModule& M);
IsotypicDecomposition isotypic_in(GlModule& M, const Subspace& S);

long hom_sl_dim(const IsotypicDecomposition& A, const IsotypicDecomposition& B);

Int weyl_dim(const std::vector<int>& lambda, int nn);

// Maximal submodule with no trivial summand: the span of the images of the
// sl generators.
Subspace sl_plus_part(GlModule& M);

struct InternalInvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dertower
