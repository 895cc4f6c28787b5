#pragma once
#include <map>
#include <string>
#include <vector>

#include "dertower/assoc.hpp"
#include "dertower/subspace.hpp"

namespace dertower {

// A derivation of L[V,d], stored by its values on the generators and split by
// degree: an n x n rational matrix for the degree-0 (gl) part plus, per
// positive degree k, the n images of the generators (each homogeneous of
// degree k+1). Missing degrees are zero. Elements of UL have an empty gl part.
struct Derivation {
  int n = 0;
  std::vector<std::vector<Rat>> gl;          // n x n; empty means zero
  std::map<int, std::vector<LieElt>> parts;  // degree k >= 1 -> n images

  bool zero() const { return gl.empty() && parts.empty(); }
};

Derivation deriv_zero(int n);

// Builds a derivation from arbitrary generator images (split by degree;
// degree-1 image components become the gl part).
Derivation deriv_from_images(LyndonTable& T, int n, const std::vector<LieElt>& images);

// Full image of x_j (1-based), all degrees combined.
LieElt deriv_image(const LyndonTable& T, const Derivation& D, int j);

void deriv_normalize(Derivation& D);
bool deriv_equal(const Derivation& A, const Derivation& B);
void deriv_add_scaled(LyndonTable& T, Derivation& dst, const Rat& c, const Derivation& src);
Derivation deriv_scale(LyndonTable& T, const Derivation& D, const Rat& c);

// Leibniz evaluation, truncated at degree d.
LieElt deriv_apply(LyndonTable& T, const Derivation& D, const LieElt& a, int d);
// Leibniz action on an associative element.
AssocElt deriv_apply_assoc(LyndonTable& T, const Derivation& D, const AssocElt& h, int d);

Derivation deriv_bracket(LyndonTable& T, const Derivation& A, const Derivation& B, int d);

Derivation ad_inner(LyndonTable& T, const LieElt& f, int d);
Derivation AD(LyndonTable& T, const AssocElt& h, int d);
Derivation del(LyndonTable& T, int i, const LieElt& f);
Derivation gl_unit(int n, int p, int q);  // sends x_q to x_p
Derivation gl_identity(int n);
Derivation gl_act(LyndonTable& T, const Derivation& g, const Derivation& D, int d);

// Linearization: F(D)(x_i) = sum_k (x_k -> x_i)(D(x_k)).
Derivation F_linearize(LyndonTable& T, const Derivation& D, int d);

// Homogeneous degree; -1 if mixed, 0 for pure gl, -2 for zero.
int deriv_degree(const LyndonTable& T, const Derivation& D);
// Multidegree of a poly-homogeneous derivation (weight); empty if mixed.
std::vector<int> deriv_mdeg(const LyndonTable& T, const Derivation& D);

// Canonical vectorization of the degree-k component of UL: basis (i, w) with
// i a 0-based generator index (major) and w a degree-(k+1) Lyndon word.
int ul_dim(LyndonTable& T, int k);
SparseVec vectorize(LyndonTable& T, const Derivation& D, int k);
Derivation devectorize(LyndonTable& T, const SparseVec& v, int k);
Derivation ul_basis_deriv(LyndonTable& T, int k, int col);

std::string deriv_str(const LyndonTable& T, const Derivation& D);

// Cached action of gl matrix units on Lyndon basis words; shared by the
// module-level representation code.
class GlWordAction {
 public:
  explicit GlWordAction(LyndonTable& T) : T_(T) {}
  // e_{p,q} (x_q -> x_p) acting as a derivation on b_w, 1-based p,q.
  const LieElt& act(int p, int q, int gid);
  LieElt act_elt(int p, int q, const LieElt& a);

 private:
  LyndonTable& T_;
  std::map<std::tuple<int, int, int>, LieElt> cache_;
};

}  // namespace dertower
