#pragma once
#include <map>
#include <string>
#include <vector>

#include "dertower/lyndon_table.hpp"

namespace dertower {

// Element of the free Lie algebra L[V] (or its nilpotent quotient L[V,d],
// realized by truncation): a rational combination of Lyndon basis elements,
// keyed by gid in a LyndonTable.
struct LieElt {
  std::map<int, Rat> t;

  bool zero() const { return t.empty(); }
  bool operator==(const LieElt& o) const { return t == o.t; }
};

inline constexpr int kUnbounded = 0;  // no nilpotency truncation

LieElt lie_zero();
LieElt lie_gen(const LyndonTable& T, int i);  // x_i, 1-based
LieElt lie_basis(int gid);

void lie_add_scaled(LieElt& dst, const Rat& c, const LieElt& src);
LieElt lie_add(const LieElt& a, const LieElt& b);
LieElt lie_sub(const LieElt& a, const LieElt& b);
LieElt lie_scale(const LieElt& a, const Rat& c);
LieElt lie_truncate(LyndonTable& T, const LieElt& a, int d);

// [a, b], dropping terms of degree > d (d = kUnbounded keeps everything).
LieElt lie_bracket(LyndonTable& T, const LieElt& a, const LieElt& b, int d);

// ad(x)^k (y)
LieElt lie_ad_pow(LyndonTable& T, const LieElt& x, int k, const LieElt& y, int d);

// -1 when not homogeneous (zero counts as homogeneous of any degree).
int lie_degree(const LyndonTable& T, const LieElt& a);
bool lie_homogeneous(const LyndonTable& T, const LieElt& a);
// empty when not poly-homogeneous
std::vector<int> lie_mdeg(const LyndonTable& T, const LieElt& a);
std::map<int, LieElt> lie_degree_split(const LyndonTable& T, const LieElt& a);

std::string lie_str(const LyndonTable& T, const LieElt& a);

}  // namespace dertower
