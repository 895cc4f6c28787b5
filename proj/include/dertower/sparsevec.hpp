#pragma once
#include <algorithm>
#include <utility>
#include <vector>

#include "dertower/rational.hpp"

namespace dertower {

// Sparse rational vector: entries sorted by column index, no stored zeros.
struct SparseVec {
  std::vector<std::pair<int, Rat>> e;

  bool empty() const { return e.empty(); }
  int nnz() const { return static_cast<int>(e.size()); }
  int lead() const { return e.front().first; }  // requires !empty()
  const Rat& lead_coeff() const { return e.front().second; }

  void push(int idx, Rat c) {
    if (!is_zero(c)) e.emplace_back(idx, std::move(c));
  }

  bool operator==(const SparseVec& o) const { return e == o.e; }
};

inline SparseVec svec_unit(int idx) {
  SparseVec v;
  v.e.emplace_back(idx, Rat(1));
  return v;
}

inline Rat svec_get(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.e.begin(), v.e.end(), idx,
                             [](const auto& p, int i) { return p.first < i; });
  if (it != v.e.end() && it->first == idx) return it->second;
  return Rat(0);
}

inline void svec_scale(SparseVec& v, const Rat& c) {
  if (is_zero(c)) {
    v.e.clear();
    return;
  }
  for (auto& [i, x] : v.e) x *= c;
}

// dst := a*dst + b*src (merged in one pass)
inline void svec_combine(SparseVec& dst, const Rat& a, const Rat& b, const SparseVec& src) {
  SparseVec out;
  out.e.reserve(dst.e.size() + src.e.size());
  std::size_t i = 0, j = 0;
  while (i < dst.e.size() && j < src.e.size()) {
    if (dst.e[i].first < src.e[j].first) {
      out.push(dst.e[i].first, a * dst.e[i].second);
      ++i;
    } else if (dst.e[i].first > src.e[j].first) {
      out.push(src.e[j].first, b * src.e[j].second);
      ++j;
    } else {
      out.push(dst.e[i].first, a * dst.e[i].second + b * src.e[j].second);
      ++i, ++j;
    }
  }
  for (; i < dst.e.size(); ++i) out.push(dst.e[i].first, a * dst.e[i].second);
  for (; j < src.e.size(); ++j) out.push(src.e[j].first, b * src.e[j].second);
  dst = std::move(out);
}

// dst += c*src
inline void svec_axpy(SparseVec& dst, const Rat& c, const SparseVec& src) {
  if (is_zero(c) || src.empty()) return;
  svec_combine(dst, Rat(1), c, src);
}

inline void svec_add(SparseVec& dst, const SparseVec& src) { svec_axpy(dst, Rat(1), src); }

inline SparseVec svec_sub(const SparseVec& a, const SparseVec& b) {
  SparseVec r = a;
  svec_axpy(r, Rat(-1), b);
  return r;
}

// clear denominators and strip integer content; sign normalized so the
// leading coefficient is positive. Returns v unchanged if zero.
inline void svec_primitive(SparseVec& v) {
  if (v.empty()) return;
  Int den_lcm = 1;
  for (const auto& [i, c] : v.e) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Int g = 0;
  std::vector<Int> nums(v.e.size());
  for (std::size_t k = 0; k < v.e.size(); ++k) {
    nums[k] = v.e[k].second.get_num() * (den_lcm / v.e[k].second.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nums[k].get_mpz_t());
  }
  if (sgn(nums[0]) < 0) g = -g;
  for (std::size_t k = 0; k < v.e.size(); ++k) v.e[k].second = Rat(nums[k] / g);
}

inline Rat svec_dot(const SparseVec& a, const SparseVec& b) {
  Rat dot(0);
  std::size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first < b.e[j].first)
      ++i;
    else if (a.e[i].first > b.e[j].first)
      ++j;
    else
      dot += a.e[i++].second * b.e[j++].second;
  }
  return dot;
}

inline std::size_t svec_max_bits(const SparseVec& v) {
  std::size_t m = 0;
  for (const auto& [i, c] : v.e) m = std::max(m, rat_bits(c));
  return m;
}

}  // namespace dertower
