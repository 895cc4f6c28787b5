#include "dertower/lie.hpp"

#include <stdexcept>

namespace dertower {

LieElt lie_zero() { return {}; }

LieElt lie_gen(const LyndonTable& T, int i) {
  if (i < 1 || i > T.n()) throw std::invalid_argument("lie_gen: generator index out of range");
  LieElt a;
  a.t[i - 1] = Rat(1);
  return a;
}

LieElt lie_basis(int gid) {
  LieElt a;
  a.t[gid] = Rat(1);
  return a;
}

void lie_add_scaled(LieElt& dst, const Rat& c, const LieElt& src) {
  if (is_zero(c)) return;
  for (const auto& [g, x] : src.t) {
    Rat& slot = dst.t[g];
    slot += c * x;
    if (is_zero(slot)) dst.t.erase(g);
  }
}

LieElt lie_add(const LieElt& a, const LieElt& b) {
  LieElt r = a;
  lie_add_scaled(r, Rat(1), b);
  return r;
}

LieElt lie_sub(const LieElt& a, const LieElt& b) {
  LieElt r = a;
  lie_add_scaled(r, Rat(-1), b);
  return r;
}

LieElt lie_scale(const LieElt& a, const Rat& c) {
  LieElt r;
  if (is_zero(c)) return r;
  for (const auto& [g, x] : a.t) r.t[g] = c * x;
  return r;
}

LieElt lie_truncate(LyndonTable& T, const LieElt& a, int d) {
  if (d == kUnbounded) return a;
  LieElt r;
  for (const auto& [g, x] : a.t)
    if (T.degree_of(g) <= d) r.t[g] = x;
  return r;
}

LieElt lie_bracket(LyndonTable& T, const LieElt& a, const LieElt& b, int d) {
  LieElt r;
  for (const auto& [ga, ca] : a.t) {
    int da = T.degree_of(ga);
    for (const auto& [gb, cb] : b.t) {
      if (d != kUnbounded && da + T.degree_of(gb) > d) continue;
      T.ensure_degree(da + T.degree_of(gb));
      const auto& e = T.pair_bracket(ga, gb);
      Rat c = ca * cb;
      for (const auto& [g, x] : e) {
        Rat& slot = r.t[g];
        slot += c * x;
        if (is_zero(slot)) r.t.erase(g);
      }
    }
  }
  return r;
}

LieElt lie_ad_pow(LyndonTable& T, const LieElt& x, int k, const LieElt& y, int d) {
  LieElt r = y;
  for (int i = 0; i < k; ++i) r = lie_bracket(T, x, r, d);
  return r;
}

int lie_degree(const LyndonTable& T, const LieElt& a) {
  int deg = 0;
  for (const auto& [g, c] : a.t) {
    int dg = T.degree_of(g);
    if (deg == 0)
      deg = dg;
    else if (deg != dg)
      return -1;
  }
  return deg;
}

bool lie_homogeneous(const LyndonTable& T, const LieElt& a) { return lie_degree(T, a) >= 0; }

std::vector<int> lie_mdeg(const LyndonTable& T, const LieElt& a) {
  std::vector<int> md;
  for (const auto& [g, c] : a.t) {
    std::vector<int> m = word_mdeg(T.word(g), T.n());
    if (md.empty())
      md = m;
    else if (md != m)
      return {};
  }
  return md;
}

std::map<int, LieElt> lie_degree_split(const LyndonTable& T, const LieElt& a) {
  std::map<int, LieElt> out;
  for (const auto& [g, c] : a.t) out[T.degree_of(g)].t[g] = c;
  return out;
}

std::string lie_str(const LyndonTable& T, const LieElt& a) {
  if (a.zero()) return "0";
  std::string s;
  for (const auto& [g, c] : a.t) {
    if (!s.empty()) s += " + ";
    s += rat_str(c) + "*(" + word_str(T.word(g)) + ")";
  }
  return s;
}

}  // namespace dertower
