#include "dertower/assoc.hpp"

#include <stdexcept>
#include <unordered_map>

namespace dertower {

AssocElt assoc_zero() { return {}; }

AssocElt assoc_one() {
  AssocElt a;
  a.t[Word{}] = Rat(1);
  return a;
}

AssocElt assoc_gen(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("assoc_gen: generator index out of range");
  AssocElt a;
  a.t[Word{static_cast<std::uint8_t>(i)}] = Rat(1);
  return a;
}

AssocElt assoc_word(const Word& w) {
  AssocElt a;
  a.t[w] = Rat(1);
  return a;
}

void assoc_add_scaled(AssocElt& dst, const Rat& c, const AssocElt& src) {
  if (is_zero(c)) return;
  for (const auto& [w, x] : src.t) {
    Rat& slot = dst.t[w];
    slot += c * x;
    if (is_zero(slot)) dst.t.erase(w);
  }
}

AssocElt assoc_add(const AssocElt& a, const AssocElt& b) {
  AssocElt r = a;
  assoc_add_scaled(r, Rat(1), b);
  return r;
}

AssocElt assoc_sub(const AssocElt& a, const AssocElt& b) {
  AssocElt r = a;
  assoc_add_scaled(r, Rat(-1), b);
  return r;
}

AssocElt assoc_scale(const AssocElt& a, const Rat& c) {
  AssocElt r;
  if (is_zero(c)) return r;
  for (const auto& [w, x] : a.t) r.t[w] = c * x;
  return r;
}

bool assoc_has_constant_term(const AssocElt& a) { return a.t.count(Word{}) > 0; }

int assoc_degree(const AssocElt& a) {
  int deg = -2;
  for (const auto& [w, c] : a.t) {
    int d = static_cast<int>(w.size());
    if (deg == -2)
      deg = d;
    else if (deg != d)
      return -1;
  }
  return deg == -2 ? 0 : deg;
}

AssocElt product(const AssocElt& a, const AssocElt& b, int d) {
  AssocElt r;
  for (const auto& [wa, ca] : a.t) {
    for (const auto& [wb, cb] : b.t) {
      if (d != kUnbounded && static_cast<int>(wa.size() + wb.size()) > d) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      Rat& slot = r.t[w];
      slot += ca * cb;
      if (is_zero(slot)) r.t.erase(w);
    }
  }
  return r;
}

AssocElt assoc_pow(const AssocElt& a, int k, int d) {
  AssocElt r = assoc_one();
  for (int i = 0; i < k; ++i) r = product(r, a, d);
  return r;
}

AssocElt assoc_commutator(const AssocElt& a, const AssocElt& b, int d) {
  return assoc_sub(product(a, b, d), product(b, a, d));
}

LieElt op_substitute(LyndonTable& T, const AssocElt& h, const LieElt& arg, int d) {
  if (assoc_has_constant_term(h))
    throw std::invalid_argument("op_substitute: operand has a constant term");
  LieElt out;
  for (const auto& [w, c] : h.t) {
    LieElt cur = arg;
    for (auto it = w.rbegin(); it != w.rend() && !cur.zero(); ++it)
      cur = lie_bracket(T, lie_gen(T, *it), cur, d);
    lie_add_scaled(out, c, cur);
  }
  return out;
}

AssocElt embed_assoc(LyndonTable& T, const LieElt& a) {
  std::unordered_map<int, AssocElt> memo;
  auto embed_basis = [&](auto&& self, int g) -> const AssocElt& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    AssocElt e;
    if (T.degree_of(g) == 1) {
      e = assoc_word(T.word(g));
    } else {
      auto [u, v] = T.std_factor(g);
      e = assoc_commutator(self(self, u), self(self, v), kUnbounded);
    }
    return memo.emplace(g, std::move(e)).first->second;
  };
  AssocElt out;
  for (const auto& [g, c] : a.t) assoc_add_scaled(out, c, embed_basis(embed_basis, g));
  return out;
}

std::string assoc_str(const AssocElt& a) {
  if (a.zero()) return "0";
  std::string s;
  for (const auto& [w, c] : a.t) {
    if (!s.empty()) s += " + ";
    s += rat_str(c) + "*" + (w.empty() ? std::string("1") : word_str(w));
  }
  return s;
}

}  // namespace dertower
