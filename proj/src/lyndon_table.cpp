#include "dertower/lyndon_table.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <stdexcept>

namespace dertower {

const LyndonTable::Expansion LyndonTable::kEmpty{};

LyndonTable::LyndonTable(int n) : n_(n) {
  if (n < 1 || n > 255) throw std::invalid_argument("LyndonTable: bad alphabet size");
  by_deg_.resize(kMaxDegree + 1);
  factors_.resize(kMaxDegree + 1);
  base_.resize(kMaxDegree + 2, 0);
  ensure_degree(1);
}

void LyndonTable::ensure_degree(int m) {
  if (m > kMaxDegree) throw std::invalid_argument("LyndonTable: degree above hard cap");
  if (m <= generated_.load(std::memory_order_acquire)) return;
  std::unique_lock lk(mtx_);
  for (int deg = generated_.load(std::memory_order_relaxed) + 1; deg <= m; ++deg) {
    by_deg_[deg] = lyndon_words(n_, deg);
    base_[deg + 1] = base_[deg] + static_cast<int>(by_deg_[deg].size());
    auto& fac = factors_[deg];
    fac.resize(by_deg_[deg].size(), {-1, -1});
    if (deg >= 2) {
      for (std::size_t r = 0; r < by_deg_[deg].size(); ++r) {
        const Word& w = by_deg_[deg][r];
        int p = std_factor_pos(w);
        Word u(w.begin(), w.begin() + p), v(w.begin() + p, w.end());
        const auto& du = by_deg_[u.size()];
        const auto& dv = by_deg_[v.size()];
        auto iu = std::lower_bound(du.begin(), du.end(), u, word_less);
        auto iv = std::lower_bound(dv.begin(), dv.end(), v, word_less);
        assert(iu != du.end() && *iu == u && iv != dv.end() && *iv == v);
        fac[r] = {base_[u.size()] + static_cast<int>(iu - du.begin()),
                  base_[v.size()] + static_cast<int>(iv - dv.begin())};
      }
    }
    generated_.store(deg, std::memory_order_release);
  }
}

int LyndonTable::count(int m) {
  ensure_degree(m);
  return static_cast<int>(by_deg_[m].size());
}

int LyndonTable::gid_base(int m) {
  ensure_degree(m);
  return base_[m];
}

int LyndonTable::degree_of(int g) const {
  int G = generated_.load(std::memory_order_acquire);
  auto it = std::upper_bound(base_.begin() + 1, base_.begin() + G + 2, g);
  int m = static_cast<int>(it - base_.begin()) - 1;
  if (g < 0 || m < 1 || m > G) throw std::out_of_range("LyndonTable::degree_of");
  return m;
}

int LyndonTable::rank_of(int g) const { return g - base_[degree_of(g)]; }

const Word& LyndonTable::word(int g) const {
  int m = degree_of(g);
  return by_deg_[m][g - base_[m]];
}

int LyndonTable::find(const Word& w) {
  int m = static_cast<int>(w.size());
  if (m == 0) return -1;
  ensure_degree(m);
  const auto& d = by_deg_[m];
  auto it = std::lower_bound(d.begin(), d.end(), w, word_less);
  if (it == d.end() || *it != w) return -1;
  return base_[m] + static_cast<int>(it - d.begin());
}

std::pair<int, int> LyndonTable::std_factor(int g) const {
  int m = degree_of(g);
  if (m < 2) throw std::invalid_argument("std_factor: letters have no factorization");
  return factors_[m][g - base_[m]];
}

const LyndonTable::Expansion& LyndonTable::pair_bracket(int u, int v) {
  if (u == v) return kEmpty;
  {
    std::shared_lock lk(mtx_);
    auto it = memo_.find({u, v});
    if (it != memo_.end()) return it->second;
  }
  Expansion e;
  if (word_less(word(v), word(u))) {
    e = pair_bracket(v, u);  // computed via the canonical orientation
    for (auto& [g, c] : e) c = -c;
  } else {
    e = compute_pair(u, v);
  }
  std::unique_lock lk(mtx_);
  auto [it, inserted] = memo_.try_emplace({u, v}, std::move(e));
  return it->second;
}

// acc += c * [b_a, b_b]
void LyndonTable::accumulate(std::map<int, Rat>& acc, const Rat& c, int a, int b) {
  const Expansion& e = pair_bracket(a, b);
  for (const auto& [g, x] : e) {
    Rat& slot = acc[g];
    slot += c * x;
    if (is_zero(slot)) acc.erase(g);
  }
}

LyndonTable::Expansion LyndonTable::compute_pair(int u, int v) {
  // Precondition: word(u) <lex word(v); then word(u)word(v) is Lyndon.
  const Word& wu = word(u);
  const Word& wv = word(v);
  Word w = wu;
  w.insert(w.end(), wv.begin(), wv.end());
  int g = find(w);
  assert(g >= 0);
  // (u, v) is the standard factorization of uv iff u is a letter or the right
  // standard factor u2 of u satisfies u2 >= v.
  if (wu.size() == 1) return {{g, Rat(1)}};
  auto [u1, u2] = std_factor(u);
  if (!word_less(word(u2), wv)) return {{g, Rat(1)}};
  // Jacobi: [b_u, b_v] = [[b_u1, b_v], b_u2] + [b_u1, [b_u2, b_v]]
  std::map<int, Rat> acc;
  for (const auto& [t, c] : pair_bracket(u1, v)) accumulate(acc, c, t, u2);
  for (const auto& [t, c] : pair_bracket(u2, v)) accumulate(acc, c, u1, t);
  Expansion out(acc.begin(), acc.end());
  return out;
}

}  // namespace dertower
