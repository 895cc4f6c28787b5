#include "dertower/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace dertower {

bool word_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_lyndon(const Word& w) {
  const int m = static_cast<int>(w.size());
  if (m == 0) return false;
  if (m == 1) return true;
  // strictly smaller than all proper rotations
  for (int s = 1; s < m; ++s) {
    for (int i = 0; i < m; ++i) {
      std::uint8_t rot = w[(s + i) % m];
      if (w[i] < rot) break;
      if (w[i] > rot) return false;
      if (i == m - 1) return false;  // equal rotation: not primitive
    }
  }
  return true;
}

std::vector<Word> lyndon_words(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("lyndon_words: need n>=1, m>=1");
  std::vector<Word> out;
  // Duval: enumerate Lyndon words of length <= m in lex order, keep length m.
  Word w{1};
  while (true) {
    if (static_cast<int>(w.size()) == m) out.push_back(w);
    // extend periodically to length m, then increment
    Word t = w;
    while (static_cast<int>(t.size()) < m) t.push_back(t[t.size() % w.size()]);
    while (!t.empty() && t.back() == n) t.pop_back();
    if (t.empty()) break;
    t.back()++;
    w = std::move(t);
  }
  return out;
}

namespace {
int moebius(int k) {
  int result = 1;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      k /= p;
      if (k % p == 0) return 0;
      result = -result;
    }
  }
  if (k > 1) result = -result;
  return result;
}
}  // namespace

Int witt_dim(int n, int m) {
  Int total = 0;
  for (int j = 1; j <= m; ++j) {
    if (m % j != 0) continue;
    int mu = moebius(j);
    if (mu == 0) continue;
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(m / j));
    total += mu * p;
  }
  return total / m;
}

std::vector<int> word_mdeg(const Word& w, int n) {
  std::vector<int> md(n, 0);
  for (auto c : w) md[c - 1]++;
  return md;
}

std::string word_str(const Word& w) {
  std::string s;
  for (auto c : w) {
    s += 'x';
    s += std::to_string(static_cast<int>(c));
  }
  return s;
}

Word word_parse(const std::string& s) {
  Word w;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == 'x') ++i;
    if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("word_parse: bad word '" + s + "'");
    int v = 0;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
    if (v < 1 || v > 255) throw std::invalid_argument("word_parse: letter out of range");
    w.push_back(static_cast<std::uint8_t>(v));
  }
  return w;
}

int std_factor_pos(const Word& w) {
  const int m = static_cast<int>(w.size());
  int best = 1;
  for (int p = 2; p < m; ++p) {
    // compare suffix at p with suffix at best
    bool less = std::lexicographical_compare(w.begin() + p, w.end(), w.begin() + best, w.end());
    if (less) best = p;
  }
  return best;
}

}  // namespace dertower
