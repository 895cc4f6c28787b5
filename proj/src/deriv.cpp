#include "dertower/deriv.hpp"

#include <stdexcept>
#include <unordered_map>

namespace dertower {

namespace {

bool gl_is_zero(const std::vector<std::vector<Rat>>& gl) {
  for (const auto& row : gl)
    for (const auto& c : row)
      if (!is_zero(c)) return false;
  return true;
}

std::vector<std::vector<Rat>> gl_zero(int n) {
  return std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0)));
}

}  // namespace

Derivation deriv_zero(int n) {
  Derivation D;
  D.n = n;
  return D;
}

void deriv_normalize(Derivation& D) {
  if (!D.gl.empty() && gl_is_zero(D.gl)) D.gl.clear();
  for (auto it = D.parts.begin(); it != D.parts.end();) {
    bool all_zero = true;
    for (const auto& f : it->second)
      if (!f.zero()) all_zero = false;
    it = all_zero ? D.parts.erase(it) : std::next(it);
  }
}

Derivation deriv_from_images(LyndonTable& T, int n, const std::vector<LieElt>& images) {
  if (static_cast<int>(images.size()) != n)
    throw std::invalid_argument("deriv_from_images: need one image per generator");
  Derivation D = deriv_zero(n);
  for (int j = 0; j < n; ++j) {
    for (const auto& [g, c] : images[j].t) {
      int deg = T.degree_of(g);
      if (deg == 1) {
        if (D.gl.empty()) D.gl = gl_zero(n);
        D.gl[g][j] = c;  // gid of x_{p} is p-1
      } else {
        auto& part = D.parts[deg - 1];
        if (part.empty()) part.resize(n);
        part[j].t[g] = c;
      }
    }
  }
  deriv_normalize(D);
  return D;
}

LieElt deriv_image(const LyndonTable& T, const Derivation& D, int j) {
  LieElt img;
  if (!D.gl.empty())
    for (int p = 0; p < D.n; ++p)
      if (!is_zero(D.gl[p][j - 1])) img.t[p] = D.gl[p][j - 1];
  for (const auto& [k, part] : D.parts) lie_add_scaled(img, Rat(1), part[j - 1]);
  return img;
}

bool deriv_equal(const Derivation& A, const Derivation& B) {
  Derivation a = A, b = B;
  deriv_normalize(a);
  deriv_normalize(b);
  if (a.n != b.n) return false;
  if (a.gl.empty() != b.gl.empty()) return false;
  if (!a.gl.empty() && a.gl != b.gl) return false;
  if (a.parts.size() != b.parts.size()) return false;
  for (auto ia = a.parts.begin(), ib = b.parts.begin(); ia != a.parts.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

void deriv_add_scaled(LyndonTable& T, Derivation& dst, const Rat& c, const Derivation& src) {
  if (dst.n != src.n) throw std::invalid_argument("deriv_add_scaled: rank mismatch");
  if (is_zero(c)) return;
  if (!src.gl.empty()) {
    if (dst.gl.empty()) dst.gl = gl_zero(dst.n);
    for (int p = 0; p < dst.n; ++p)
      for (int q = 0; q < dst.n; ++q) dst.gl[p][q] += c * src.gl[p][q];
  }
  for (const auto& [k, part] : src.parts) {
    auto& dpart = dst.parts[k];
    if (dpart.empty()) dpart.resize(dst.n);
    for (int j = 0; j < dst.n; ++j) lie_add_scaled(dpart[j], c, part[j]);
  }
  deriv_normalize(dst);
}

Derivation deriv_scale(LyndonTable& T, const Derivation& D, const Rat& c) {
  Derivation r = deriv_zero(D.n);
  deriv_add_scaled(T, r, c, D);
  return r;
}

LieElt deriv_apply(LyndonTable& T, const Derivation& D, const LieElt& a, int d) {
  std::unordered_map<int, LieElt> memo;
  auto on_basis = [&](auto&& self, int g) -> const LieElt& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    LieElt r;
    if (T.degree_of(g) == 1) {
      r = lie_truncate(T, deriv_image(T, D, g + 1), d == kUnbounded ? kUnbounded : d);
    } else {
      auto [u, v] = T.std_factor(g);
      r = lie_add(lie_bracket(T, self(self, u), lie_basis(v), d),
                  lie_bracket(T, lie_basis(u), self(self, v), d));
    }
    return memo.emplace(g, std::move(r)).first->second;
  };
  LieElt out;
  for (const auto& [g, c] : a.t) lie_add_scaled(out, c, on_basis(on_basis, g));
  return out;
}

AssocElt deriv_apply_assoc(LyndonTable& T, const Derivation& D, const AssocElt& h, int d) {
  std::unordered_map<int, AssocElt> img_memo;  // per generator letter
  auto letter_image = [&](int letter) -> const AssocElt& {
    auto it = img_memo.find(letter);
    if (it != img_memo.end()) return it->second;
    AssocElt e = embed_assoc(T, deriv_image(T, D, letter));
    return img_memo.emplace(letter, std::move(e)).first->second;
  };
  AssocElt out;
  for (const auto& [w, c] : h.t) {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      AssocElt left = assoc_word(Word(w.begin(), w.begin() + pos));
      AssocElt right = assoc_word(Word(w.begin() + pos + 1, w.end()));
      AssocElt term = product(product(left, letter_image(w[pos]), d), right, d);
      assoc_add_scaled(out, c, term);
    }
  }
  return out;
}

Derivation deriv_bracket(LyndonTable& T, const Derivation& A, const Derivation& B, int d) {
  if (A.n != B.n) throw std::invalid_argument("deriv_bracket: rank mismatch");
  std::vector<LieElt> images(A.n);
  for (int j = 1; j <= A.n; ++j) {
    LieElt ab = deriv_apply(T, A, deriv_image(T, B, j), d);
    LieElt ba = deriv_apply(T, B, deriv_image(T, A, j), d);
    images[j - 1] = lie_sub(ab, ba);
  }
  return deriv_from_images(T, A.n, images);
}

Derivation ad_inner(LyndonTable& T, const LieElt& f, int d) {
  std::vector<LieElt> images(T.n());
  for (int j = 1; j <= T.n(); ++j) images[j - 1] = lie_bracket(T, f, lie_gen(T, j), d);
  return deriv_from_images(T, T.n(), images);
}

Derivation AD(LyndonTable& T, const AssocElt& h, int d) {
  if (assoc_has_constant_term(h))
    throw std::invalid_argument("AD: operand has a constant term");
  std::vector<LieElt> images(T.n());
  for (int j = 1; j <= T.n(); ++j) images[j - 1] = op_substitute(T, h, lie_gen(T, j), d);
  return deriv_from_images(T, T.n(), images);
}

Derivation del(LyndonTable& T, int i, const LieElt& f) {
  if (i < 1 || i > T.n()) throw std::invalid_argument("del: generator index out of range");
  std::vector<LieElt> images(T.n());
  images[i - 1] = f;
  return deriv_from_images(T, T.n(), images);
}

Derivation gl_unit(int n, int p, int q) {
  Derivation D = deriv_zero(n);
  D.gl = gl_zero(n);
  D.gl[p - 1][q - 1] = Rat(1);
  return D;
}

Derivation gl_identity(int n) {
  Derivation D = deriv_zero(n);
  D.gl = gl_zero(n);
  for (int i = 0; i < n; ++i) D.gl[i][i] = Rat(1);
  return D;
}

Derivation gl_act(LyndonTable& T, const Derivation& g, const Derivation& D, int d) {
  return deriv_bracket(T, g, D, d);
}

Derivation F_linearize(LyndonTable& T, const Derivation& D, int d) {
  const int n = D.n;
  std::vector<LieElt> images(n);
  GlWordAction act(T);
  for (int i = 1; i <= n; ++i) {
    LieElt sum;
    for (int k = 1; k <= n; ++k)
      lie_add_scaled(sum, Rat(1), act.act_elt(i, k, deriv_image(T, D, k)));
    images[i - 1] = lie_truncate(T, sum, d);
  }
  return deriv_from_images(T, n, images);
}

int deriv_degree(const LyndonTable& T, const Derivation& D) {
  Derivation c = D;
  deriv_normalize(c);
  if (c.zero()) return -2;
  bool has_gl = !c.gl.empty();
  if (has_gl && c.parts.empty()) return 0;
  if (!has_gl && c.parts.size() == 1) return c.parts.begin()->first;
  return -1;
}

std::vector<int> deriv_mdeg(const LyndonTable& T, const Derivation& D) {
  std::vector<int> md;
  bool set = false, mixed = false;
  auto merge = [&](const std::vector<int>& m) {
    if (!set) {
      md = m;
      set = true;
    } else if (md != m) {
      mixed = true;
    }
  };
  if (!D.gl.empty()) {
    for (int p = 0; p < D.n; ++p)
      for (int q = 0; q < D.n; ++q)
        if (!is_zero(D.gl[p][q])) {
          std::vector<int> m(D.n, 0);
          m[p] += 1;
          m[q] -= 1;
          merge(m);
        }
  }
  for (const auto& [k, part] : D.parts) {
    for (int j = 0; j < D.n; ++j) {
      for (const auto& [g, c] : part[j].t) {
        std::vector<int> m = word_mdeg(T.word(g), T.n());
        m[j] -= 1;
        merge(m);
      }
    }
  }
  if (mixed) return {};
  return md;
}

int ul_dim(LyndonTable& T, int k) { return T.n() * T.count(k + 1); }

SparseVec vectorize(LyndonTable& T, const Derivation& D, int k) {
  SparseVec v;
  auto it = D.parts.find(k);
  if (it == D.parts.end()) return v;
  const int w = T.count(k + 1);
  const int base = T.gid_base(k + 1);
  for (int j = 0; j < D.n; ++j)
    for (const auto& [g, c] : it->second[j].t) v.e.emplace_back(j * w + (g - base), c);
  std::sort(v.e.begin(), v.e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Derivation devectorize(LyndonTable& T, const SparseVec& v, int k) {
  const int n = T.n();
  const int w = T.count(k + 1);
  const int base = T.gid_base(k + 1);
  Derivation D = deriv_zero(n);
  if (v.empty()) return D;
  auto& part = D.parts[k];
  part.resize(n);
  for (const auto& [idx, c] : v.e) {
    int j = idx / w, r = idx % w;
    part[j].t[base + r] = c;
  }
  deriv_normalize(D);
  return D;
}

Derivation ul_basis_deriv(LyndonTable& T, int k, int col) {
  return devectorize(T, svec_unit(col), k);
}

std::string deriv_str(const LyndonTable& T, const Derivation& D) {
  Derivation c = D;
  deriv_normalize(c);
  if (c.zero()) return "0";
  std::string s;
  for (int j = 1; j <= c.n; ++j) {
    LieElt img = deriv_image(T, c, j);
    if (img.zero()) continue;
    if (!s.empty()) s += "; ";
    s += "x" + std::to_string(j) + " -> " + lie_str(T, img);
  }
  return s;
}

const LieElt& GlWordAction::act(int p, int q, int gid) {
  auto key = std::make_tuple(p, q, gid);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  LieElt r;
  if (T_.degree_of(gid) == 1) {
    if (gid == q - 1) r = lie_gen(T_, p);
  } else {
    auto [u, v] = T_.std_factor(gid);
    r = lie_add(lie_bracket(T_, act(p, q, u), lie_basis(v), kUnbounded),
                lie_bracket(T_, lie_basis(u), act(p, q, v), kUnbounded));
  }
  return cache_.emplace(key, std::move(r)).first->second;
}

LieElt GlWordAction::act_elt(int p, int q, const LieElt& a) {
  LieElt out;
  for (const auto& [g, c] : a.t) lie_add_scaled(out, c, act(p, q, g));
  return out;
}

}  // namespace dertower
