#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dertower/analysis.hpp"
#include "oracles.hpp"

using namespace dertower;

TEST_CASE("apply: gl identity is the degree derivation") {
  std::mt19937_64 rng(21);
  LyndonTable T(3);
  for (int deg = 1; deg <= 4; ++deg) {
    LieElt a = oracle::rand_lie(T, rng, deg);
    CHECK(deriv_apply(T, gl_identity(3), a, 6) == lie_scale(a, rat(deg)));
  }
  CHECK(deriv_apply(T, deriv_zero(3), oracle::rand_lie(T, rng, 3), 6).zero());
}

TEST_CASE("apply: Leibniz expansion against a hand computation") {
  LyndonTable T(2);
  LieElt c12 = lie_bracket(T, lie_gen(T, 1), lie_gen(T, 2), kUnbounded);
  Derivation D = del(T, 1, c12);  // x1 -> [x1,x2], x2 -> 0
  // D([x1,x2]) = [D x1, x2] + [x1, D x2] = [[x1,x2],x2]
  LieElt expect = lie_bracket(T, c12, lie_gen(T, 2), kUnbounded);
  CHECK(deriv_apply(T, D, c12, kUnbounded) == expect);
}

TEST_CASE("apply satisfies the Leibniz rule on random inputs") {
  std::mt19937_64 rng(22);
  LyndonTable T(3);
  for (int t = 0; t < 30; ++t) {
    Derivation D = oracle::rand_ul_deriv(T, rng, 1 + static_cast<int>(rng() % 2));
    LieElt a = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
    LieElt b = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
    const int d = 7;
    LieElt lhs = deriv_apply(T, D, lie_bracket(T, a, b, d), d);
    LieElt rhs = lie_add(lie_bracket(T, deriv_apply(T, D, a, d), b, d),
                         lie_bracket(T, a, deriv_apply(T, D, b, d), d));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("deriv_bracket basics") {
  std::mt19937_64 rng(23);
  LyndonTable T(2);
  Derivation D = oracle::rand_ul_deriv(T, rng, 2);
  CHECK(deriv_bracket(T, D, D, 6).zero());
  // gl commutator: [e12, e21] = e11 - e22
  Derivation c = deriv_bracket(T, gl_unit(2, 1, 2), gl_unit(2, 2, 1), 6);
  Derivation expect = gl_unit(2, 1, 1);
  deriv_add_scaled(T, expect, Rat(-1), gl_unit(2, 2, 2));
  CHECK(deriv_equal(c, expect));
}

TEST_CASE("bracket of letter ADs is the AD of their bracket") {
  // realized orientation: [AD_f, AD_g] = AD_{[f,g]} for Lie f, g
  LyndonTable T(2);
  Derivation lhs = deriv_bracket(T, AD(T, assoc_gen(2, 1), 6), AD(T, assoc_gen(2, 2), 6), 6);
  AssocElt c12 = assoc_commutator(assoc_gen(2, 1), assoc_gen(2, 2), kUnbounded);
  CHECK(deriv_equal(lhs, AD(T, c12, 6)));
}

TEST_CASE("ad_inner") {
  LyndonTable T(3);
  CHECK(deriv_apply(T, ad_inner(T, lie_gen(T, 1), 5), lie_gen(T, 2), 5) ==
        lie_bracket(T, lie_gen(T, 1), lie_gen(T, 2), 5));
  // central elements give the zero derivation: top degree of L[V,d]
  const int d = 4;
  T.ensure_degree(d);
  LieElt top = lie_basis(T.gid(d, 0));
  CHECK(ad_inner(T, top, d).zero());
  // [delta, ad x] = ad(delta(x))
  std::mt19937_64 rng(24);
  for (int t = 0; t < 20; ++t) {
    Derivation delta = oracle::rand_ul_deriv(T, rng, 1 + static_cast<int>(rng() % 2));
    LieElt x = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
    Derivation lhs = deriv_bracket(T, delta, ad_inner(T, x, 6), 6);
    Derivation rhs = ad_inner(T, deriv_apply(T, delta, x, 6), 6);
    CHECK(deriv_equal(lhs, rhs));
  }
}

TEST_CASE("AD agrees with ad on Lie elements") {
  std::mt19937_64 rng(25);
  LyndonTable T(3);
  for (int t = 0; t < 15; ++t) {
    LieElt f = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 3));
    CHECK(deriv_equal(AD(T, embed_assoc(T, f), 6), ad_inner(T, f, 6)));
  }
}

TEST_CASE("AD kernel witnesses") {
  {
    LyndonTable T(2);
    AssocElt c = assoc_commutator(assoc_gen(2, 1), assoc_gen(2, 2), kUnbounded);
    CHECK(AD(T, product(c, assoc_gen(2, 1), kUnbounded), kUnbounded).zero());
  }
  {
    LyndonTable T(3);
    AssocElt c12 = assoc_commutator(assoc_gen(3, 1), assoc_gen(3, 2), kUnbounded);
    AssocElt c13 = assoc_commutator(assoc_gen(3, 1), assoc_gen(3, 3), kUnbounded);
    AssocElt h = product(product(assoc_commutator(c12, c13, kUnbounded), c12, kUnbounded),
                         assoc_gen(3, 1), kUnbounded);
    CHECK(AD(T, h, kUnbounded).zero());
  }
}

TEST_CASE("AD is injective in low degree") {
  // restricted to degrees <= n the map has no kernel; checked by rank
  for (int n = 2; n <= 4; ++n) {
    LyndonTable T(n);
    for (int m = 1; m <= n; ++m) {
      std::vector<Word> words;
      std::vector<int> stack(m, 1);
      // all n^m words of length m
      std::vector<SparseVec> images;
      std::vector<int> w(m, 1);
      long total = 1;
      for (int i = 0; i < m; ++i) total *= n;
      for (long idx = 0; idx < total; ++idx) {
        long v = idx;
        Word word;
        for (int i = 0; i < m; ++i) {
          word.push_back(static_cast<std::uint8_t>(1 + v % n));
          v /= n;
        }
        images.push_back(vectorize(T, AD(T, assoc_word(word), m + 1), m));
      }
      CHECK(span(images, ul_dim(T, m)).rank() == total);
    }
  }
}

TEST_CASE("del and the distinguished non-AD derivation") {
  LyndonTable T(3);
  CHECK(deriv_equal(del(T, 1, lie_gen(T, 1)), gl_unit(3, 1, 1)));
  // del(1, [x2,x3]) lies outside the degree-1 image of AD
  LieElt c23 = lie_bracket(T, lie_gen(T, 2), lie_gen(T, 3), kUnbounded);
  SparseVec target = vectorize(T, del(T, 1, c23), 1);
  std::vector<SparseVec> ad_images;
  for (int i = 1; i <= 3; ++i) ad_images.push_back(vectorize(T, AD(T, assoc_gen(3, i), 3), 1));
  CHECK_FALSE(contains(span(ad_images, ul_dim(T, 1)), target));
}

TEST_CASE("AD images span every degree of UL on two generators") {
  LyndonTable T(2);
  for (int d = 2; d <= 6; ++d) {
    for (int m = 1; m <= d - 1; ++m) {
      std::vector<SparseVec> images;
      long total = 1;
      for (int i = 0; i < m; ++i) total *= 2;
      for (long idx = 0; idx < total; ++idx) {
        long v = idx;
        Word word;
        for (int i = 0; i < m; ++i) {
          word.push_back(static_cast<std::uint8_t>(1 + v % 2));
          v /= 2;
        }
        images.push_back(vectorize(T, AD(T, assoc_word(word), d), m));
      }
      CHECK(span(images, ul_dim(T, m)).rank() == ul_dim(T, m));
    }
  }
}

TEST_CASE("derivation commutation identities on randomized inputs") {
  std::mt19937_64 rng(26);
  const int d = 6;
  for (int n = 2; n <= 3; ++n) {
    LyndonTable T(n);
    for (int t = 0; t < 25; ++t) {
      // [g, AD_f] = AD_{g(f)}
      Derivation g = gl_unit(n, 1 + static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % n));
      AssocElt f = oracle::rand_assoc(n, rng, 1 + static_cast<int>(rng() % 3));
      CHECK(deriv_equal(deriv_bracket(T, g, AD(T, f, d), d),
                        AD(T, deriv_apply_assoc(T, g, f, kUnbounded), d)));
      // [AD_f, AD_g] = AD_{[f,g]} for Lie operands
      LieElt lf = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
      LieElt lg = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
      CHECK(deriv_equal(
          deriv_bracket(T, AD(T, embed_assoc(T, lf), d), AD(T, embed_assoc(T, lg), d), d),
          AD(T, embed_assoc(T, lie_bracket(T, lf, lg, kUnbounded)), d)));
      // [delta, AD_f] = AD_{delta(f)}
      Derivation delta = oracle::rand_ul_deriv(T, rng, 1 + static_cast<int>(rng() % 2));
      CHECK(deriv_equal(deriv_bracket(T, delta, AD(T, embed_assoc(T, lf), d), d),
                        AD(T, embed_assoc(T, deriv_apply(T, delta, lf, kUnbounded)), d)));
      // [AD_h1, AD_h2] = AD_h with h = -[h1,h2] + AD_h1(h2) - AD_h2(h1)
      AssocElt h1 = oracle::rand_assoc(n, rng, 1 + static_cast<int>(rng() % 2));
      AssocElt h2 = oracle::rand_assoc(n, rng, 1 + static_cast<int>(rng() % 2));
      AssocElt h = deriv_apply_assoc(T, AD(T, h1, d), h2, kUnbounded);
      assoc_add_scaled(h, Rat(-1), assoc_commutator(h1, h2, kUnbounded));
      assoc_add_scaled(h, Rat(-1), deriv_apply_assoc(T, AD(T, h2, d), h1, kUnbounded));
      CHECK(deriv_equal(deriv_bracket(T, AD(T, h1, d), AD(T, h2, d), d), AD(T, h, d)));
    }
  }
}

TEST_CASE("single-generator AD commutation identities") {
  std::mt19937_64 rng(27);
  const int d = 6;
  LyndonTable T(3);
  auto ADD = [&](int i, const AssocElt& h) {
    return del(T, i, op_substitute(T, h, lie_gen(T, i), d));
  };
  for (int t = 0; t < 25; ++t) {
    // [delta, ADD_i(h)] = ADD_i(delta(h)) when delta kills x_i and its images
    // do not involve x_i
    int i = 1 + static_cast<int>(rng() % 3);
    int other = i == 1 ? 2 : 1;
    int third = 6 - i - other;
    LieElt img;  // polynomial in the two other letters
    lie_add_scaled(img, rat(static_cast<long>(rng() % 5) - 2),
                   lie_bracket(T, lie_gen(T, other), lie_gen(T, third), d));
    Derivation delta = del(T, other, img);
    AssocElt h = oracle::rand_assoc(3, rng, 1 + static_cast<int>(rng() % 2));
    CHECK(deriv_equal(deriv_bracket(T, delta, ADD(i, h), d),
                      ADD(i, deriv_apply_assoc(T, delta, h, kUnbounded))));
    // [ADD_i(h), ADD_j(g)] = ADD_j(ADD_i(h)(g)) - ADD_i(ADD_j(g)(h)), i != j
    int j = i == 3 ? 1 : i + 1;
    AssocElt g = oracle::rand_assoc(3, rng, 1 + static_cast<int>(rng() % 2));
    Derivation lhs = deriv_bracket(T, ADD(i, h), ADD(j, g), d);
    Derivation rhs = ADD(j, deriv_apply_assoc(T, ADD(i, h), g, kUnbounded));
    deriv_add_scaled(T, rhs, Rat(-1), ADD(i, deriv_apply_assoc(T, ADD(j, g), h, kUnbounded)));
    CHECK(deriv_equal(lhs, rhs));
  }
  // [del_i(ad^l(x_k)(x_j)), del_j(ad^m(x_k)(x_i))] = ADD_j(x_k^{l+m}) - ADD_i(x_k^{l+m})
  for (int l = 1; l <= 2; ++l)
    for (int m2 = 1; m2 <= 2; ++m2) {
      int i = 1, j = 2, k = 3;
      Derivation A = del(T, i, lie_ad_pow(T, lie_gen(T, k), l, lie_gen(T, j), d));
      Derivation B = del(T, j, lie_ad_pow(T, lie_gen(T, k), m2, lie_gen(T, i), d));
      Derivation lhs = deriv_bracket(T, A, B, d);
      AssocElt pw = assoc_pow(assoc_gen(3, k), l + m2, kUnbounded);
      Derivation rhs = ADD(j, pw);
      deriv_add_scaled(T, rhs, Rat(-1), ADD(i, pw));
      CHECK(deriv_equal(lhs, rhs));
    }
}

TEST_CASE("inner derivations form an ideal") {
  std::mt19937_64 rng(28);
  LyndonTable T(2);
  const int d = 5;
  // span of inner derivations per degree
  std::map<int, Subspace> inner;
  for (int k = 1; k <= d - 1; ++k) {
    std::vector<SparseVec> rows;
    for (int r = 0; r < T.count(k); ++r)
      rows.push_back(vectorize(T, ad_inner(T, lie_basis(T.gid(k, r)), d), k));
    inner[k] = span(rows, ul_dim(T, k));
  }
  for (int t = 0; t < 20; ++t) {
    int kd = 1 + static_cast<int>(rng() % 2);
    int kf = 1 + static_cast<int>(rng() % 2);
    if (kd + kf > d - 1) continue;
    Derivation delta = oracle::rand_ul_deriv(T, rng, kd);
    LieElt f = oracle::rand_lie(T, rng, kf);
    Derivation br = deriv_bracket(T, delta, ad_inner(T, f, d), d);
    SparseVec v = vectorize(T, br, kd + kf);
    CHECK(contains(inner[kd + kf], v));
  }
}

TEST_CASE("center of UL(n,d) is the top homogeneous component") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}}) {
    LyndonTable T(n);
    // centralizer of all of UL inside UL, degree by degree
    for (int a = 1; a <= d - 1; ++a) {
      std::map<std::pair<int, int>, SparseVec> rows;
      int test_idx = 0;
      for (int b = 1; a + b <= d - 1; ++b) {
        for (int c = 0; c < ul_dim(T, b); ++c) {
          Derivation U = ul_basis_deriv(T, b, c);
          for (int col = 0; col < ul_dim(T, a); ++col) {
            Derivation C = ul_basis_deriv(T, a, col);
            SparseVec img = vectorize(T, deriv_bracket(T, C, U, d), a + b);
            for (const auto& [idx, x] : img.e) rows[{test_idx, idx}].push(col, x);
          }
          ++test_idx;
        }
      }
      std::vector<SparseVec> mat;
      for (auto& [k, r] : rows) mat.push_back(std::move(r));
      Subspace cen = kernel(mat, ul_dim(T, a));
      if (a == d - 1)
        CHECK(cen.rank() == ul_dim(T, a));
      else
        CHECK(cen.rank() == 0);
    }
  }
}

TEST_CASE("gl action") {
  std::mt19937_64 rng(29);
  LyndonTable T(2);
  Derivation D = oracle::rand_ul_deriv(T, rng, 2);
  CHECK(gl_act(T, deriv_zero(2), D, 5).zero());
  CHECK(deriv_equal(gl_act(T, gl_unit(2, 1, 2), AD(T, assoc_gen(2, 2), 5), 5),
                    AD(T, assoc_gen(2, 1), 5)));
  for (int deg = 1; deg <= 3; ++deg) {
    Derivation H = oracle::rand_ul_deriv(T, rng, deg);
    CHECK(deriv_equal(gl_act(T, gl_identity(2), H, 5), deriv_scale(T, H, rat(deg))));
  }
}

TEST_CASE("linearization") {
  std::mt19937_64 rng(30);
  LyndonTable T(3);
  const int d = 6;
  CHECK(F_linearize(T, deriv_zero(3), d).zero());
  for (int t = 0; t < 15; ++t) {
    Derivation D = oracle::rand_ul_deriv(T, rng, 1 + static_cast<int>(rng() % 3));
    int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    Derivation lhs = gl_act(T, gl_unit(3, p, q), F_linearize(T, D, d), d);
    Derivation rhs = F_linearize(T, gl_act(T, gl_unit(3, p, q), D, d), d);
    CHECK(deriv_equal(lhs, rhs));
  }
  // direct summation oracle: F(D)(x_i) = sum_k (x_k -> x_i)(D(x_k))
  for (int t = 0; t < 10; ++t) {
    Derivation D = oracle::rand_ul_deriv(T, rng, 2);
    Derivation F = F_linearize(T, D, d);
    for (int i = 1; i <= 3; ++i) {
      LieElt expect;
      for (int k = 1; k <= 3; ++k) {
        GlWordAction act(T);
        lie_add_scaled(expect, Rat(1), act.act_elt(i, k, deriv_image(T, D, k)));
      }
      CHECK(deriv_image(T, F, i) == expect);
    }
  }
  // images of a derivation deaf to x2 stay zero under the diagonal term
  LieElt f = lie_bracket(T, lie_gen(T, 1), lie_gen(T, 3), kUnbounded);
  Derivation D2 = del(T, 2, f);
  Derivation F2 = F_linearize(T, D2, d);
  GlWordAction act(T);
  CHECK(deriv_image(T, F2, 2) == act.act_elt(2, 2, f));
  CHECK(act.act_elt(2, 2, f).zero());
}

TEST_CASE("vectorization round trip and ordering") {
  std::mt19937_64 rng(31);
  LyndonTable T(3);
  for (int t = 0; t < 20; ++t) {
    int k = 1 + static_cast<int>(rng() % 3);
    Derivation D = oracle::rand_ul_deriv(T, rng, k);
    CHECK(deriv_equal(devectorize(T, vectorize(T, D, k), k), D));
  }
  // basis order: generator-major, Lyndon rank minor
  int k = 2;
  int words = T.count(k + 1);
  for (int col : {0, words, words + 1}) {
    Derivation D = ul_basis_deriv(T, k, col);
    int gen = col / words, rank = col % words;
    LieElt img = deriv_image(T, D, gen + 1);
    CHECK(img.t.size() == 1);
    CHECK(T.rank_of(img.t.begin()->first) == rank);
  }
}
