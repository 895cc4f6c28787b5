#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace dertower;

TEST_CASE("lyndon word generation") {
  CHECK(lyndon_words(2, 1) == std::vector<Word>{{1}, {2}});
  CHECK(lyndon_words(2, 2) == std::vector<Word>{{1, 2}});
  CHECK(lyndon_words(2, 5).size() == 6);
  // against the rotation-minimality oracle, values and order
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= 7; ++m) {
      auto duval = lyndon_words(n, m);
      auto brute = oracle::list_lyndon_by_rotation(n, m);
      CHECK(duval == brute);
    }
}

TEST_CASE("witt dimensions") {
  CHECK(witt_dim(2, 1) == 2);
  CHECK(witt_dim(3, 1) == 3);
  CHECK(witt_dim(2, 3) == 2);
  CHECK(witt_dim(3, 4) == 18);
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 8; ++m)
      CHECK(witt_dim(n, m) == oracle::count_lyndon_by_rotation(n, m));
}

TEST_CASE("basis count equals the Witt dimension") {
  for (int n = 2; n <= 4; ++n) {
    LyndonTable T(n);
    for (int m = 1; m <= (n == 2 ? 12 : 9); ++m) CHECK(Int(T.count(m)) == witt_dim(n, m));
  }
}

TEST_CASE("standard factorization properties") {
  LyndonTable T(3);
  for (int m = 2; m <= 7; ++m) {
    T.ensure_degree(m);
    for (int r = 0; r < T.count(m); ++r) {
      int g = T.gid(m, r);
      auto [u, v] = T.std_factor(g);
      const Word &wu = T.word(u), &wv = T.word(v), &w = T.word(g);
      CHECK(is_lyndon(wu));
      CHECK(is_lyndon(wv));
      CHECK(word_less(wu, wv));
      Word cat = wu;
      cat.insert(cat.end(), wv.begin(), wv.end());
      CHECK(cat == w);
      // right factor is the lexicographically smallest proper suffix
      int pos = static_cast<int>(wu.size());
      for (int p = 1; p < m; ++p) {
        Word suf(w.begin() + p, w.end());
        CHECK_FALSE(word_less(suf, wv));
      }
      CHECK(Word(w.begin() + pos, w.end()) == wv);
    }
  }
}

TEST_CASE("bracket basics") {
  LyndonTable T(2);
  LieElt x1 = lie_gen(T, 1), x2 = lie_gen(T, 2);
  CHECK(lie_bracket(T, x1, x1, kUnbounded).zero());
  LieElt b = lie_bracket(T, x1, x2, kUnbounded);
  CHECK(b.t.size() == 1);
  CHECK(b.t.begin()->second == Rat(1));
  CHECK(T.word(b.t.begin()->first) == Word{1, 2});
  // antisymmetry
  CHECK(lie_add(b, lie_bracket(T, x2, x1, kUnbounded)).zero());
}

TEST_CASE("bracket matches the associative commutator") {
  std::mt19937_64 rng(101);
  for (int n = 2; n <= 4; ++n) {
    LyndonTable T(n);
    T.ensure_degree(8);
    LieElt x1 = lie_gen(T, 1), x2 = lie_gen(T, 2);
    LieElt lhs = lie_bracket(T, lie_bracket(T, x1, x2, kUnbounded), x1, kUnbounded);
    AssocElt e1 = embed_assoc(T, x1), e2 = embed_assoc(T, x2);
    AssocElt rhs = assoc_commutator(assoc_commutator(e1, e2, kUnbounded), e1, kUnbounded);
    CHECK(embed_assoc(T, lhs) == rhs);
    for (int t = 0; t < 25; ++t) {
      LieElt a = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 3));
      LieElt b = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 3));
      CHECK(embed_assoc(T, lie_bracket(T, a, b, kUnbounded)) ==
            assoc_commutator(embed_assoc(T, a), embed_assoc(T, b), kUnbounded));
    }
  }
}

TEST_CASE("jacobi identity") {
  std::mt19937_64 rng(303);
  for (int n = 2; n <= 3; ++n) {
    LyndonTable T(n);
    for (int t = 0; t < 30; ++t) {
      LieElt a = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
      LieElt b = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
      LieElt c = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
      LieElt s = lie_bracket(T, a, lie_bracket(T, b, c, 6), 6);
      lie_add_scaled(s, Rat(1), lie_bracket(T, b, lie_bracket(T, c, a, 6), 6));
      lie_add_scaled(s, Rat(1), lie_bracket(T, c, lie_bracket(T, a, b, 6), 6));
      CHECK(s.zero());
    }
  }
}

TEST_CASE("grading and multidegree additivity") {
  std::mt19937_64 rng(404);
  LyndonTable T(3);
  for (int t = 0; t < 25; ++t) {
    int da = 1 + static_cast<int>(rng() % 3), db = 1 + static_cast<int>(rng() % 3);
    LieElt a = oracle::rand_lie(T, rng, da), b = oracle::rand_lie(T, rng, db);
    LieElt br = lie_bracket(T, a, b, kUnbounded);
    if (!br.zero()) CHECK(lie_degree(T, br) == da + db);
    // poly-homogeneous inputs: single basis words
    int ga = T.gid(da, static_cast<int>(rng() % T.count(da)));
    int gb = T.gid(db, static_cast<int>(rng() % T.count(db)));
    LieElt pb = lie_bracket(T, lie_basis(ga), lie_basis(gb), kUnbounded);
    if (!pb.zero()) {
      auto ma = word_mdeg(T.word(ga), 3), mb = word_mdeg(T.word(gb), 3);
      for (int i = 0; i < 3; ++i) ma[i] += mb[i];
      CHECK(lie_mdeg(T, pb) == ma);
    }
  }
}

TEST_CASE("truncation drops high terms silently") {
  LyndonTable T(2);
  LieElt x1 = lie_gen(T, 1), x2 = lie_gen(T, 2);
  LieElt b = lie_bracket(T, x1, x2, kUnbounded);
  CHECK(lie_bracket(T, b, x2, 2).zero());
  CHECK_FALSE(lie_bracket(T, b, x2, 3).zero());
}

TEST_CASE("embedding and extraction through Lyndon triangularity") {
  LyndonTable T(2);
  CHECK(embed_assoc(T, lie_gen(T, 1)) == assoc_gen(2, 1));
  LieElt b = lie_bracket(T, lie_gen(T, 1), lie_gen(T, 2), kUnbounded);
  AssocElt eb = embed_assoc(T, b);
  AssocElt expect = assoc_sub(assoc_word(Word{1, 2}), assoc_word(Word{2, 1}));
  CHECK(eb == expect);

  // extraction: repeatedly strip the lex-least word, which must be Lyndon
  std::mt19937_64 rng(777);
  for (int t = 0; t < 15; ++t) {
    LieElt a = oracle::rand_lie(T, rng, 4, 3);
    AssocElt A = embed_assoc(T, a);
    LieElt rec;
    int guard = 0;
    while (!A.zero() && guard++ < 100) {
      // lex-least word among the terms
      Word least = A.t.begin()->first;
      for (const auto& [w, c] : A.t)
        if (word_less(w, least)) least = w;
      REQUIRE(is_lyndon(least));
      Rat c = A.t.at(least);
      int g = T.find(least);
      REQUIRE(g >= 0);
      lie_add_scaled(rec, c, lie_basis(g));
      assoc_add_scaled(A, -c, embed_assoc(T, lie_basis(g)));
    }
    CHECK(rec == a);
  }
}
