#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace dertower;

TEST_CASE("product basics") {
  AssocElt x1 = assoc_gen(2, 1), x2 = assoc_gen(2, 2);
  CHECK(product(x1, x2, kUnbounded) == assoc_word(Word{1, 2}));
  AssocElt a = assoc_add(x1, assoc_scale(assoc_word(Word{2, 1}), rat(3)));
  CHECK(product(a, assoc_one(), kUnbounded) == a);
  CHECK(product(assoc_one(), a, kUnbounded) == a);
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    AssocElt a = oracle::rand_assoc(3, rng, 1 + static_cast<int>(rng() % 3));
    AssocElt b = oracle::rand_assoc(3, rng, 1 + static_cast<int>(rng() % 3));
    AssocElt c = oracle::rand_assoc(3, rng, 1 + static_cast<int>(rng() % 3));
    CHECK(product(product(a, b, kUnbounded), c, kUnbounded) ==
          product(a, product(b, c, kUnbounded), kUnbounded));
  }
}

TEST_CASE("truncation in products") {
  AssocElt x1 = assoc_gen(2, 1);
  AssocElt sq = product(x1, x1, 2);
  CHECK_FALSE(sq.zero());
  CHECK(product(sq, x1, 2).zero());
}

TEST_CASE("op_substitute: single letters act as ad") {
  LyndonTable T(3);
  LieElt x2 = lie_gen(T, 2), x3 = lie_gen(T, 3);
  CHECK(op_substitute(T, assoc_gen(3, 1), x2, 5) ==
        lie_bracket(T, lie_gen(T, 1), x2, 5));
  // words compose right to left: x1x2 acts as ad(x1) ad(x2)
  LieElt expect = lie_bracket(T, lie_gen(T, 1), lie_bracket(T, lie_gen(T, 2), x3, 3), 3);
  CHECK(op_substitute(T, assoc_word(Word{1, 2}), x3, 3) == expect);
}

TEST_CASE("op_substitute: a Lie element acts as its own ad") {
  LyndonTable T(3);
  LieElt c12 = lie_bracket(T, lie_gen(T, 1), lie_gen(T, 2), kUnbounded);
  AssocElt h = embed_assoc(T, c12);
  LieElt x3 = lie_gen(T, 3);
  CHECK(op_substitute(T, h, x3, 5) == lie_bracket(T, c12, x3, 5));
}

TEST_CASE("op_substitute: concatenation is operator composition") {
  std::mt19937_64 rng(12);
  LyndonTable T(2);
  for (int t = 0; t < 20; ++t) {
    AssocElt h1 = oracle::rand_assoc(2, rng, 1 + static_cast<int>(rng() % 2));
    AssocElt h2 = oracle::rand_assoc(2, rng, 1 + static_cast<int>(rng() % 2));
    LieElt a = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 2));
    LieElt lhs = op_substitute(T, product(h1, h2, kUnbounded), a, 7);
    LieElt rhs = op_substitute(T, h1, op_substitute(T, h2, a, 7), 7);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("op_substitute rejects constant terms") {
  LyndonTable T(2);
  AssocElt bad = assoc_add(assoc_one(), assoc_gen(2, 1));
  CHECK_THROWS_AS(op_substitute(T, bad, lie_gen(T, 1), 3), std::invalid_argument);
  CHECK_THROWS_AS(AD(T, bad, 3), std::invalid_argument);
}

TEST_CASE("embedding is a Lie homomorphism into the commutator") {
  std::mt19937_64 rng(13);
  LyndonTable T(3);
  for (int t = 0; t < 20; ++t) {
    LieElt a = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 3));
    LieElt b = oracle::rand_lie(T, rng, 1 + static_cast<int>(rng() % 3));
    CHECK(embed_assoc(T, lie_bracket(T, a, b, kUnbounded)) ==
          assoc_commutator(embed_assoc(T, a), embed_assoc(T, b), kUnbounded));
  }
}
