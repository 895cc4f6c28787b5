#pragma once
#include <map>
#include <string>

#include "dertower/lie.hpp"

namespace dertower {

struct GradedLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return word_less(a, b);
  }
};

// Element of the free associative algebra R<V> (empty word = unit), truncated
// at degree d where an operation takes a bound.
struct AssocElt {
  std::map<Word, Rat, GradedLexLess> t;

  bool zero() const { return t.empty(); }
  bool operator==(const AssocElt& o) const { return t == o.t; }
};

AssocElt assoc_zero();
AssocElt assoc_one();
AssocElt assoc_gen(int n, int i);
AssocElt assoc_word(const Word& w);

void assoc_add_scaled(AssocElt& dst, const Rat& c, const AssocElt& src);
AssocElt assoc_add(const AssocElt& a, const AssocElt& b);
AssocElt assoc_sub(const AssocElt& a, const AssocElt& b);
AssocElt assoc_scale(const AssocElt& a, const Rat& c);

bool assoc_has_constant_term(const AssocElt& a);
int assoc_degree(const AssocElt& a);  // -1 if not homogeneous; 0 for scalars

// Concatenation product, dropping words longer than d (d = kUnbounded: none).
AssocElt product(const AssocElt& a, const AssocElt& b, int d);
AssocElt assoc_pow(const AssocElt& a, int k, int d);
AssocElt assoc_commutator(const AssocElt& a, const AssocElt& b, int d);

// Interprets each letter x_i of h as the operator ad(x_i) on L[V,d] and
// applies the composite to arg; h must lie in the augmentation ideal.
LieElt op_substitute(LyndonTable& T, const AssocElt& h, const LieElt& arg, int d);

// The embedding L[V] -> R<V> sending b_w to its commutator expansion.
AssocElt embed_assoc(LyndonTable& T, const LieElt& a);

std::string assoc_str(const AssocElt& a);

}  // namespace dertower
