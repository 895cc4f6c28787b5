#pragma once
#include <atomic>
#include <map>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "dertower/words.hpp"

namespace dertower {

// Lyndon words over a fixed alphabet size n, generated degree by degree, with
// the standard (right) factorization and memoized bracket rewriting.
//
// Basis elements are indexed by a global id ("gid"), contiguous and ordered by
// (degree, lex). The bracketed word b_w is defined recursively through the
// standard factorization w = uv as b_w = [b_u, b_v]; pair_bracket expands the
// bracket of two arbitrary basis elements in this basis.
//
// Thread safety: growth and memo insertion are internally synchronized;
// lookups of already generated degrees are lock-free reads of stable storage.
class LyndonTable {
 public:
  using Expansion = std::vector<std::pair<int, Rat>>;  // (gid, coeff), sorted

  static constexpr int kMaxDegree = 48;

  explicit LyndonTable(int n);

  int n() const { return n_; }
  int max_generated() const { return generated_; }

  void ensure_degree(int m);
  int count(int m);                   // |Lyndon words of degree m|
  int gid_base(int m);                // gid of the first degree-m word
  int gid(int m, int rank) { return gid_base(m) + rank; }
  int degree_of(int g) const;
  int rank_of(int g) const;
  const Word& word(int g) const;
  int find(const Word& w);            // -1 when w is not a Lyndon word
  std::pair<int, int> std_factor(int g) const;  // gids (u, v); degree >= 2 only

  // Expansion of [b_u, b_v]; empty when u == v.
  const Expansion& pair_bracket(int u, int v);

 private:
  Expansion compute_pair(int u, int v);
  void accumulate(std::map<int, Rat>& acc, const Rat& c, int a, int b);

  int n_;
  std::atomic<int> generated_{0};
  std::vector<std::vector<Word>> by_deg_;                    // [degree] -> words (lex)
  std::vector<std::vector<std::pair<int, int>>> factors_;    // [degree] -> std factor gids
  std::vector<int> base_;                                    // [degree] -> first gid
  std::map<std::pair<int, int>, Expansion> memo_;            // u <lex v
  static const Expansion kEmpty;
  mutable std::shared_mutex mtx_;
};

}  // namespace dertower
