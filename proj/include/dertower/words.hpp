#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "dertower/rational.hpp"

namespace dertower {

// A word on the letters x_1..x_n, stored as 1-based letter indices.
using Word = std::vector<std::uint8_t>;

bool word_less(const Word& a, const Word& b);  // plain lexicographic, prefix first

bool is_lyndon(const Word& w);

// All Lyndon words of length m over n letters, lexicographically ordered
// (Duval's generation).
std::vector<Word> lyndon_words(int n, int m);

// Witt necklace count (1/m) sum_{j|m} mu(j) n^{m/j}.
Int witt_dim(int n, int m);

std::vector<int> word_mdeg(const Word& w, int n);

std::string word_str(const Word& w);
Word word_parse(const std::string& s);  // "x1x2x1" or "121"

// Index of the lexicographically smallest proper suffix (the right factor of
// the standard factorization). Requires len >= 2.
int std_factor_pos(const Word& w);

}  // namespace dertower
