#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace dertower {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// total bit size of numerator + denominator, used for coefficient budgets
inline std::size_t rat_bits(const Rat& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace dertower
