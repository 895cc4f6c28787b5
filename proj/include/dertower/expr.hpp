#pragma once
#include <string>

#include "dertower/deriv.hpp"

namespace dertower {

// Small expression grammars for the CLI.
//
//   lie:    sum of terms;  term = [rat '*']? factor
//           factor = x<i> | '[' lie ',' lie ']' | '(' lie ')'
//   assoc:  sum of terms;  term = [rat '*']? factor ('*' factor)* with '^' powers
//           factor = x<i> | '[' assoc ',' assoc ']' | '(' assoc ')' | '1'
//   deriv:  sum of terms;  term = [rat '*']? dfactor
//           dfactor = AD(assoc) | ad(lie) | del(i, lie) | E(p,q) | '(' deriv ')'
//
// Rationals are integer or numerator/denominator literals.

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

LieElt parse_lie(LyndonTable& T, const std::string& text, int d);
AssocElt parse_assoc(int n, const std::string& text, int d);
Derivation parse_deriv(LyndonTable& T, const std::string& text, int d);

}  // namespace dertower
